"""Outer automorphism groups of mapping tori of finite groups."""

__version__ = "0.1.0"
