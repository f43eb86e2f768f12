"""Bundled test groups, named automorphisms, tori and presentations."""
from pathlib import Path

CATALOG_DIR = Path(__file__).resolve().parent


def path(kind: str, name: str) -> Path:
    """``path("groups", "S3")`` -> the bundled ``groups/S3.json``."""
    p = CATALOG_DIR / kind / f"{name}.json"
    if not p.exists():
        raise FileNotFoundError(p)
    return p


def names(kind: str) -> list[str]:
    return sorted(p.stem for p in (CATALOG_DIR / kind).glob("*.json"))
