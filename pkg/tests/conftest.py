import json
import os

import hypothesis
import pytest

from torsor import catalog
from torsor.groups import load_group
from torsor.morphisms import load_automorphism

hypothesis.settings.register_profile("fast", max_examples=20)
hypothesis.settings.register_profile("thorough", max_examples=500)
if os.environ.get("HYPOTHESIS_PROFILE"):
    hypothesis.settings.load_profile(os.environ["HYPOTHESIS_PROFILE"])

TRIVIAL_CENTER_TORI = ["S3_id", "S3_aut1", "S3_aut2", "S3_aut3", "S3_aut4", "S3_aut5",
                       "D5_id", "D5_outer", "D7_id", "D7_outer3", "A4_id", "A4_outer", "A5_id"]


def group(name):
    return load_group(catalog.path("groups", name))


def aut(gname, aname, G=None):
    G = G if G is not None else group(gname)
    return load_automorphism(catalog.path("auts", f"{gname}_{aname}"), G)


def torus(name):
    p = catalog.path("tori", name)
    spec = json.loads(p.read_text())
    G = load_group(p.parent / spec["group"])
    return G, load_automorphism(p.parent / spec["phi"], G)


@pytest.fixture(scope="session")
def S3():
    return group("S3")


@pytest.fixture(scope="session")
def D7():
    return group("D7")


# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
