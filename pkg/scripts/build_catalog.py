"""Regenerate the bundled catalog under src/torsor/catalog/.

Groups are written as permutation generators; named automorphisms as words
in those generators; tori as pairs of relative paths.  Every automorphism is
re-parsed and checked before it is written.
"""
import json
from pathlib import Path

from torsor.groups import FiniteGroup, Permutation, parse_group
from torsor.morphisms import compute_aut, identity_aut, parse_automorphism

ROOT = Path(__file__).resolve().parents[1] / "src" / "torsor" / "catalog"


def quaternion_regular():
    # elements (sign, unit) with unit in 1,i,j,k; index = 2*unit + (sign<0)
    table = {("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
             ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
             ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
             ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1")}
    units = ["1", "i", "j", "k"]
    elems = [(s, u) for u in units for s in (1, -1)]

    def right_mult(g):
        perm = []
        for s, u in elems:
            sg, ug = g
            s2, u2 = table[(u, ug)]
            perm.append(elems.index((s * sg * s2, u2)))
        return perm

    return [right_mult((1, "i")), right_mult((1, "j"))]


GROUPS = {
    "C2": (2, [[1, 0]]),
    "C3": (3, [[1, 2, 0]]),
    "C4": (4, [[1, 2, 3, 0]]),
    "C2xC2": (4, [[1, 0, 3, 2], [2, 3, 0, 1]]),
    "C6": (6, [[1, 2, 3, 4, 5, 0]]),
    "C2xC2xC2": (8, [[1, 0, 3, 2, 5, 4, 7, 6], [2, 3, 0, 1, 6, 7, 4, 5], [4, 5, 6, 7, 0, 1, 2, 3]]),
    "Q8": (8, quaternion_regular()),
    "S3": (3, [[1, 2, 0], [1, 0, 2]]),
    "D4": (4, [[1, 2, 3, 0], [2, 1, 0, 3]]),
    "D5": (5, [[1, 2, 3, 4, 0], [0, 4, 3, 2, 1]]),
    "D7": (7, [[1, 2, 3, 4, 5, 6, 0], [0, 6, 5, 4, 3, 2, 1]]),
    "A4": (4, [[1, 2, 0, 3], [1, 0, 3, 2]]),
    "A5": (5, [[1, 2, 3, 4, 0], [1, 2, 0, 3, 4]]),
    "S4": (4, [[1, 2, 3, 0], [1, 0, 2, 3]]),
}

# named automorphisms as generator-image words; "id" is added for every group
NAMED = {
    "D5": {"outer": [[1, 1], [2]]},  # r -> r^2, s -> s
    "D7": {"outer3": [[1, 1], [2]]},  # r -> r^2, s -> s; 2 has order 3 mod 7
    "A4": {"outer": [[1, 1], [2]]},  # conjugation by (0 1) in S4
}

TORI = {
    "S3": None,  # filled with all six automorphisms below
    "D4": ["id"],
    "D5": ["id", "outer"],
    "D7": ["id", "outer3"],
    "A4": ["id", "outer"],
    "A5": ["id"],
    "S4": ["id"],
}


def dump(path: Path, data) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(data, indent=None, separators=(", ", ": ")) + "\n")


def main() -> None:
    for name, (degree, gens) in GROUPS.items():
        data = {"name": name, "degree": degree, "generators": gens}
        G = parse_group(json.dumps(data))
        dump(ROOT / "groups" / f"{name}.json", data)
        named = {"id": identity_aut(G).to_words()}
        if name == "S3":
            for i, a in enumerate(compute_aut(G)[1:], start=1):
                named[f"aut{i}"] = a.to_words()
        named.update(NAMED.get(name, {}))
        for aname, words in named.items():
            parse_automorphism(json.dumps({"images": words}), G)
            dump(ROOT / "auts" / f"{name}_{aname}.json", {"images": words})
        if name in TORI:
            for aname in TORI[name] or sorted(named):
                dump(ROOT / "tori" / f"{name}_{aname}.json",
                     {"group": f"../groups/{name}.json", "phi": f"../auts/{name}_{aname}.json"})
        print(f"{name}: order {G.order}, automorphisms written: {sorted(named)}")

    # S3 = <x, y | x^3, y^2, (xy)^2> with psi_1 = inner by x, psi_2 = inner by y
    pres = ROOT / "presentations"
    dump(pres / "S3.json", {"generators": ["x", "y"], "relators": [[1, 1, 1], [2, 2], [1, 2, 1, 2]]})
    dump(pres / "S3_inner.json", {
        "u": [[[1], [-1, 2, 1]], [[-2, 1, 2], [2]]],
        "v": [[[1], [1, 2, -1]], [[2, 1, -2], [2]]],
    })
    dump(pres / "S3_identity.json", {"u": [[[1], [2]]], "v": [[[1], [2]]]})
    # permutation model matching x, y
    dump(pres / "S3_model.json", {"name": "S3", "degree": 3, "generators": [[1, 2, 0], [1, 0, 2]]})


if __name__ == "__main__":
    main()
