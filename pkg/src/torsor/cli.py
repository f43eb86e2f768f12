"""Command-line entry point: ``torsor {aut,analyze,enum-relators,iso}``.

JSON output is the stable contract; ``--format text`` is for people.
Exit codes: 0 ok, 2 malformed input, 3 cap exceeded, 4 hypothesis violation,
5 theorem violation (an internal bug surfaced by cross-validation).
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .groups import DEFAULT_ELEMENT_CAP, CapExceeded, GroupFileError, center, load_group
from .morphisms import OutGroup, compute_aut, identify, iso_test, load_automorphism
from .relators import (DEFAULT_MAX_STATES, PresentationError, TrivialWords, acts_trivially,
                       check_aut_generators, enumerate_aut_relators, parse_aut_generators,
                       parse_presentation)
from .theorem import SCHEMA_VERSION, HypothesisViolation, TheoremViolation, analyze
from .torus import DEFAULT_ENUM_CAP

EXIT_OK, EXIT_MALFORMED, EXIT_CAP, EXIT_HYPOTHESIS, EXIT_THEOREM = 0, 2, 3, 4, 5


@dataclass
class RunConfig:
    command: str
    inputs: list[Path]
    cap_elements: int = DEFAULT_ELEMENT_CAP
    cap_enum: int = DEFAULT_ENUM_CAP
    budget_len: int = 6
    budget_states: int = DEFAULT_MAX_STATES
    out: Optional[Path] = None
    format: str = "json"
    cross_validate: bool = False
    model: Optional[Path] = None
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        for name in ("cap_elements", "cap_enum", "budget_states"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.budget_len < 0:
            raise ValueError("budget_len must be nonnegative")
        self.inputs = [Path(p).resolve() for p in self.inputs]
        if self.out is not None:
            self.out = Path(self.out).resolve()
        if self.model is not None:
            self.model = Path(self.model).resolve()


def _dumps(data: dict) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.out is None:
        sys.stdout.write(text)
    else:
        cfg.out.write_text(text)


def _read_json(path: Path) -> dict:
    try:
        with open(path) as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise GroupFileError(f"{path}: invalid JSON: {e}") from None
    if not isinstance(data, dict):
        raise GroupFileError(f"{path}: expected a JSON object")
    return data


def _group_text(label: str, g: Optional[dict]) -> str:
    if g is None:
        return f"{label}: -"
    return f"{label}: order {g['order']} ({g['id']})"


def cmd_aut(cfg: RunConfig) -> int:
    G = load_group(cfg.inputs[0], cap=cfg.cap_elements)
    out = OutGroup(G, compute_aut(G, cap=cfg.cap_elements))
    report = {
        "schema": SCHEMA_VERSION,
        "command": "aut",
        "group": {"name": G.name, "order": G.order},
        "center_order": len(center(G)),
        "aut_order": out.aut_order,
        "inn_order": len(out.inner),
        "out_order": out.group.order,
        "out_id": identify(out.group),
        "seed": os.environ.get("TORSOR_SEED"),
    }
    if cfg.format == "text":
        _emit(cfg, f"{G.name}: |G|={G.order} |Z|={report['center_order']} |Aut|={report['aut_order']} "
                   f"|Inn|={report['inn_order']} |Out|={report['out_order']} ({report['out_id']})\n")
    else:
        _emit(cfg, _dumps(report))
    return EXIT_OK


def _analysis_text(r: dict) -> str:
    lines = [f"{r['group']['name']} (order {r['group']['order']}), phi outer class "
             f"{r['phi']['outer_class']} of order {r['phi']['outer_order']}",
             f"hypotheses ok: {r['hypotheses']['ok']}"]
    if r["formula"]:
        lines.append(_group_text("C_Out(phi)/<phi>", r["formula"]["group"]))
        lines.append(f"index of Out^0 in Out: {r['index']}")
    if r["direct"]:
        lines.append(_group_text("direct Out^0", r["direct"]["out0"]))
        lines.append(_group_text("direct Out", r["direct"]["out"]))
        lines.append(f"eta checks: {r['eta_checks']}")
        lines.append(f"isomorphism witness: {r['iso_witness']}")
    return "\n".join(lines) + "\n"


def cmd_analyze(cfg: RunConfig) -> int:
    spec_path = cfg.inputs[0]
    spec = _read_json(spec_path)
    if not isinstance(spec.get("group"), str) or not isinstance(spec.get("phi"), str):
        raise GroupFileError(f"{spec_path}: torus spec needs 'group' and 'phi' paths")
    G = load_group(spec_path.parent / spec["group"], cap=cfg.cap_elements)
    phi = load_automorphism(spec_path.parent / spec["phi"], G)
    code = EXIT_OK
    try:
        report = analyze(G, phi, cross=cfg.cross_validate,
                         aut_cap=cfg.cap_elements, enum_cap=cfg.cap_enum)
    except HypothesisViolation as e:
        report, code = e.report, EXIT_HYPOTHESIS
    except TheoremViolation as e:
        print(f"theorem violation: {e}", file=sys.stderr)
        report, code = e.report, EXIT_THEOREM
    data = report.to_json()
    _emit(cfg, _analysis_text(data) if cfg.format == "text" else _dumps(data))
    return code


def cmd_iso(cfg: RunConfig) -> int:
    A = load_group(cfg.inputs[0], cap=cfg.cap_elements)
    B = load_group(cfg.inputs[1], cap=cfg.cap_elements)
    w = iso_test(A, B, cap=cfg.cap_elements)
    report = {"schema": SCHEMA_VERSION, "command": "iso",
              "a": {"name": A.name, "order": A.order}, "b": {"name": B.name, "order": B.order},
              "isomorphic": w is not None, "witness": w,
              "seed": os.environ.get("TORSOR_SEED")}
    if cfg.format == "text":
        _emit(cfg, f"{A.name} {'~=' if w is not None else '!~='} {B.name}\n")
    else:
        _emit(cfg, _dumps(report))
    return EXIT_OK


def cmd_enum_relators(cfg: RunConfig) -> int:
    P = parse_presentation(cfg.inputs[0].read_text())
    A = parse_aut_generators(cfg.inputs[1].read_text(), P)
    model = load_group(cfg.model, cap=cfg.cap_elements) if cfg.model else None
    lines = []
    if cfg.budget_len > 0:
        trivial = TrivialWords(P, cfg.budget_len, cfg.budget_states)
        check_aut_generators(P, A, trivial)
        for e in enumerate_aut_relators(P, A, cfg.budget_len, cfg.budget_states, trivial=trivial):
            if model is not None and not acts_trivially(model, A, e.word):
                print(f"unsound emission {list(e.word)}", file=sys.stderr)
                return EXIT_THEOREM
            if cfg.format == "text":
                lines.append(" ".join(str(x) for x in e.word) + "\n")
            else:
                lines.append(json.dumps(e.to_json(), separators=(",", ":")) + "\n")
    _emit(cfg, "".join(lines))
    return EXIT_OK


COMMANDS = {"aut": (cmd_aut, ["group"]),
            "analyze": (cmd_analyze, ["torus"]),
            "enum-relators": (cmd_enum_relators, ["presentation", "automorphisms"]),
            "iso": (cmd_iso, ["group_a", "group_b"])}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap-elements", type=int, default=DEFAULT_ELEMENT_CAP)
    common.add_argument("--cap-enum", type=int, default=DEFAULT_ENUM_CAP)
    common.add_argument("--budget-len", type=int, default=6)
    common.add_argument("--budget-states", type=int, default=DEFAULT_MAX_STATES)
    common.add_argument("--out", type=Path)
    common.add_argument("--format", choices=["json", "text"], default="json")
    common.add_argument("--cross-validate", action="store_true")

    parser = argparse.ArgumentParser(prog="torsor", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, args) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common])
        for a in args:
            p.add_argument(a, type=Path)
        if name == "enum-relators":
            p.add_argument("--model", type=Path,
                           help="permutation model of G; every emission is checked in it")
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    func, argnames = COMMANDS[ns.command]
    try:
        cfg = RunConfig(command=ns.command, inputs=[getattr(ns, a) for a in argnames],
                        cap_elements=ns.cap_elements, cap_enum=ns.cap_enum,
                        budget_len=ns.budget_len, budget_states=ns.budget_states,
                        out=ns.out, format=ns.format, cross_validate=ns.cross_validate,
                        model=getattr(ns, "model", None))
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_MALFORMED
    try:
        return func(cfg)
    except (GroupFileError, PresentationError, FileNotFoundError, IsADirectoryError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_MALFORMED
    except CapExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
