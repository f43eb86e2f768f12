"""Out^0 of a mapping torus two ways, and the map between them.

Formula side: ``C_Out(H)(phi^) / <phi^>``, plus the index of ``Out^0`` in
``Out`` from whether ``phi^`` is conjugate to its inverse.  Oracle side:
:class:`torsor.torus.DirectOut`.  :func:`cross_validate` runs both, checks the
map ``delta^ -> class of alpha_delta`` elementwise and demands an explicit
isomorphism witness.
"""
from __future__ import annotations

import os
from dataclasses import asdict, dataclass, field
from typing import Optional

from .groups import AbstractGroup, FiniteGroup, center
from .morphisms import (DEFAULT_AUT_CAP, Automorphism, OutGroup, compute_aut, cyclic_closure,
                        identify, inner, is_automorphism, iso_test, out_centralizer,
                        out_conjugacy_test, quotient_map)
from .torus import (DEFAULT_ENUM_CAP, DirectOut, MappingTorus, NotCentralizing, build_alpha,
                    zeta_twist)

SCHEMA_VERSION = 1
NO_EPI_REASON = "H is finite, so every homomorphism H -> Z has finite image and is trivial"


class HypothesisViolation(ValueError):
    def __init__(self, flags: "HypothesisReport", report: Optional["TheoremReport"] = None):
        super().__init__(f"hypotheses fail: {flags}")
        self.flags = flags
        self.report = report


class TheoremViolation(AssertionError):
    """The formula and the direct enumeration disagree: an internal bug."""

    def __init__(self, message: str, report: Optional["TheoremReport"] = None):
        super().__init__(message)
        self.report = report


@dataclass(frozen=True)
class HypothesisReport:
    trivial_center: bool
    phi_valid: bool
    no_epi_onto_Z: bool = True
    no_epi_justification: str = NO_EPI_REASON
    center_order: int = 1

    @property
    def ok(self) -> bool:
        return self.trivial_center and self.phi_valid and self.no_epi_onto_Z


@dataclass
class EtaChecks:
    well_defined: bool
    homomorphism: bool
    surjective: bool
    kernel_equals_cyclic_phi: bool
    counterexample: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.well_defined and self.homomorphism and self.surjective and self.kernel_equals_cyclic_phi


def check_hypotheses(H: AbstractGroup, phi: Automorphism) -> HypothesisReport:
    z = center(H)
    return HypothesisReport(trivial_center=len(z) == 1,
                            phi_valid=is_automorphism(H, phi.table),
                            center_order=len(z))


def _require(H: AbstractGroup, phi: Automorphism) -> HypothesisReport:
    rep = check_hypotheses(H, phi)
    if not rep.ok:
        raise HypothesisViolation(rep)
    return rep


@dataclass
class FormulaSide:
    """Everything computed from ``Out(H)`` alone."""

    out: OutGroup
    phi_class: int
    centralizer: AbstractGroup
    centralizer_embedding: list[int]
    cyclic_phi: list[int]
    group: AbstractGroup
    projection: list[int]
    conjugator: Optional[int]

    @property
    def index(self) -> int:
        return 2 if self.conjugator is not None else 1


def formula_side(H: AbstractGroup, phi: Automorphism,
                 auts: Optional[list[Automorphism]] = None, cap: int = DEFAULT_AUT_CAP) -> FormulaSide:
    _require(H, phi)
    out = OutGroup(H, auts if auts is not None else compute_aut(H, cap=cap))
    O = out.group
    p = out.index_of(phi)
    C, emb = out_centralizer(O, p)
    cyc = cyclic_closure(O, p)
    pos = {x: i for i, x in enumerate(emb)}
    Q, proj = quotient_map(C, [pos[x] for x in cyc])
    conj = out_conjugacy_test(O, p, O.inv(p))
    return FormulaSide(out, p, C, emb, cyc, Q, proj, conj)


def out0_via_formula(H: AbstractGroup, phi: Automorphism) -> AbstractGroup:
    """``C_Out(H)(phi^) / <phi^>``."""
    return formula_side(H, phi).group


def out0_index(H: AbstractGroup, phi: Automorphism) -> int:
    """2 if ``phi^`` is conjugate to ``phi^-1`` in ``Out(H)``, else 1."""
    return formula_side(H, phi).index


def eta_check(M: MappingTorus, side: FormulaSide, direct: DirectOut) -> EtaChecks:
    """Check ``delta^ -> [alpha_delta]`` from ``C_Out(H)(phi^)`` into direct ``Out^0``."""
    H = M.base
    out = side.out
    O = out.group
    cent = side.centralizer_embedding
    eta: dict[int, int] = {}
    bad: list[str] = []
    for c in cent:
        try:
            eta[c] = direct.class_index(build_alpha(M, out.rep(c)))
        except NotCentralizing:
            bad.append(f"no alpha twist for centralizing class {c}")
    if bad:
        return EtaChecks(False, False, False, False, bad[0])

    well_defined = True
    for c in cent:
        delta = out.rep(c)
        for k in range(H.order):
            d2 = delta * inner(H, k)
            if direct.class_index(build_alpha(M, d2)) != eta[c]:
                well_defined = False
                bad.append(f"class {c}: perturbing by inner({k}) changes the image")
                break
        if not well_defined:
            break

    homomorphism = True
    for a in cent:
        for b in cent:
            if eta[O.mul(a, b)] != direct.out.mul(eta[a], eta[b]):
                homomorphism = False
                bad.append(f"eta({a}*{b}) != eta({a})*eta({b})")
                break
        if not homomorphism:
            break

    surjective = sorted(set(eta.values())) == direct.out0_ids
    if not surjective:
        bad.append("image of eta misses some Out^0 classes")
    kernel = sorted(c for c in cent if eta[c] == 0)
    kernel_ok = kernel == side.cyclic_phi
    if not kernel_ok:
        bad.append(f"kernel {kernel} != <phi^> {side.cyclic_phi}")
    return EtaChecks(well_defined, homomorphism, surjective, kernel_ok, bad[0] if bad else None)


def zeta_exists(M: MappingTorus, auts: list[Automorphism]) -> bool:
    return any(zeta_twist(M, d) is not None for d in auts)


def _group_summary(G: Optional[AbstractGroup]) -> Optional[dict]:
    if G is None:
        return None
    return {"order": G.order, "id": identify(G), "abelian": G.is_abelian,
            "order_histogram": {str(k): v for k, v in G.order_histogram.items()}}


@dataclass
class TheoremReport:
    group_name: str
    group_order: int
    phi_table: list[int]
    hypotheses: HypothesisReport
    out_h: Optional[AbstractGroup] = None
    phi_class: Optional[int] = None
    phi_outer_order: Optional[int] = None
    centralizer_order: Optional[int] = None
    formula_group: Optional[AbstractGroup] = None
    index: Optional[int] = None
    phi_conjugate_to_inverse: Optional[bool] = None
    cross_validated: bool = False
    direct_out0: Optional[AbstractGroup] = None
    direct_out: Optional[AbstractGroup] = None
    direct_index: Optional[int] = None
    zeta_exists: Optional[bool] = None
    eta_checks: Optional[EtaChecks] = None
    iso_witness: Optional[list[int]] = None
    caps: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "group": {"name": self.group_name, "order": self.group_order},
            "phi": {"table": self.phi_table, "outer_class": self.phi_class,
                    "outer_order": self.phi_outer_order},
            "hypotheses": asdict(self.hypotheses) | {"ok": self.hypotheses.ok},
            "out_H": _group_summary(self.out_h),
            "formula": None if self.formula_group is None else {
                "centralizer_order": self.centralizer_order,
                "cyclic_phi_order": self.phi_outer_order,
                "group": _group_summary(self.formula_group),
            },
            "index": self.index,
            "phi_conjugate_to_inverse": self.phi_conjugate_to_inverse,
            "cross_validated": self.cross_validated,
            "direct": None if not self.cross_validated else {
                "out": _group_summary(self.direct_out),
                "out0": _group_summary(self.direct_out0),
                "index": self.direct_index,
                "zeta_exists": self.zeta_exists,
            },
            "eta_checks": None if self.eta_checks is None else asdict(self.eta_checks),
            "iso_witness": self.iso_witness,
            "caps": self.caps,
            "seed": os.environ.get("TORSOR_SEED"),
        }


def analyze(H: FiniteGroup | AbstractGroup, phi: Automorphism, cross: bool = False,
            aut_cap: int = DEFAULT_AUT_CAP, enum_cap: int = DEFAULT_ENUM_CAP) -> TheoremReport:
    """Run the formula side and, with ``cross``, the direct oracle as well.

    Raises :class:`HypothesisViolation` (carrying the flags) when ``H`` has
    nontrivial center or ``phi`` is invalid, and :class:`TheoremViolation`
    (carrying the partial report) when the two sides disagree.
    """
    hyp = check_hypotheses(H, phi)
    report = TheoremReport(group_name=getattr(H, "name", "H"), group_order=H.order,
                           phi_table=list(phi.table), hypotheses=hyp,
                           caps={"aut": aut_cap, "enum": enum_cap})
    if not hyp.ok:
        raise HypothesisViolation(hyp, report)
    auts = compute_aut(H, cap=aut_cap)
    side = formula_side(H, phi, auts=auts)
    report.out_h = side.out.group
    report.phi_class = side.phi_class
    report.phi_outer_order = len(side.cyclic_phi)
    report.centralizer_order = side.centralizer.order
    report.formula_group = side.group
    report.index = side.index
    report.phi_conjugate_to_inverse = side.conjugator is not None
    if not cross:
        return report

    M = MappingTorus(H, phi)
    direct = DirectOut(M, auts=auts, cap=enum_cap)
    report.cross_validated = True
    report.direct_out = direct.out
    report.direct_out0 = direct.out0
    report.direct_index = direct.index
    report.zeta_exists = zeta_exists(M, auts)
    report.eta_checks = eta_check(M, side, direct)
    report.iso_witness = iso_test(side.group, direct.out0)

    problems = []
    if report.iso_witness is None:
        problems.append("no isomorphism between the formula group and direct Out^0")
    if direct.index != side.index:
        problems.append(f"index {side.index} from conjugacy, {direct.index} from enumeration")
    if report.zeta_exists != (side.index == 2):
        problems.append("zeta existence disagrees with the conjugacy test")
    if direct.out.order != direct.index * direct.out0.order:
        problems.append("|Out| != index * |Out^0|")
    if not report.eta_checks.ok:
        problems.append(f"eta check failed: {report.eta_checks.counterexample}")
    if problems:
        raise TheoremViolation("; ".join(problems), report)
    return report


def cross_validate(H: AbstractGroup, phi: Automorphism, **caps) -> TheoremReport:
    return analyze(H, phi, cross=True, **caps)
