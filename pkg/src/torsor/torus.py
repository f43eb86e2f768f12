"""Exact arithmetic in the mapping torus ``H_phi = <H, t | t h t^-1 = phi(h)>``.

Elements are normal forms ``h t^k`` (:class:`TorusElement`).  Automorphisms of
``H_phi`` are held in the form ``h -> delta(h), t -> g t^eps``
(:class:`TorusAut`); composition is left to right, as in :mod:`.morphisms`.

The twist equations solved here, for all ``h`` in ``H``:

* alpha type (``eps = +1``, ``t -> g t``):   ``delta(phi(h)) = g phi(delta(h)) g^-1``
* zeta type (``eps = -1``, ``t -> g^-1 t^-1``): ``delta(phi(h)) = g^-1 phi^-1(delta(h)) g``

Both say exactly that the image of ``t`` conjugates ``delta(h)`` to
``delta(phi(h))``, i.e. that the defining relation is preserved.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Union

import numpy as np

from .groups import AbstractGroup, CapExceeded, FiniteGroup
from .morphisms import Automorphism, compute_aut, identity_aut, is_automorphism

DEFAULT_ENUM_CAP = 1_000_000


class NotCentralizing(ValueError):
    """delta's outer class does not commute with phi's."""


class NotReversing(ValueError):
    """delta does not conjugate phi's outer class to its inverse."""


@dataclass(frozen=True, order=True)
class TorusElement:
    h: int
    k: int


@dataclass(frozen=True)
class TorusAut:
    """``h -> delta(h)``, ``t -> g t^eps``.

    For a zeta-type map built from a twist ``g`` the stored element is ``g^-1``,
    since that map sends ``t`` to ``g^-1 t^-1``.
    """

    delta: Automorphism
    g: int
    eps: int

    def key(self) -> tuple:
        return (0 if self.eps == 1 else 1, self.delta.table, self.g)


@dataclass(frozen=True)
class Alpha:
    delta: Automorphism


@dataclass(frozen=True)
class Zeta:
    delta: Automorphism


class MappingTorus:
    def __init__(self, base: AbstractGroup, phi: Automorphism):
        if not is_automorphism(base, phi.table):
            raise ValueError("phi is not an automorphism of the base group")
        self.base = base
        self.phi = phi
        powers = [identity_aut(base)]
        while True:
            nxt = powers[-1] * phi
            if nxt.is_identity:
                break
            powers.append(nxt)
        self._phi_powers = [p.table for p in powers]
        self.phi_order = len(powers)

    def __repr__(self) -> str:
        name = getattr(self.base, "name", f"order {self.base.order}")
        return f"MappingTorus({name}, phi_order={self.phi_order})"

    def phi_pow(self, k: int, h: int) -> int:
        """``phi^k(h)`` for any integer ``k``."""
        return self._phi_powers[k % self.phi_order][h]

    @cached_property
    def t(self) -> TorusElement:
        return TorusElement(0, 1)

    def element(self, h: int, k: int = 0) -> TorusElement:
        return TorusElement(h, k)


def torus_mul(M: MappingTorus, x: TorusElement, y: TorusElement) -> TorusElement:
    # h1 t^k1 h2 t^k2 = h1 phi^k1(h2) t^(k1+k2)
    return TorusElement(M.base.mul(x.h, M.phi_pow(x.k, y.h)), x.k + y.k)


def torus_inv(M: MappingTorus, x: TorusElement) -> TorusElement:
    # (h t^k)^-1 = t^-k h^-1 = phi^-k(h^-1) t^-k
    return TorusElement(M.phi_pow(-x.k, M.base.inv(x.h)), -x.k)


def torus_pow(M: MappingTorus, x: TorusElement, n: int) -> TorusElement:
    if n < 0:
        x, n = torus_inv(M, x), -n
    result = TorusElement(0, 0)
    while n:
        if n & 1:
            result = torus_mul(M, result, x)
        x = torus_mul(M, x, x)
        n >>= 1
    return result


def torus_conj(M: MappingTorus, x: TorusElement, y: TorusElement) -> TorusElement:
    """``x y x^-1``."""
    return torus_mul(M, torus_mul(M, x, y), torus_inv(M, x))


def torsion_check(M: MappingTorus, x: TorusElement) -> bool:
    """True iff ``x`` has finite order; for finite ``H`` this is ``k == 0``."""
    return x.k == 0


def apply(M: MappingTorus, a: TorusAut, x: TorusElement) -> TorusElement:
    return torus_mul(M, TorusElement(a.delta(x.h), 0),
                     torus_pow(M, TorusElement(a.g, a.eps), x.k))


def verify(M: MappingTorus, a: TorusAut) -> bool:
    """Check that ``a`` is an automorphism of ``H_phi``.

    ``delta`` must be an automorphism of ``H`` and the image of ``t`` must
    conjugate ``delta(h)`` to ``delta(phi(h))`` for every ``h``.  With
    ``eps = +-1`` this is enough for bijectivity on normal forms.
    """
    if a.eps not in (1, -1) or not is_automorphism(M.base, a.delta.table):
        return False
    return _relation_holds(M, a.delta, a.g, a.eps)


def _relation_holds(M: MappingTorus, delta: Automorphism, g: int, eps: int) -> bool:
    timg = TorusElement(g, eps)
    for h in range(M.base.order):
        if torus_conj(M, timg, TorusElement(delta(h), 0)) != TorusElement(delta(M.phi(h)), 0):
            return False
    return True


def _solve_twist(M: MappingTorus, lhs: np.ndarray, inner_part: np.ndarray, flip: bool) -> Optional[int]:
    """Least ``g`` with ``lhs[h] == g x[h] g^-1`` (or ``g^-1 x[h] g`` when flipped)."""
    H = M.base
    T = H.mul_table
    for g in range(H.order):
        a, b = (H.inv(g), g) if flip else (g, H.inv(g))
        if np.array_equal(T[T[a, inner_part], b], lhs):
            return g
    return None


def alpha_twist(M: MappingTorus, delta: Automorphism) -> Optional[int]:
    """``g`` with ``delta(phi(h)) = g phi(delta(h)) g^-1`` for all ``h``, or None."""
    d = np.asarray(delta.table)
    p = np.asarray(M.phi.table)
    return _solve_twist(M, d[p], p[d], flip=False)


def zeta_twist(M: MappingTorus, delta: Automorphism) -> Optional[int]:
    """``g`` with ``delta(phi(h)) = g^-1 phi^-1(delta(h)) g`` for all ``h``, or None."""
    d = np.asarray(delta.table)
    p = np.asarray(M.phi.table)
    pinv = np.asarray(M.phi.inverse().table)
    return _solve_twist(M, d[p], pinv[d], flip=True)


def build_alpha(M: MappingTorus, delta: Automorphism) -> TorusAut:
    g = alpha_twist(M, delta)
    if g is None:
        raise NotCentralizing("delta does not centralize phi in Out(H)")
    a = TorusAut(delta, g, 1)
    assert verify(M, a)
    return a


def build_zeta(M: MappingTorus, delta: Automorphism) -> TorusAut:
    g = zeta_twist(M, delta)
    if g is None:
        raise NotReversing("delta does not conjugate phi to its inverse in Out(H)")
    a = TorusAut(delta, M.base.inv(g), -1)
    assert verify(M, a)
    return a


def identity_torus_aut(M: MappingTorus) -> TorusAut:
    return TorusAut(identity_aut(M.base), 0, 1)


def compose_aut(M: MappingTorus, a: TorusAut, b: TorusAut) -> TorusAut:
    """``a`` then ``b``."""
    timg = apply(M, b, TorusElement(a.g, a.eps))
    return TorusAut(a.delta * b.delta, timg.h, timg.k)


def invert_aut(M: MappingTorus, a: TorusAut) -> TorusAut:
    # find h with a(h t^eps) = t: a(t^eps) = y_h t, so delta(h) = y_h^-1
    y = apply(M, a, TorusElement(0, a.eps))
    assert y.k == 1
    dinv = a.delta.inverse()
    return TorusAut(dinv, dinv(M.base.inv(y.h)), a.eps)


def torus_inner(M: MappingTorus, k: int, i: int) -> TorusAut:
    """Conjugation ``y -> x y x^-1`` by ``x = k t^i``.

    ``i`` is reduced mod the order of phi, since ``t^m`` is central when
    ``phi^m = id``.
    """
    x = TorusElement(k, i % M.phi_order)
    table = []
    for h in range(M.base.order):
        y = torus_conj(M, x, TorusElement(h, 0))
        table.append(y.h)
    timg = torus_conj(M, x, M.t)
    return TorusAut(Automorphism(M.base, tuple(table)), timg.h, timg.k)


def inner_torus_auts(M: MappingTorus) -> list[TorusAut]:
    """The distinct inner automorphisms of ``H_phi``, sorted by key."""
    seen = {}
    for i in range(M.phi_order):
        for k in range(M.base.order):
            a = torus_inner(M, k, i)
            seen.setdefault(a.key(), a)
    return [seen[key] for key in sorted(seen)]


def inner_equivalent(M: MappingTorus, a: TorusAut, b: TorusAut) -> bool:
    """True iff ``a = b * c`` for some inner ``c`` (exhaustive over ``k t^i``)."""
    if a.eps != b.eps:
        return False
    for i in range(M.phi_order):
        for k in range(M.base.order):
            if compose_aut(M, b, torus_inner(M, k, i)) == a:
                return True
    return False


def classify(M: MappingTorus, a: TorusAut) -> Union[Alpha, Zeta]:
    return Alpha(a.delta) if a.eps == 1 else Zeta(a.delta)


class DirectOut:
    """``Out(H_phi)`` and ``Out^0(H_phi)`` by brute-force enumeration.

    Every triple ``(delta, g, eps)`` is tested against the defining relation
    directly; no twist equations are solved.  Classes are numbered by the key
    of their least member, so alpha-type classes come first and class 0 is the
    identity.
    """

    def __init__(self, M: MappingTorus, auts: Optional[list[Automorphism]] = None,
                 cap: int = DEFAULT_ENUM_CAP):
        H = M.base
        if auts is None:
            auts = compute_aut(H)
        n_candidates = 2 * len(auts) * H.order
        if n_candidates > cap:
            raise CapExceeded(f"{n_candidates} torus candidates exceed enumeration cap {cap}")
        self.torus = M
        verified = [TorusAut(d, g, eps) for eps in (1, -1) for d in auts for g in range(H.order)
                    if _relation_holds(M, d, g, eps)]
        verified.sort(key=TorusAut.key)
        self.automorphisms = verified
        self.inner = inner_torus_auts(M)

        index: dict[tuple, int] = {}
        reps: list[TorusAut] = []
        for a in verified:
            if a.key() in index:
                continue
            cid = len(reps)
            reps.append(a)
            for c in self.inner:
                index[compose_aut(M, a, c).key()] = cid
        if len(index) != len(verified):
            raise AssertionError("inner cosets escaped the enumerated automorphisms")
        self._index = index
        self.reps = reps
        k = len(reps)
        table = [[index[compose_aut(M, reps[x], reps[y]).key()] for y in range(k)] for x in range(k)]
        self.out = AbstractGroup(table, [f"{'a' if r.eps == 1 else 'z'}{i}" for i, r in enumerate(reps)])
        self.out0_ids = [i for i, r in enumerate(reps) if r.eps == 1]
        self.out0, _ = self.out.subgroup(self.out0_ids)
        if self.out.order % self.out0.order:
            raise AssertionError("Out^0 order does not divide Out order")
        self.index = self.out.order // self.out0.order

    def class_index(self, a: TorusAut) -> int:
        return self._index[a.key()]


def enumerate_out_direct(M: MappingTorus, cap: int = DEFAULT_ENUM_CAP,
                         auts: Optional[list[Automorphism]] = None) -> tuple[AbstractGroup, AbstractGroup, int]:
    d = DirectOut(M, auts=auts, cap=cap)
    return d.out, d.out0, d.index
