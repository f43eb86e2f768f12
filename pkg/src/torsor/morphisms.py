"""Automorphisms of finite groups and the groups Aut, Inn and Out.

Automorphisms compose left to right, like group elements: ``a * b`` applies
``a`` first and then ``b``.  The inner automorphism by ``g`` is
``h -> g^-1 h g``, which makes ``g -> inner(g)`` a homomorphism under this
composition rule.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from .groups import (DEFAULT_ELEMENT_CAP, AbstractGroup, CapExceeded, FiniteGroup,
                     GroupFileError, Permutation, conjugacy_test)

DEFAULT_AUT_CAP = 2_000


@dataclass(frozen=True)
class Automorphism:
    """An automorphism stored as a full table of element images."""

    group: AbstractGroup = field(compare=False, repr=False)
    table: tuple[int, ...]

    def __call__(self, h: int) -> int:
        return self.table[h]

    def __mul__(self, other: "Automorphism") -> "Automorphism":
        # self first, then other
        t = other.table
        return Automorphism(self.group, tuple(t[x] for x in self.table))

    then = __mul__

    def inverse(self) -> "Automorphism":
        inv = [0] * len(self.table)
        for h, x in enumerate(self.table):
            inv[x] = h
        return Automorphism(self.group, tuple(inv))

    def __pow__(self, k: int) -> "Automorphism":
        base = self if k >= 0 else self.inverse()
        result = identity_aut(self.group)
        for _ in range(abs(k)):
            result = result * base
        return result

    @property
    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.table))

    @cached_property
    def order(self) -> int:
        k, a = 1, self
        while not a.is_identity:
            a = a * self
            k += 1
        return k

    def to_words(self) -> list[list[int]]:
        """Images of the generators as words, for automorphism files."""
        G = self.group
        return [G.word_for(self.table[g]) for g in G.generator_ids]


def identity_aut(G: AbstractGroup) -> Automorphism:
    return Automorphism(G, tuple(range(G.order)))


def is_automorphism(G: AbstractGroup, table: Sequence[int]) -> bool:
    """Full-table check: bijective, fixes 0, and ``f(ab) = f(a) f(b)`` for all pairs."""
    t = np.asarray(table, dtype=np.int64)
    n = G.order
    if t.shape != (n,) or t[0] != 0 or not np.array_equal(np.sort(t), np.arange(n)):
        return False
    M = G.mul_table
    return bool(np.array_equal(t[M], M[np.ix_(t, t)]))


def inner(G: AbstractGroup, g: int) -> Automorphism:
    """The map ``h -> g^-1 h g``."""
    M = G.mul_table
    return Automorphism(G, tuple(int(x) for x in M[M[G.inv(g), :], g]))


def _extend(src: AbstractGroup, dst: AbstractGroup, gens: Sequence[int],
            images: Sequence[int]) -> Optional[dict[int, int]]:
    """Extend ``gens -> images`` to an injective homomorphism on ``<gens>``.

    Walks the right Cayley graph of ``<gens>`` and checks every edge, so a
    returned map is well defined and multiplicative on the whole subgroup.
    """
    srows = src._rows
    drows = dst._rows
    img = {0: 0}
    frontier = [0]
    pairs = list(zip(gens, images))
    for x in frontier:
        ix = img[x]
        for s, t in pairs:
            y = srows[x][s]
            iy = drows[ix][t]
            old = img.get(y)
            if old is None:
                img[y] = iy
                frontier.append(y)
            elif old != iy:
                return None
    if len(set(img.values())) != len(img):
        return None
    return img


def _search_maps(src: AbstractGroup, dst: AbstractGroup, gens: Sequence[int],
                 candidates: Sequence[Sequence[int]], first_only: bool) -> list[list[int]]:
    """Backtrack over generator images; return full bijective maps as id lists."""
    found: list[list[int]] = []
    chosen: list[int] = []

    def rec(depth: int) -> bool:
        for c in candidates[depth]:
            chosen.append(c)
            img = _extend(src, dst, gens[:depth + 1], chosen)
            if img is not None:
                if depth + 1 == len(gens):
                    if len(img) == src.order:
                        found.append([img[x] for x in range(src.order)])
                        if first_only:
                            return True
                elif rec(depth + 1):
                    return True
            chosen.pop()
        return False

    rec(0)
    return found


def compute_aut(G: AbstractGroup, cap: int = DEFAULT_AUT_CAP) -> list[Automorphism]:
    """All automorphisms of ``G``, sorted by table.

    Generator images are restricted to elements of the same order and
    conjugacy class size.
    """
    if G.order > cap:
        raise CapExceeded(f"|G| = {G.order} exceeds automorphism cap {cap}")
    if isinstance(G, FiniteGroup):
        gens = G.generating_set(G.generator_ids)
    else:
        gens = G.generating_set()
    orders, sizes = G.element_orders, G.class_sizes
    candidates = [[x for x in range(G.order) if orders[x] == orders[s] and sizes[x] == sizes[s]]
                  for s in gens]
    tables = _search_maps(G, G, gens, candidates, first_only=False)
    auts = []
    for t in tables:
        if not is_automorphism(G, t):  # pragma: no cover - guarded by _extend
            raise AssertionError("search produced a non-automorphism")
        auts.append(Automorphism(G, tuple(t)))
    return sorted(auts, key=lambda a: a.table)


def brute_force_aut(G: AbstractGroup) -> list[Automorphism]:
    """Every multiplication-preserving bijection, by exhaustive permutation search."""
    from itertools import permutations

    n = G.order
    rows = G._rows
    out = []
    for rest in permutations(range(1, n)):
        f = (0,) + rest
        if all(f[rows[a][b]] == rows[f[a]][f[b]] for a in range(n) for b in range(n)):
            out.append(Automorphism(G, f))
    return out


@dataclass(frozen=True)
class OuterClass:
    """An outer automorphism class, held by its lexicographically least table."""

    rep: Automorphism


class OutGroup:
    """``Out(G) = Aut(G)/Inn(G)`` as an abstract group.

    Element ``i`` of :attr:`group` is the outer class :attr:`classes[i]`;
    classes are ordered by representative table, so the identity class is 0.
    """

    def __init__(self, G: AbstractGroup, auts: Iterable[Automorphism]):
        auts = sorted(auts, key=lambda a: a.table)
        self.base = G
        self.inner = sorted({inner(G, g).table for g in range(G.order)})
        index: dict[tuple, int] = {}
        reps: list[Automorphism] = []
        for a in auts:
            if a.table in index:
                continue
            cid = len(reps)
            reps.append(a)
            for i in self.inner:
                index[tuple(i[x] for x in a.table)] = cid
        if len(index) != len(auts):
            raise ValueError("automorphism list is not closed under Inn")
        self._index = index
        self.classes = [OuterClass(r) for r in reps]
        k = len(reps)
        table = [[index[(reps[a] * reps[b]).table] for b in range(k)] for a in range(k)]
        labels = [f"out{i}" for i in range(k)]
        self.group = AbstractGroup(table, labels)
        self.aut_order = len(auts)

    def __repr__(self) -> str:
        return f"OutGroup(|Aut|={self.aut_order}, |Inn|={len(self.inner)}, |Out|={self.group.order})"

    def index_of(self, a: Automorphism) -> int:
        return self._index[a.table]

    def class_of(self, a: Automorphism) -> OuterClass:
        return self.classes[self.index_of(a)]

    def rep(self, i: int) -> Automorphism:
        return self.classes[i].rep


def project_out(G: AbstractGroup, auts: Iterable[Automorphism]) -> tuple[AbstractGroup, Callable[[Automorphism], OuterClass]]:
    out = OutGroup(G, auts)
    return out.group, out.class_of


def out_centralizer(out: AbstractGroup, x: int) -> tuple[AbstractGroup, list[int]]:
    """``C_out(x)`` with its embedding into ``out``."""
    M = out.mul_table
    return out.subgroup(int(c) for c in np.flatnonzero(M[:, x] == M[x, :]))


def cyclic_closure(out: AbstractGroup, x: int) -> list[int]:
    """Sorted ids of ``<x>``."""
    powers, y = [0], x
    while y != 0:
        powers.append(y)
        y = out.mul(y, x)
    return sorted(powers)


def quotient_map(C: AbstractGroup, N: Iterable[int]) -> tuple[AbstractGroup, list[int]]:
    """The quotient ``C/N`` and the projection (id in C -> coset id).

    Cosets are numbered by their least element, so the identity coset is 0.
    """
    N = sorted(set(N))
    if not N or N[0] != 0 or C.closure(N) != N:
        raise ValueError("N is not a subgroup")
    M = C.mul_table
    for c in range(C.order):
        ci = C.inv(c)
        if any(int(M[M[ci, n], c]) not in N for n in N):
            raise ValueError("N is not normal")
    proj = [-1] * C.order
    reps = []
    for c in range(C.order):
        if proj[c] < 0:
            for n in N:
                proj[int(M[c, n])] = len(reps)
            reps.append(c)
    table = [[proj[int(M[a, b])] for b in reps] for a in reps]
    return AbstractGroup(table), proj


def quotient(C: AbstractGroup, N: Iterable[int]) -> AbstractGroup:
    return quotient_map(C, N)[0]


def iso_test(A: AbstractGroup, B: AbstractGroup,
             cap: int = DEFAULT_ELEMENT_CAP) -> Optional[list[int]]:
    """An isomorphism ``A -> B`` as a list of images, or None."""
    if max(A.order, B.order) > cap:
        raise CapExceeded(f"iso_test order exceeds cap {cap}")
    if A.invariants() != B.invariants():
        return None
    if A.order == 1:
        return [0]
    gens = A.generating_set()
    ob, sb = B.element_orders, B.class_sizes
    candidates = [[y for y in range(B.order)
                   if ob[y] == A.element_orders[s] and sb[y] == A.class_sizes[s]] for s in gens]
    found = _search_maps(A, B, gens, candidates, first_only=True)
    if not found:
        return None
    witness = found[0]
    if not is_isomorphism(A, B, witness):  # pragma: no cover
        raise AssertionError("iso search produced an invalid map")
    return witness


def is_isomorphism(A: AbstractGroup, B: AbstractGroup, f: Sequence[int]) -> bool:
    f = np.asarray(f, dtype=np.int64)
    if A.order != B.order or f.shape != (A.order,):
        return False
    if not np.array_equal(np.sort(f), np.arange(B.order)):
        return False
    return bool(np.array_equal(f[A.mul_table], B.mul_table[np.ix_(f, f)]))


def out_conjugacy_test(out: AbstractGroup, a: int, b: int) -> Optional[int]:
    """Some ``c`` with ``c^-1 a c = b`` in ``out``, or None."""
    return conjugacy_test(out, a, b)


# -- named catalog identification -------------------------------------------

def _perm_group(name: str, degree: int, gens: list[list[int]]) -> FiniteGroup:
    return FiniteGroup(name, degree, [Permutation(tuple(g)) for g in gens])


def cyclic_group(n: int) -> FiniteGroup:
    return _perm_group(f"C{n}", n, [[(i + 1) % n for i in range(n)]])


def dihedral_group(n: int) -> FiniteGroup:
    """Symmetries of the n-gon, order 2n."""
    return _perm_group(f"D{n}", n, [[(i + 1) % n for i in range(n)], [(-i) % n for i in range(n)]])


def symmetric_group(n: int) -> FiniteGroup:
    if n <= 2:
        return cyclic_group(n) if n == 2 else _perm_group("S1", 1, [[0]])
    return _perm_group(f"S{n}", n, [[(i + 1) % n for i in range(n)], [1, 0] + list(range(2, n))])


def _catalog_candidates(order: int) -> list[tuple[str, Callable[[], FiniteGroup]]]:
    cands = [(f"C{order}", lambda: cyclic_group(order))]
    if order == 4:
        cands.append(("C2xC2", lambda: _perm_group("C2xC2", 4, [[1, 0, 3, 2], [2, 3, 0, 1]])))
    for n, fact in ((3, 6), (4, 24), (5, 120)):
        if order == fact:
            cands.append((f"S{n}", lambda n=n: symmetric_group(n)))
    if order % 2 == 0 and order >= 6:
        cands.append((f"D{order // 2}", lambda: dihedral_group(order // 2)))
    return cands


def identify(G: AbstractGroup) -> str:
    """Catalog name (trivial, cyclic, Klein, symmetric up to S5, dihedral) or a fallback."""
    if G.order == 1:
        return "trivial"
    for name, build in _catalog_candidates(G.order):
        ref = build()
        if ref.invariants() == G.invariants() and iso_test(ref, G) is not None:
            return name
    return f"unidentified(order={G.order})"


# -- automorphism files ------------------------------------------------------

def parse_automorphism(text: str, G: FiniteGroup) -> Automorphism:
    """Parse ``{"images": [word, ...]}``, one word per generator of ``G``."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise GroupFileError(f"invalid JSON: {e}") from None
    if not isinstance(data, dict) or not isinstance(data.get("images"), list):
        raise GroupFileError("automorphism file needs an 'images' list")
    words = data["images"]
    if len(words) != len(G.generator_ids):
        raise GroupFileError(f"expected {len(G.generator_ids)} generator images, got {len(words)}")
    for w in words:
        if not isinstance(w, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in w):
            raise GroupFileError(f"image {w!r} is not a list of integers")
    images = [G.evaluate_word(w) for w in words]
    return automorphism_from_images(G, images)


def automorphism_from_images(G: FiniteGroup, images: Sequence[int]) -> Automorphism:
    """Extend generator images to a full table; raise if that is not an automorphism."""
    img = _extend(G, G, G.generator_ids, images)
    if img is None or len(img) != G.order:
        raise GroupFileError("generator images do not define an automorphism")
    table = tuple(img[x] for x in range(G.order))
    if not is_automorphism(G, table):  # pragma: no cover
        raise GroupFileError("generator images do not define an automorphism")
    return Automorphism(G, table)


def load_automorphism(path, G: FiniteGroup) -> Automorphism:
    with open(path) as f:
        return parse_automorphism(f.read(), G)
