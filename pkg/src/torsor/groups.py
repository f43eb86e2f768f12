"""Finite groups as Cayley tables, and permutation groups built by closure.

Conventions used throughout the package:

* element ids index the rows of a multiplication table, id 0 is the identity;
* ``mul(a, b)`` means "a then b".  For permutations this is left-to-right
  composition on points: ``(a*b)[i] = b[a[i]]``.
"""
from __future__ import annotations

import json
from collections import Counter, deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence

import numpy as np

DEFAULT_ELEMENT_CAP = 10_000


class GroupFileError(ValueError):
    """Raised for malformed group files and invalid permutation data."""


class CapExceeded(RuntimeError):
    """Raised when a computation would exceed a configured size cap."""


class AbstractGroup:
    """A finite group given by its multiplication table.

    ``mul_table[a, b]`` is the id of ``a*b``.  The table is trusted on
    construction apart from shape and identity checks; call :meth:`validate`
    for the full Latin-square and associativity check.
    """

    def __init__(self, mul_table, labels: Optional[Sequence[str]] = None):
        table = np.asarray(mul_table, dtype=np.int64)
        if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
            raise ValueError("multiplication table must be a nonempty square array")
        n = table.shape[0]
        ids = np.arange(n)
        if not (np.array_equal(table[0], ids) and np.array_equal(table[:, 0], ids)):
            raise ValueError("element 0 must be the identity")
        self.mul_table = table
        self.order = n
        self.labels = list(labels) if labels is not None else None
        inv = np.argmax(table == 0, axis=1)
        if not np.all(table[ids, inv] == 0):
            raise ValueError("some element has no inverse")
        self.inv_table = inv

    def __repr__(self) -> str:
        return f"{type(self).__name__}(order={self.order})"

    def __len__(self) -> int:
        return self.order

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inv_table[a])

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        result = 0
        base = a
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def validate(self) -> None:
        """Check the Latin-square property and associativity exhaustively."""
        t = self.mul_table
        n = self.order
        ids = np.arange(n)
        for row in (t, t.T):
            if not np.all(np.sort(row, axis=1) == ids):
                raise ValueError("table is not a Latin square")
        # (ab)c == a(bc) for all a, b, c
        left = t[t]  # left[a, b, c] = (a*b)*c
        right = t[:, t]  # right[a, b, c] = a*(b*c)
        if not np.array_equal(left, right):
            raise ValueError("table is not associative")

    @cached_property
    def _rows(self) -> list[list[int]]:
        return self.mul_table.tolist()

    @cached_property
    def element_orders(self) -> tuple[int, ...]:
        orders = []
        for a in range(self.order):
            k, x = 1, a
            while x != 0:
                x = self._rows[x][a]
                k += 1
            orders.append(k)
        return tuple(orders)

    def element_order(self, a: int) -> int:
        return self.element_orders[a]

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.mul_table, self.mul_table.T))

    @cached_property
    def order_histogram(self) -> dict[int, int]:
        return dict(sorted(Counter(self.element_orders).items()))

    def invariants(self) -> tuple:
        return (self.order, self.is_abelian, tuple(self.order_histogram.items()))

    def closure(self, gens: Iterable[int]) -> list[int]:
        """Sorted ids of the subgroup generated by ``gens``."""
        gens = list(gens)
        seen = {0}
        queue = deque([0])
        rows = self._rows
        while queue:
            x = queue.popleft()
            for s in gens:
                y = rows[x][s]
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return sorted(seen)

    def generating_set(self, candidates: Optional[Iterable[int]] = None) -> list[int]:
        """A small generating set chosen greedily.

        Without ``candidates``, elements are tried in order of decreasing
        element order, then id.
        """
        if candidates is None:
            orders = self.element_orders
            candidates = sorted(range(1, self.order), key=lambda a: (-orders[a], a))
        gens: list[int] = []
        span = {0}
        for c in candidates:
            if len(span) == self.order:
                break
            if c not in span:
                gens.append(c)
                span = set(self.closure(gens))
        if len(span) != self.order:
            raise ValueError("candidates do not generate the group")
        return gens

    def subgroup(self, elements: Iterable[int]) -> tuple["AbstractGroup", list[int]]:
        """Return the subgroup on ``elements`` and its embedding (new id -> old id).

        New ids follow ascending old ids, so the identity stays at 0.
        """
        emb = sorted(set(elements))
        if not emb or emb[0] != 0:
            raise ValueError("subgroup must contain the identity")
        pos = {x: i for i, x in enumerate(emb)}
        sub = self.mul_table[np.ix_(emb, emb)]
        try:
            table = np.vectorize(pos.__getitem__, otypes=[np.int64])(sub)
        except KeyError:
            raise ValueError("elements are not closed under multiplication") from None
        labels = [self.labels[x] for x in emb] if self.labels else None
        return AbstractGroup(table, labels), emb

    def conjugacy_class(self, x: int) -> list[int]:
        t = self.mul_table
        return sorted({int(v) for v in t[t[self.inv_table, x], np.arange(self.order)]})

    @cached_property
    def class_sizes(self) -> tuple[int, ...]:
        """Conjugacy class size of each element."""
        return tuple(self.order // len(centralizer(self, x)) for x in range(self.order))


@dataclass(frozen=True)
class Permutation:
    """A permutation of ``0..degree-1``; ``images[i]`` is the image of ``i``."""

    images: tuple[int, ...]

    def __post_init__(self):
        imgs = tuple(int(i) for i in self.images)
        if not imgs or sorted(imgs) != list(range(len(imgs))):
            raise GroupFileError(f"images {list(self.images)} are not a bijection")
        object.__setattr__(self, "images", imgs)

    @property
    def degree(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, degree: int, *cycles: Sequence[int]) -> "Permutation":
        images = list(range(degree))
        for cyc in cycles:
            for i, p in enumerate(cyc):
                images[p] = cyc[(i + 1) % len(cyc)]
        return cls(tuple(images))

    def __mul__(self, other: "Permutation") -> "Permutation":
        # self first, then other
        return Permutation(tuple(other.images[i] for i in self.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def __call__(self, point: int) -> int:
        return self.images[point]


class FiniteGroup(AbstractGroup):
    """A permutation group, fully enumerated.

    Elements are listed in breadth-first closure order from the identity,
    multiplying on the right by the generators in the order given.
    """

    def __init__(self, name: str, degree: int, generators: Sequence[Permutation],
                 cap: int = DEFAULT_ELEMENT_CAP):
        if not generators:
            raise GroupFileError("at least one generator is required")
        for g in generators:
            if g.degree != degree:
                raise GroupFileError(f"generator {list(g.images)} has degree {g.degree}, expected {degree}")
        self.name = name
        self.degree = degree
        self.generators = list(generators)

        ident = Permutation.identity(degree)
        elements = [ident]
        index = {ident.images: 0}
        parent = [-1]
        via = [-1]
        right = [[] for _ in generators]  # right[s][a] = id of a*gen_s
        a = 0
        while a < len(elements):
            x = elements[a]
            for s, g in enumerate(generators):
                y = x * g
                j = index.get(y.images)
                if j is None:
                    if len(elements) >= cap:
                        raise CapExceeded(f"group closure exceeds element cap {cap}")
                    j = len(elements)
                    index[y.images] = j
                    elements.append(y)
                    parent.append(a)
                    via.append(s)
                right[s].append(j)
            a += 1

        n = len(elements)
        right_arr = [np.asarray(r, dtype=np.int64) for r in right]
        table = np.empty((n, n), dtype=np.int64)
        table[:, 0] = np.arange(n)
        # a*b = (a*parent(b))*gen, filled column by column in closure order
        for b in range(1, n):
            table[:, b] = right_arr[via[b]][table[:, parent[b]]]

        self.elements = elements
        self._index = index
        self.generator_ids = [index[g.images] for g in generators]
        super().__init__(table)

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name!r}, order={self.order})"

    def element_id(self, perm: Permutation | Sequence[int]) -> int:
        images = perm.images if isinstance(perm, Permutation) else tuple(perm)
        try:
            return self._index[tuple(images)]
        except KeyError:
            raise KeyError(f"{list(images)} is not an element of {self.name}") from None

    def evaluate_word(self, word: Sequence[int]) -> int:
        """Evaluate a word in the generators (+j is generator j-1, -j its inverse)."""
        x = 0
        for letter in word:
            if letter == 0 or abs(letter) > len(self.generator_ids):
                raise GroupFileError(f"bad generator letter {letter}")
            g = self.generator_ids[abs(letter) - 1]
            x = self.mul(x, g if letter > 0 else self.inv(g))
        return x

    def word_for(self, x: int) -> list[int]:
        """A shortest positive word in the generators representing ``x``."""
        target = self.elements[x]
        if x == 0:
            return []
        # BFS over the right Cayley graph; deterministic by generator order
        prev = {0: None}
        queue = deque([0])
        while queue:
            a = queue.popleft()
            for s, g in enumerate(self.generator_ids):
                b = self.mul(a, g)
                if b not in prev:
                    prev[b] = (a, s + 1)
                    if b == x:
                        word = []
                        while prev[b] is not None:
                            b, letter = prev[b]
                            word.append(letter)
                        return word[::-1]
                    queue.append(b)
        raise AssertionError(f"{target} unreachable")  # pragma: no cover

    def to_json(self) -> dict:
        return {"name": self.name, "degree": self.degree,
                "generators": [list(g.images) for g in self.generators]}


def parse_group(text: str, cap: int = DEFAULT_ELEMENT_CAP) -> FiniteGroup:
    """Parse a group file: ``{"name", "degree", "generators": [[images...], ...]}``."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise GroupFileError(f"invalid JSON: {e}") from None
    if not isinstance(data, dict):
        raise GroupFileError("group file must be a JSON object")
    name = data.get("name", "G")
    degree = data.get("degree")
    gens = data.get("generators")
    if not isinstance(name, str):
        raise GroupFileError("name must be a string")
    if not isinstance(degree, int) or isinstance(degree, bool) or degree < 1:
        raise GroupFileError("degree must be a positive integer")
    if not isinstance(gens, list) or not gens:
        raise GroupFileError("generators must be a nonempty list")
    perms = []
    for g in gens:
        if not isinstance(g, list) or not all(isinstance(i, int) and not isinstance(i, bool) for i in g):
            raise GroupFileError(f"generator {g!r} must be a list of integers")
        if len(g) != degree:
            raise GroupFileError(f"generator {g} does not have {degree} images")
        perms.append(Permutation(tuple(g)))
    return FiniteGroup(name, degree, perms, cap=cap)


def load_group(path, cap: int = DEFAULT_ELEMENT_CAP) -> FiniteGroup:
    with open(path) as f:
        return parse_group(f.read(), cap=cap)


def center(G: AbstractGroup) -> list[int]:
    t = G.mul_table
    return [int(z) for z in np.flatnonzero(np.all(t == t.T, axis=1))]


def centralizer(G: AbstractGroup, x: int) -> list[int]:
    t = G.mul_table
    return [int(c) for c in np.flatnonzero(t[:, x] == t[x, :])]


def commutator(G: AbstractGroup, h: int, k: int) -> int:
    """``h^-1 k^-1 h k``."""
    return G.mul(G.mul(G.inv(h), G.inv(k)), G.mul(h, k))


def conjugacy_test(G: AbstractGroup, x: int, y: int) -> Optional[int]:
    """Least ``c`` with ``c^-1 x c == y``, or None."""
    if G.element_order(x) != G.element_order(y):
        return None
    t = G.mul_table
    conj = t[t[G.inv_table, x], np.arange(G.order)]
    hits = np.flatnonzero(conj == y)
    return int(hits[0]) if hits.size else None
