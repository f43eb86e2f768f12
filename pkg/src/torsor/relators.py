"""Listing relators of an automorphism group of a finitely presented group.

Words over the automorphism generators are enumerated in shortlex order; a
word ``Psi`` is emitted when ``Psi(x_j) = x_j`` is certified for every
generator ``x_j`` by a bounded search that only ever answers "yes" or
"unknown".

Letters are nonzero integers: ``+j`` is generator ``j`` (1-based), ``-j`` its
inverse.  ``Psi = psi_a psi_b`` applies ``psi_a`` first.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Optional, Sequence

from .groups import FiniteGroup

Word = tuple[int, ...]

DEFAULT_MAX_STATES = 1_000_000
DEFAULT_WORD_CAP = 256


class PresentationError(ValueError):
    pass


class WordTooLong(RuntimeError):
    pass


def free_reduce(word: Sequence[int]) -> Word:
    out: list[int] = []
    for x in word:
        if x == 0:
            raise PresentationError("zero is not a letter")
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def inverse_word(word: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(word))


def cyclic_conjugates(word: Sequence[int]) -> list[Word]:
    w = tuple(word)
    return [w[i:] + w[:i] for i in range(len(w))]


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...]

    @property
    def rank(self) -> int:
        return len(self.generators)

    def insertion_pieces(self) -> list[Word]:
        """Cyclic conjugates of every relator and its inverse, deduplicated and sorted."""
        pieces = set()
        for r in self.relators:
            for w in (r, inverse_word(r)):
                for c in cyclic_conjugates(w):
                    pieces.add(c)
        return sorted(pieces, key=lambda w: (len(w), w))


def _check_word(word, rank: int, what: str) -> Word:
    if not isinstance(word, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in word):
        raise PresentationError(f"{what} {word!r} is not a list of integers")
    for x in word:
        if x == 0 or abs(x) > rank:
            raise PresentationError(f"{what} {word!r} has bad letter {x}")
    return tuple(word)


def parse_presentation(text: str) -> Presentation:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise PresentationError(f"invalid JSON: {e}") from None
    if not isinstance(data, dict):
        raise PresentationError("presentation must be a JSON object")
    gens = data.get("generators")
    rels = data.get("relators", [])
    if not isinstance(gens, list) or not gens or not all(isinstance(g, str) for g in gens):
        raise PresentationError("generators must be a nonempty list of names")
    if not isinstance(rels, list):
        raise PresentationError("relators must be a list")
    relators = []
    for r in rels:
        w = free_reduce(_check_word(r, len(gens), "relator"))
        if not w:
            raise PresentationError(f"relator {r} reduces to the empty word")
        relators.append(w)
    return Presentation(tuple(gens), tuple(relators))


@dataclass(frozen=True)
class AutGeneratorSet:
    """``u[i][j]`` is the image of ``x_j`` under ``psi_i``; ``v[i][j]`` under ``psi_i^-1``."""

    u: tuple[tuple[Word, ...], ...]
    v: tuple[tuple[Word, ...], ...]

    @property
    def count(self) -> int:
        return len(self.u)

    def images(self, letter: int) -> tuple[Word, ...]:
        return self.u[letter - 1] if letter > 0 else self.v[-letter - 1]


def parse_aut_generators(text: str, P: Presentation) -> AutGeneratorSet:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise PresentationError(f"invalid JSON: {e}") from None
    if not isinstance(data, dict) or "u" not in data or "v" not in data:
        raise PresentationError("automorphism generator file needs 'u' and 'v'")
    u, v = data["u"], data["v"]
    if not isinstance(u, list) or not isinstance(v, list) or len(u) != len(v) or not u:
        raise PresentationError("'u' and 'v' must be nonempty lists of equal length")
    sides = []
    for side in (u, v):
        rows = []
        for row in side:
            if not isinstance(row, list) or len(row) != P.rank:
                raise PresentationError(f"each automorphism needs {P.rank} generator images")
            rows.append(tuple(free_reduce(_check_word(w, P.rank, "image")) for w in row))
        sides.append(tuple(rows))
    return AutGeneratorSet(sides[0], sides[1])


def substitute(word: Sequence[int], images: Sequence[Word], cap: int = DEFAULT_WORD_CAP) -> Word:
    """Replace each ``x_j`` by ``images[j-1]`` (and ``x_j^-1`` by its inverse), then reduce."""
    out: list[int] = []
    for x in word:
        piece = images[x - 1] if x > 0 else inverse_word(images[-x - 1])
        for y in piece:
            if out and out[-1] == -y:
                out.pop()
            else:
                out.append(y)
        if len(out) > cap:
            raise WordTooLong(f"intermediate word longer than {cap}")
    return tuple(out)


def apply_aut_word(P: Presentation, A: AutGeneratorSet, psi: Sequence[int], j: int,
                   cap: int = DEFAULT_WORD_CAP) -> Word:
    """Image of ``x_j`` (1-based) under ``psi``, freely reduced."""
    w: Word = (j,)
    for letter in psi:
        if letter == 0 or abs(letter) > A.count:
            raise PresentationError(f"bad automorphism letter {letter}")
        w = substitute(w, A.images(letter), cap)
    return w


class Answer(Enum):
    YES = "yes"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class WordProblemResult:
    answer: Answer
    derivation: Optional[tuple[Word, ...]] = None  # chain of words ending in ()
    states: int = 0

    @property
    def yes(self) -> bool:
        return self.answer is Answer.YES


def neighbours(word: Word, pieces: Sequence[Word], max_len: int) -> Iterator[Word]:
    """Words reachable by inserting one piece anywhere and freely reducing."""
    for pos in range(len(word) + 1):
        left, right = word[:pos], word[pos:]
        for p in pieces:
            w = free_reduce(left + p + right)
            if len(w) <= max_len:
                yield w


def word_problem_bfs(P: Presentation, w: Sequence[int], max_len: int,
                     max_states: int = DEFAULT_MAX_STATES) -> WordProblemResult:
    """Breadth-first rewriting of ``w`` towards the empty word.

    Sound (``YES`` only with a derivation) and incomplete by design.
    """
    start = free_reduce(w)
    if not start:
        return WordProblemResult(Answer.YES, ((),), 0)
    if len(start) > max_len:
        return WordProblemResult(Answer.UNKNOWN)
    pieces = P.insertion_pieces()
    parent: dict[Word, Optional[Word]] = {start: None}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for y in neighbours(x, pieces, max_len):
            if y in parent:
                continue
            if len(parent) >= max_states:
                return WordProblemResult(Answer.UNKNOWN, states=len(parent))
            parent[y] = x
            if not y:
                chain = [y]
                while parent[chain[-1]] is not None:
                    chain.append(parent[chain[-1]])
                return WordProblemResult(Answer.YES, tuple(reversed(chain)), len(parent))
            queue.append(y)
    return WordProblemResult(Answer.UNKNOWN, states=len(parent))


class TrivialWords:
    """All words derivable from the empty word within the budgets.

    One breadth-first sweep answers every later query.  The move set is
    symmetric (an insertion is undone by inserting a conjugate of the inverse
    piece), so membership means the word is trivial in the group.
    """

    def __init__(self, P: Presentation, max_len: int, max_states: int = DEFAULT_MAX_STATES):
        self.presentation = P
        self.max_len = max_len
        self.max_states = max_states
        pieces = P.insertion_pieces()
        parent: dict[Word, Optional[Word]] = {(): None}
        queue = deque([()])
        exhausted = False
        while queue and not exhausted:
            x = queue.popleft()
            for y in neighbours(x, pieces, max_len):
                if y in parent:
                    continue
                if len(parent) >= max_states:
                    exhausted = True
                    break
                parent[y] = x
                queue.append(y)
        self._parent = parent
        self.complete = not exhausted

    def __len__(self) -> int:
        return len(self._parent)

    def __contains__(self, word: Sequence[int]) -> bool:
        return free_reduce(word) in self._parent

    def certify(self, word: Sequence[int]) -> Optional[tuple[Word, ...]]:
        """A chain of words from ``word`` down to the empty word, or None."""
        w = free_reduce(word)
        if w not in self._parent:
            return None
        chain = [w]
        while self._parent[chain[-1]] is not None:
            chain.append(self._parent[chain[-1]])
        return tuple(chain)


def check_derivation(P: Presentation, chain: Sequence[Sequence[int]], max_len: int) -> bool:
    """Independently re-check a derivation chain ending in the empty word."""
    if not chain or tuple(chain[-1]) != ():
        return False
    pieces = P.insertion_pieces()
    for a, b in zip(chain, chain[1:]):
        a, b = tuple(a), tuple(b)
        bound = max(max_len, len(a), len(b))
        if b not in set(neighbours(a, pieces, bound)) and a not in set(neighbours(b, pieces, bound)):
            return False
    return True


def shortlex_words(m: int, max_len: int) -> Iterator[Word]:
    """Freely reduced words over ``+-1..+-m`` by length, letters ordered 1, -1, 2, -2, ..."""
    letters = [s * i for i in range(1, m + 1) for s in (1, -1)]
    layer: list[Word] = [()]
    for _ in range(max_len):
        nxt = []
        for w in layer:
            for x in letters:
                if w and w[-1] == -x:
                    continue
                nxt.append(w + (x,))
        yield from nxt
        layer = nxt


@dataclass(frozen=True)
class Emission:
    word: Word
    derivations: tuple[tuple[Word, ...], ...]  # one chain per generator x_j

    def to_json(self) -> dict:
        return {"word": list(self.word), "certified": True,
                "derivations": [[list(w) for w in chain] for chain in self.derivations]}


def check_aut_generators(P: Presentation, A: AutGeneratorSet, trivial: TrivialWords,
                         cap: int = DEFAULT_WORD_CAP) -> None:
    """Raise unless ``psi_i`` followed by ``psi_i^-1`` (and vice versa) fixes each ``x_j`` provably."""
    for i in range(1, A.count + 1):
        for j in range(1, P.rank + 1):
            for psi in ((i, -i), (-i, i)):
                w = apply_aut_word(P, A, psi, j, cap)
                if trivial.certify(w + (-j,)) is None:
                    raise PresentationError(
                        f"cannot certify psi{psi} fixes x{j} within the budget; u/v may not be inverse")


def enumerate_aut_relators(P: Presentation, A: AutGeneratorSet, max_len: int,
                           max_states: int = DEFAULT_MAX_STATES,
                           word_cap: int = DEFAULT_WORD_CAP,
                           trivial: Optional[TrivialWords] = None) -> Iterator[Emission]:
    """Yield every ``Psi`` of length ``1..max_len`` certified to act trivially.

    ``max_len`` bounds both the length of ``Psi`` and the words visited by
    the certifying search.
    """
    if max_len <= 0:
        return
    if trivial is None:
        trivial = TrivialWords(P, max_len, max_states)
    n = P.rank
    # images of every generator under the previous layer of Psi words
    layer: dict[Word, Optional[tuple[Word, ...]]] = {(): tuple((j,) for j in range(1, n + 1))}
    for psi in shortlex_words(A.count, max_len):
        prev = layer.get(psi[:-1])
        imgs: Optional[tuple[Word, ...]] = None
        if prev is not None:
            try:
                sub = A.images(psi[-1])
                imgs = tuple(substitute(w, sub, word_cap) for w in prev)
            except WordTooLong:
                imgs = None
        layer[psi] = imgs
        if imgs is None:
            continue
        chains = []
        for j, w in enumerate(imgs, start=1):
            c = trivial.certify(w + (-j,))
            if c is None:
                break
            chains.append(c)
        else:
            yield Emission(psi, tuple(chains))


def acts_trivially(model: FiniteGroup, A: AutGeneratorSet, psi: Sequence[int],
                   cap: int = DEFAULT_WORD_CAP) -> bool:
    """Evaluate ``Psi`` in a permutation model of G whose generators match ``x_1..x_n``."""
    n = len(model.generator_ids)
    P = Presentation(tuple(f"x{j}" for j in range(1, n + 1)), ())
    for j in range(1, n + 1):
        w = apply_aut_word(P, A, psi, j, cap)
        if model.evaluate_word(w) != model.generator_ids[j - 1]:
            return False
    return True
