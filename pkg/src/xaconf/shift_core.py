"""Transition matrices over the alphabet 1, 2, 3, ... and admissible words.

Matrices are infinite, so a matrix is a pure predicate ``entry(i, j)`` plus an
``alphabet_bound``: the largest letter any enumeration will materialize.
Positive words are plain tuples of ints; the empty tuple is the empty word.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Optional, Sequence

Word = tuple


class ShiftUndefined(ValueError):
    """The shift was applied to the empty word (the point xi0)."""


class Preimages(frozenset):
    """Set of predecessor letters.  ``truncated`` marks letters cut off by the bound."""

    truncated: bool = False

    def __new__(cls, letters=(), truncated=False):
        obj = super().__new__(cls, letters)
        obj.truncated = truncated
        return obj


@dataclass(frozen=True)
class TransitionMatrix:
    entry: Callable[[int, int], int]
    alphabet_bound: Optional[int] = None
    name: str = ""
    # Exact predecessor sets over the whole alphabet, when known.
    predecessors: Optional[Callable[[int], frozenset]] = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self.alphabet_bound is None:
            return
        if self.alphabet_bound < 1:
            raise ValueError("alphabet_bound must be a positive integer")
        letters = range(1, self.alphabet_bound + 1)
        for i in letters:
            if not any(self.entry(i, j) for j in letters):
                raise ValueError(f"matrix {self.name!r} has a zero row at letter {i} within the bound")

    def __call__(self, i: int, j: int) -> int:
        return 1 if self.entry(i, j) else 0

    def letters(self) -> range:
        return range(1, self._bound() + 1)

    def _bound(self) -> int:
        if self.alphabet_bound is None:
            raise ValueError(f"matrix {self.name!r} has no alphabet_bound; enumeration needs one")
        return self.alphabet_bound

    def successors(self, i: int) -> list:
        return [j for j in self.letters() if self.entry(i, j)]

    def with_bound(self, alphabet_bound: int) -> "TransitionMatrix":
        return TransitionMatrix(self.entry, alphabet_bound, self.name, self.predecessors)


def _renewal_entry(i: int, j: int) -> int:
    return 1 if i == 1 or i == j + 1 else 0


def _renewal_predecessors(j: int) -> frozenset:
    return frozenset((1, j + 1))


def renewal_matrix(alphabet_bound: int) -> TransitionMatrix:
    """The renewal shift: ``A(1, n) = A(n+1, n) = 1`` and zero elsewhere."""
    if alphabet_bound < 1:
        raise ValueError("alphabet_bound must be >= 1")
    return TransitionMatrix(_renewal_entry, alphabet_bound, "renewal", _renewal_predecessors)


def is_renewal(A: TransitionMatrix) -> bool:
    return A.name == "renewal" and A.entry is _renewal_entry


def matrix_from_edges(edges: Iterable[Sequence[int]], alphabet_bound: int, name: str = "custom") -> TransitionMatrix:
    """A matrix with ``entry(i, j) = 1`` exactly on the listed pairs."""
    if name == "renewal":
        return renewal_matrix(alphabet_bound)
    edge_set = frozenset((int(i), int(j)) for i, j in edges)
    preds: dict = {}
    for i, j in edge_set:
        preds.setdefault(j, set()).add(i)
    frozen = {j: frozenset(s) for j, s in preds.items()}

    def entry(i, j):
        return 1 if (i, j) in edge_set else 0

    def predecessors(j):
        return frozen.get(j, frozenset())

    return TransitionMatrix(entry, alphabet_bound, name, predecessors)


def matrix_from_json(data: dict) -> TransitionMatrix:
    name = data.get("name", "custom")
    bound = int(data["alphabet_bound"])
    if name == "renewal":
        return renewal_matrix(bound)
    return matrix_from_edges(data["edges"], bound, name)


def load_matrix(path) -> TransitionMatrix:
    with open(path) as fh:
        return matrix_from_json(json.load(fh))


def is_admissible(word: Sequence[int], A: TransitionMatrix) -> bool:
    return all(A.entry(a, b) for a, b in zip(word, word[1:]))


def shift_word(word: Sequence[int]) -> Word:
    if len(word) == 0:
        raise ShiftUndefined("shift undefined at the empty word (xi0 is outside the shift domain)")
    return tuple(word[1:])


def preimage_letters(x0: int, A: TransitionMatrix) -> Preimages:
    """Letters ``a <= alphabet_bound`` with ``A(a, x0) = 1``."""
    bound = A._bound()
    if A.predecessors is not None:
        full = A.predecessors(x0)
        kept = [a for a in full if a <= bound]
        return Preimages(kept, truncated=len(kept) < len(full))
    return Preimages(a for a in A.letters() if A.entry(a, x0))


def _backward_layers(A: TransitionMatrix, n: int, terminal: int) -> list:
    # layers[k]: letters that start some admissible word of length k+1 ending at terminal
    layers = [frozenset((terminal,))]
    for _ in range(n - 1):
        nxt = set()
        for b in layers[-1]:
            nxt.update(preimage_letters(b, A))
        layers.append(frozenset(nxt))
    return layers


def iter_stems(A: TransitionMatrix, n: int, terminal: int) -> Iterator[Word]:
    """Admissible words of length ``n`` ending in ``terminal``, in lexicographic order."""
    if n < 1:
        raise ValueError("stem length must be >= 1")
    if terminal > A._bound():
        raise ValueError("terminal letter exceeds alphabet_bound")
    layers = _backward_layers(A, n, terminal)
    rows = {}

    def successors(a):
        if a not in rows:
            rows[a] = A.successors(a)
        return rows[a]

    prefix: list = []

    def extend(remaining, allowed):
        # remaining letters still to place; allowed is the letter set for the next slot
        if remaining == 0:
            yield tuple(prefix)
            return
        for a in allowed:
            prefix.append(a)
            if remaining == 1:
                yield tuple(prefix)
            else:
                layer = layers[remaining - 2]
                yield from extend(remaining - 1, [b for b in successors(a) if b in layer])
            prefix.pop()

    yield from extend(n, sorted(layers[n - 1]))


def enumerate_stems(A: TransitionMatrix, n: int, terminal: int) -> list:
    return list(iter_stems(A, n, terminal))


def count_stems(A: TransitionMatrix, n: int, terminal: int) -> int:
    """Number of admissible words of length ``n`` ending in ``terminal`` (no listing)."""
    counts = {terminal: 1}
    for _ in range(n - 1):
        nxt: dict = {}
        for b, c in counts.items():
            for a in preimage_letters(b, A):
                nxt[a] = nxt.get(a, 0) + c
        counts = nxt
    return sum(counts.values())


def word_str(word: Sequence[int]) -> str:
    return ".".join(str(a) for a in word)


def parse_word(text: str) -> Word:
    text = text.strip()
    if not text:
        return ()
    return tuple(int(t) for t in text.split("."))
