"""Finite windows of configurations in {0,1}^F, F the free group on 1, 2, 3, ...

A configuration is stored as the finite set of filled words whose reduced
length is at most ``window_depth``.  Everything outside the window is
unknown, and every check here only looks at words inside it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .shift_core import TransitionMatrix, enumerate_stems, is_admissible, is_renewal, preimage_letters


class ConfigurationError(ValueError):
    pass


class TranslationError(ConfigurationError):
    pass


@dataclass(frozen=True, order=True)
class FreeWord:
    """Reduced word of signed letters ``(letter, +1)`` / ``(letter, -1)``."""

    syllables: tuple = ()

    def __post_init__(self):
        s = self.syllables
        for (a, e), (b, f) in zip(s, s[1:]):
            if a == b and e == -f:
                raise ValueError(f"word is not reduced: {s}")

    @classmethod
    def positive(cls, word: Sequence[int]) -> "FreeWord":
        return cls(tuple((a, 1) for a in word))

    @classmethod
    def parse(cls, text: str) -> "FreeWord":
        text = text.strip()
        if not text:
            return IDENTITY
        raw = []
        for tok in text.split("."):
            if tok.endswith("^-1"):
                raw.append((int(tok[:-3]), -1))
            else:
                raw.append((int(tok), 1))
        return reduce(raw)

    def __str__(self):
        return ".".join(f"{a}" if e > 0 else f"{a}^-1" for a, e in self.syllables)

    def __len__(self):
        return len(self.syllables)

    def __mul__(self, other: "FreeWord") -> "FreeWord":
        left = list(self.syllables)
        right = other.syllables
        i = 0
        while left and i < len(right) and left[-1][0] == right[i][0] and left[-1][1] == -right[i][1]:
            left.pop()
            i += 1
        return FreeWord(tuple(left) + right[i:])

    def __invert__(self) -> "FreeWord":
        return FreeWord(tuple((a, -e) for a, e in reversed(self.syllables)))

    def is_positive(self) -> bool:
        return all(e > 0 for _, e in self.syllables)

    def letters(self) -> tuple:
        return tuple(a for a, _ in self.syllables)

    def prefixes(self):
        for k in range(len(self.syllables)):
            yield FreeWord(self.syllables[:k])


IDENTITY = FreeWord(())


def reduce(syllables: Iterable) -> FreeWord:
    """Free reduction of an arbitrary signed-letter sequence."""
    stack: list = []
    for a, e in syllables:
        if e not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {e}")
        if stack and stack[-1][0] == a and stack[-1][1] == -e:
            stack.pop()
        else:
            stack.append((a, e))
    return FreeWord(tuple(stack))


def _positive_neighbours(g: FreeWord) -> set:
    # g ending in y^-1 has g.y = its parent, which convexity keeps filled
    ys = set()
    if g.syllables and g.syllables[-1][1] == -1:
        ys.add(g.syllables[-1][0])
    return ys


@dataclass(frozen=True)
class Configuration:
    filled: frozenset
    window_depth: int
    dropped: int = field(default=0, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "filled", frozenset(self.filled))
        if self.window_depth < 0:
            raise ConfigurationError("window_depth must be >= 0")
        if IDENTITY not in self.filled:
            raise ConfigurationError("the identity must be filled")
        for g in self.filled:
            if len(g) > self.window_depth:
                raise ConfigurationError(f"{g} lies outside the window of depth {self.window_depth}")
            for p in g.prefixes():
                if p not in self.filled:
                    raise ConfigurationError(f"not convex: {g} is filled but its prefix {p} is not")

    def __contains__(self, g: FreeWord) -> bool:
        return g in self.filled

    def restrict(self, depth: int) -> "Configuration":
        return Configuration(frozenset(g for g in self.filled if len(g) <= depth), depth)

    def positive_children(self, g: FreeWord) -> set:
        """Letters ``y`` such that the reduced word ``g y`` is filled."""
        ys = _positive_neighbours(g)
        for h in self._children_index().get(g, ()):
            a, e = h.syllables[-1]
            if e > 0:
                ys.add(a)
        return ys

    def _children_index(self) -> dict:
        idx = self.__dict__.get("_idx")
        if idx is None:
            idx = {}
            for h in self.filled:
                if h.syllables:
                    idx.setdefault(FreeWord(h.syllables[:-1]), []).append(h)
            object.__setattr__(self, "_idx", idx)
        return idx


@dataclass(frozen=True)
class StemResult:
    stem: tuple
    is_window_limited: bool


def stem(xi: Configuration) -> StemResult:
    positives = sorted((g for g in xi.filled if g.is_positive()), key=len)
    longest = positives[-1]
    for g in positives:
        if longest.syllables[: len(g)] != g.syllables:
            raise ConfigurationError(f"not a valid X_A configuration: {g} and {longest} are both filled")
    if len(positives) != len(longest) + 1:
        raise ConfigurationError("not a valid X_A configuration: positive part is not a single chain")
    return StemResult(longest.letters(), len(longest) == xi.window_depth)


def root(xi: Configuration, g: FreeWord, alphabet_bound: Optional[int] = None) -> frozenset:
    """Letters ``j`` with ``g j^-1`` filled."""
    if g not in xi.filled:
        raise ConfigurationError(f"root undefined: {g} is not filled")
    if len(g) >= xi.window_depth:
        raise ConfigurationError(f"root of {g} reaches past the window")
    out = set()
    if g.syllables and g.syllables[-1][1] == 1:
        out.add(g.syllables[-1][0])
    for h in xi._children_index().get(g, ()):
        a, e = h.syllables[-1]
        if e < 0:
            out.add(a)
    if alphabet_bound is not None:
        out = {j for j in out if j <= alphabet_bound}
    return frozenset(out)


@dataclass(frozen=True)
class Violation:
    clause: str
    witness: tuple

    def __str__(self):
        return f"({self.clause}) " + ", ".join(str(w) for w in self.witness)


@dataclass
class MembershipReport:
    ok: bool
    violations: list
    checked_bound: int
    window_depth: int
    note: str = "consistent within window"

    def __bool__(self):
        return self.ok


def omega_tau_membership(xi: Configuration, A: TransitionMatrix) -> MembershipReport:
    """Check the Omega_A^tau clauses on every word of the window.

    (a) e filled, (b) convexity, (c) at most one positive child,
    (d) if ``g`` and ``g y`` are filled then ``g x^-1`` is filled iff
    ``A(x, y) = 1``, for ``x`` up to the alphabet bound and as long as
    ``g x^-1`` lies inside the window.
    """
    violations = []
    bound = A._bound()
    if IDENTITY not in xi.filled:
        violations.append(Violation("a", (IDENTITY,)))
    for g in sorted(xi.filled):
        for p in g.prefixes():
            if p not in xi.filled:
                violations.append(Violation("b", (g, p)))
        ys = sorted(xi.positive_children(g))
        if len(ys) > 1:
            violations.append(Violation("c", (g, *ys)))
        for y in ys:
            for x in range(1, bound + 1):
                w = g * FreeWord(((x, -1),))
                if len(w) > xi.window_depth:
                    continue
                if (w in xi.filled) != bool(A.entry(x, y)):
                    violations.append(Violation("d", (g, y, x)))
    return MembershipReport(not violations, violations, bound, xi.window_depth)


def xi0_renewal(depth: int, A: TransitionMatrix) -> Configuration:
    """The unique configuration with empty stem for the renewal shift."""
    if not is_renewal(A):
        raise ConfigurationError("xi0 is only constructed for the renewal matrix")
    filled = {IDENTITY}
    for n in range(1, depth + 1):
        for w in enumerate_stems(A, n, 1):
            filled.add(~FreeWord.positive(w))
    return Configuration(frozenset(filled), depth)


def translate(h, xi: Configuration) -> Configuration:
    """``(h xi)_g = xi_{h^-1 g}``; the window shrinks by ``|h|``."""
    if not isinstance(h, FreeWord):
        h = FreeWord.positive(h)
    depth = xi.window_depth - len(h)
    if depth < 0:
        raise TranslationError(f"translation by {h} exceeds the window depth {xi.window_depth}")
    kept, dropped = set(), 0
    for g in xi.filled:
        w = h * g
        if len(w) <= depth:
            kept.add(w)
        else:
            dropped += 1
    if IDENTITY not in kept:
        raise TranslationError(f"translation by {h} leaves X_A (identity not filled)")
    return Configuration(frozenset(kept), depth, dropped)


def shift_config(xi: Configuration) -> Configuration:
    s = stem(xi).stem
    if not s:
        raise ConfigurationError("xi0 is excluded from the shift domain")
    return translate(FreeWord(((s[0], -1),)), xi)


def saturate(xi: Configuration, A: TransitionMatrix, depth: Optional[int] = None) -> Configuration:
    """Close the window under: ``g``, ``g y`` filled  =>  ``g x^-1`` filled when ``A(x, y) = 1``."""
    depth = xi.window_depth if depth is None else depth
    filled = set(xi.filled)
    children: dict = {}
    for h in filled:
        if h.syllables:
            children.setdefault(FreeWord(h.syllables[:-1]), set()).add(h)

    def pos_children(g):
        ys = _positive_neighbours(g)
        for h in children.get(g, ()):
            a, e = h.syllables[-1]
            if e > 0:
                ys.add(a)
        return ys

    queue = list(filled)
    while queue:
        g = queue.pop()
        for y in pos_children(g):
            for x in preimage_letters(y, A):
                w = g * FreeWord(((x, -1),))
                if len(w) <= depth and w not in filled:
                    filled.add(w)
                    children.setdefault(FreeWord(w.syllables[:-1]), set()).add(w)
                    queue.append(w)
    return Configuration(frozenset(filled), depth)


def embed_point(x: Sequence[int], A: TransitionMatrix, depth: int) -> Configuration:
    """Window of the image of a point of Sigma_A given by a prefix of length >= depth."""
    if len(x) < depth:
        raise ConfigurationError("prefix shorter than the window depth")
    if not is_admissible(x, A):
        raise ConfigurationError("prefix is not admissible")
    w = FreeWord.positive(tuple(x[:depth]))
    filled = set(w.prefixes()) | {w}
    return saturate(Configuration(frozenset(filled), depth), A, depth)


def is_bounded_renewal(xi: Configuration, A: TransitionMatrix) -> bool:
    """Bounded element test for the renewal shift: finite stem whose root is {1}.

    The columns of the renewal matrix accumulate only at (1, 0, 0, ...), so a
    stem is bounded exactly when its root equals {1}.
    """
    if not is_renewal(A):
        raise ConfigurationError("bounded-element detection is implemented for the renewal matrix only")
    st = stem(xi)
    if st.is_window_limited:
        return False
    return root(xi, FreeWord.positive(st.stem), A.alphabet_bound) == frozenset((1,))


def config_to_json(xi: Configuration) -> dict:
    return {
        "window_depth": xi.window_depth,
        "filled": sorted(str(g) for g in xi.filled),
    }


def config_from_json(data) -> Configuration:
    if isinstance(data, str):
        data = json.loads(data)
    return Configuration(frozenset(FreeWord.parse(s) for s in data["filled"]), int(data["window_depth"]))
