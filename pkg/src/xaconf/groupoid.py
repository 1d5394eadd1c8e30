"""Finite model of the Renault-Deaconu groupoid of the shift on X_A.

Points are either atoms ``stem . xi0`` of Y_A (written by their stem) or
eventually periodic points of Sigma_A.  Elements are triples ``(x, k, y)``
with ``sigma^n(x) = sigma^m(y)`` and ``k = n - m``; the witnesses ``n`` and
``m`` are carried along but are not part of an element's identity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Union

from . import reals
from .shift_core import ShiftUndefined, parse_word, word_str


@dataclass(frozen=True, order=True)
class YPoint:
    """The atom ``stem . xi0``; the empty stem is xi0 itself."""

    stem: tuple = ()

    def __str__(self):
        return word_str(self.stem)


def _primitive(period: tuple) -> tuple:
    n = len(period)
    for d in range(1, n + 1):
        if n % d == 0 and period[:d] * (n // d) == period:
            return period[:d]
    return period


@dataclass(frozen=True, order=True)
class SigmaPoint:
    """Eventually periodic point ``preperiod period period ...`` of Sigma_A, kept canonical."""

    preperiod: tuple
    period: tuple

    def __post_init__(self):
        if not self.period:
            raise ValueError("period must be non-empty")
        pre, per = tuple(self.preperiod), _primitive(tuple(self.period))
        while pre and pre[-1] == per[-1]:
            pre, per = pre[:-1], (per[-1],) + per[:-1]
        object.__setattr__(self, "preperiod", pre)
        object.__setattr__(self, "period", per)

    def __str__(self):
        return f"{word_str(self.preperiod)}|{word_str(self.period)}"

    def prefix(self, n: int) -> tuple:
        out = list(self.preperiod[:n])
        i = 0
        while len(out) < n:
            out.append(self.period[i % len(self.period)])
            i += 1
        return tuple(out)


Point = Union[YPoint, SigmaPoint]

XI0 = YPoint(())


def parse_point(text: str) -> Point:
    if "|" in text:
        pre, per = text.split("|", 1)
        return SigmaPoint(parse_word(pre), parse_word(per))
    return YPoint(parse_word(text))


def iterates_defined(p: Point) -> float:
    """How many times the shift can be applied to ``p``."""
    if isinstance(p, YPoint):
        return len(p.stem)
    return math.inf


def first_letter(p: Point) -> int:
    if isinstance(p, YPoint):
        if not p.stem:
            raise ShiftUndefined("xi0 has no first letter")
        return p.stem[0]
    return p.preperiod[0] if p.preperiod else p.period[0]


def shift_point(p: Point) -> Point:
    if isinstance(p, YPoint):
        if not p.stem:
            raise ShiftUndefined("xi0 is excluded from the shift domain")
        return YPoint(p.stem[1:])
    if p.preperiod:
        return SigmaPoint(p.preperiod[1:], p.period)
    return SigmaPoint((), p.period[1:] + p.period[:1])


def iterate(p: Point, n: int) -> Point:
    if n > iterates_defined(p):
        raise ShiftUndefined(f"sigma^{n} undefined at {p}")
    if isinstance(p, YPoint):
        return YPoint(p.stem[n:])
    for _ in range(n):
        p = shift_point(p)
    return p


def find_witness(x: Point, k: int, y: Point) -> Optional[tuple]:
    """Smallest ``(n, m)`` with ``n - m = k`` and ``sigma^n(x) = sigma^m(y)``, or None."""
    limit = 0
    for p in (x, y):
        if isinstance(p, YPoint):
            limit += len(p.stem)
        else:
            limit += len(p.preperiod) + len(p.period)
    if isinstance(x, SigmaPoint) and isinstance(y, SigmaPoint):
        limit += len(x.period) * len(y.period)
    limit += abs(k)
    for n in range(max(k, 0), limit + 1):
        m = n - k
        if n <= iterates_defined(x) and m <= iterates_defined(y) and iterate(x, n) == iterate(y, m):
            return n, m
    return None


class NotComposable(ValueError):
    pass


@dataclass(frozen=True)
class GroupoidElement:
    x: Point
    k: int
    y: Point
    n: int = field(compare=False, default=0)
    m: int = field(compare=False, default=0)

    def __post_init__(self):
        if self.n - self.m != self.k:
            raise ValueError(f"witnesses n={self.n}, m={self.m} do not give k={self.k}")
        if self.n > iterates_defined(self.x) or self.m > iterates_defined(self.y):
            raise ShiftUndefined(f"iterates undefined for ({self.x}, {self.k}, {self.y})")
        if iterate(self.x, self.n) != iterate(self.y, self.m):
            raise ValueError(f"sigma^{self.n}({self.x}) != sigma^{self.m}({self.y})")

    def __str__(self):
        return f"({self.x}, {self.k}, {self.y})"


def element(x: Point, y: Point, n: int, m: int) -> GroupoidElement:
    return GroupoidElement(x, n - m, y, n, m)


def make_element(x: Point, k: int, y: Point) -> GroupoidElement:
    w = find_witness(x, k, y)
    if w is None:
        raise ValueError(f"({x}, {k}, {y}) is not in the groupoid")
    return GroupoidElement(x, k, y, *w)


def unit(x: Point) -> GroupoidElement:
    return GroupoidElement(x, 0, x, 0, 0)


def range_unit(g: GroupoidElement) -> GroupoidElement:
    return unit(g.x)


def source_unit(g: GroupoidElement) -> GroupoidElement:
    return unit(g.y)


def inverse(g: GroupoidElement) -> GroupoidElement:
    return GroupoidElement(g.y, -g.k, g.x, g.m, g.n)


def compose(g1: GroupoidElement, g2: GroupoidElement) -> GroupoidElement:
    if g1.y != g2.x:
        raise NotComposable(f"not in G^(2): {g1} and {g2}")
    return make_element(g1.x, g1.k + g2.k, g2.y)


def cocycle(F: Callable[[Point], reals.Real], g: GroupoidElement) -> reals.Real:
    """``sum_{j<n} F(sigma^j x) - sum_{j<m} F(sigma^j y)``."""
    left = reals.total(F(iterate(g.x, j)) for j in range(g.n))
    right = reals.total(F(iterate(g.y, j)) for j in range(g.m))
    return reals.sub(left, right)


class BisectionError(ValueError):
    def __init__(self, message, collisions=()):
        super().__init__(message)
        self.collisions = tuple(collisions)


@dataclass(frozen=True)
class Bisection:
    n: int
    m: int
    V1: frozenset
    V2: frozenset
    elements: frozenset

    def __iter__(self):
        return iter(sorted(self.elements, key=lambda g: (str(g.x), str(g.y))))

    def __len__(self):
        return len(self.elements)


def build_bisection(n: int, m: int, V1: Iterable[Point], V2: Iterable[Point]) -> Bisection:
    """The basic set ``W(n, m, V1, V2)``; raises if range or source fails to be injective."""
    V1, V2 = frozenset(V1), frozenset(V2)
    for p in V1:
        if iterates_defined(p) < n:
            raise ShiftUndefined(f"{p} has fewer than {n} iterates")
    for p in V2:
        if iterates_defined(p) < m:
            raise ShiftUndefined(f"{p} has fewer than {m} iterates")
    targets2: dict = {}
    for y in V2:
        targets2.setdefault(iterate(y, m), []).append(y)
    elements = []
    for x in V1:
        for y in targets2.get(iterate(x, n), ()):
            elements.append(GroupoidElement(x, n - m, y, n, m))
    seen_r: dict = {}
    seen_s: dict = {}
    collisions = []
    for g in elements:
        if g.x in seen_r:
            collisions.append((seen_r[g.x], g))
        if g.y in seen_s:
            collisions.append((seen_s[g.y], g))
        seen_r.setdefault(g.x, g)
        seen_s.setdefault(g.y, g)
    if collisions:
        a, b = collisions[0]
        raise BisectionError(f"not a bisection: {a} and {b} share a range or source", collisions)
    return Bisection(n, m, V1, V2, frozenset(elements))


def bisection_to_json(B: Bisection) -> list:
    return [{"x": str(g.x), "k": g.k, "y": str(g.y)} for g in B]
