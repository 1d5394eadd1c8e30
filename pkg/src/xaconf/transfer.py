"""Potentials, Birkhoff sums and the Ruelle transformation on finitely supported functions."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Optional, Sequence, Union

import mpmath

from . import reals
from .groupoid import Point, SigmaPoint, YPoint, first_letter, iterates_defined, shift_point
from .reals import Log, Real

KINDS = ("first_coordinate", "constant", "per_length")


class DepthError(ValueError):
    """A computation needs atoms beyond the materialized depth."""

    def __init__(self, message, required_depth=None):
        super().__init__(message)
        self.required_depth = required_depth


@dataclass(frozen=True)
class Potential:
    """``F = beta * f``.

    ``values`` maps letters to ``f`` (first_coordinate) or stem lengths to
    ``f`` (per_length); ``default`` is the value for unlisted letters and,
    for the constant kind, the constant itself.
    """

    kind: str
    beta: Real
    values: Mapping = field(default_factory=dict)
    default: Optional[Real] = None
    lower_bound_M: Optional[Fraction] = None
    sup_norm: Optional[Fraction] = None
    _table: dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown potential kind {self.kind!r}")
        if reals.compare(self.beta, 0) <= 0:
            raise ValueError("beta must be positive")
        object.__setattr__(self, "values", dict(self.values))
        if self.kind == "constant" and self.default is None:
            raise ValueError("constant potential needs a value")
        if self.kind in ("first_coordinate", "constant"):
            stored = list(self.values.values()) + ([self.default] if self.default is not None else [])
            if not stored:
                raise ValueError("first_coordinate potential has no values")
            for v in stored:
                if not isinstance(v, Fraction):
                    raise ValueError("first-coordinate values must be rational")
            lo = self.lower_bound_M if self.lower_bound_M is not None else min(stored)
            hi = self.sup_norm if self.sup_norm is not None else max(stored)
            if lo <= 0:
                raise ValueError("the lower bound M must be positive")
            bad = [v for v in stored if not lo <= v <= hi]
            if bad:
                raise ValueError(f"values {bad} violate the declared bounds [{lo}, {hi}]")
            object.__setattr__(self, "lower_bound_M", Fraction(lo))
            object.__setattr__(self, "sup_norm", Fraction(hi))

    @property
    def is_constant(self) -> bool:
        if self.kind == "constant":
            return True
        if self.kind == "first_coordinate" and self.default is not None:
            return all(v == self.default for v in self.values.values())
        return False

    @property
    def constant_value(self) -> Fraction:
        if not self.is_constant:
            raise ValueError("potential is not constant")
        return self.default

    def with_beta(self, beta) -> "Potential":
        return Potential(self.kind, reals.real(beta), self.values, self.default, self.lower_bound_M, self.sup_norm)

    def letter_value(self, a: int) -> Real:
        if self.kind == "constant":
            return self.default
        v = self.values.get(a, self.default)
        if v is None:
            raise KeyError(f"potential has no value for letter {a}")
        return v

    def f(self, p: Union[Point, Sequence[int]]) -> Real:
        """Unscaled potential at a point of the shift domain."""
        if not isinstance(p, (YPoint, SigmaPoint)):
            p = YPoint(tuple(p))
        if iterates_defined(p) < 1:
            raise ValueError("the potential is not defined at xi0")
        if self.kind == "per_length":
            if not isinstance(p, YPoint):
                raise ValueError("per_length potentials live on Y_A atoms only")
            n = len(p.stem)
            if n not in self.values:
                raise KeyError(f"per_length potential has no value for length {n}")
            return self.values[n]
        return self.letter_value(first_letter(p))

    def F(self, p) -> Real:
        return reals.mul(self.beta, self.f(p))

    def weight(self, v: Real) -> Real:
        """``exp(-beta * v)``, exact when possible; memoized per value and precision."""
        key = (v, None if _exact_weight(self.beta, v) else mpmath.mp.dps)
        w = self._table.get(key)
        if w is None:
            w = reals.exp_neg(reals.mul(self.beta, v))
            self._table[key] = w
        return w

    def boltzmann(self, p) -> Real:
        """``exp(-F(p))``."""
        return self.weight(self.f(p))

    def inverse_boltzmann(self, p) -> Real:
        """``exp(F(p))``."""
        return reals.div(Fraction(1), self.boltzmann(p))

    def to_json(self, digits: int = reals.DEFAULT_PRECISION) -> dict:
        if self.kind == "constant":
            values = {"value": reals.format_real(self.default, digits)}
        else:
            values = {str(k): reals.format_real(v, digits) for k, v in sorted(self.values.items())}
            if self.default is not None:
                values["default"] = reals.format_real(self.default, digits)
        out = {"kind": self.kind, "values": values, "beta": reals.format_real(self.beta, digits)}
        if self.lower_bound_M is not None:
            out["lower_bound_M"] = str(self.lower_bound_M)
        if self.sup_norm is not None:
            out["sup_norm"] = str(self.sup_norm)
        return out


def _exact_weight(beta, v) -> bool:
    return reals.is_exact(beta) and reals.is_exact(v)


def constant_potential(c, beta) -> Potential:
    c = Fraction(c)
    return Potential("constant", reals.real(beta), {}, c, c, c)


def first_coordinate_potential(values: Mapping, beta, default=None, lower_bound_M=None, sup_norm=None) -> Potential:
    vals = {int(k): Fraction(v) for k, v in values.items()}
    return Potential(
        "first_coordinate",
        reals.real(beta),
        vals,
        None if default is None else Fraction(default),
        None if lower_bound_M is None else Fraction(lower_bound_M),
        None if sup_norm is None else Fraction(sup_norm),
    )


def per_length_potential(table: Mapping, beta=1) -> Potential:
    return Potential("per_length", reals.real(beta), {int(k): reals.real(v) for k, v in table.items()})


def potential_from_json(data: Mapping) -> Potential:
    kind = data["kind"]
    values = dict(data.get("values", {}))
    beta = reals.parse_real(str(data.get("beta", "1")))
    M = data.get("lower_bound_M")
    sup = data.get("sup_norm")
    M = None if M is None else Fraction(str(M))
    sup = None if sup is None else Fraction(str(sup))
    if kind == "constant":
        raw = values.get("value", values.get("c"))
        if raw is None:
            raise ValueError("constant potential file needs values.value")
        c = Fraction(str(raw))
        return Potential("constant", beta, {}, c, M if M is not None else c, sup if sup is not None else c)
    if kind == "first_coordinate":
        default = values.pop("default", None)
        return first_coordinate_potential(
            {k: Fraction(str(v)) for k, v in values.items()},
            beta,
            None if default is None else Fraction(str(default)),
            M,
            sup,
        )
    if kind == "per_length":
        return Potential("per_length", beta, {int(k): reals.parse_real(str(v)) for k, v in values.items()})
    raise ValueError(f"unknown potential kind {kind!r}")


def load_potential(path) -> Potential:
    with open(path) as fh:
        return potential_from_json(json.load(fh))


def birkhoff_sum(g: Union[Potential, Callable], word: Sequence[int], n: int) -> Real:
    """``sum_{i<n} g(sigma^i word)``."""
    if n > len(word):
        raise ValueError(f"Birkhoff sum of order {n} needs a word of length >= {n}")
    if n < 0:
        raise ValueError("negative Birkhoff order")
    word = tuple(word)
    fn = g.f if isinstance(g, Potential) else g
    return reals.total(fn(word[i:]) for i in range(n))


class FinSuppFunction(dict):
    """Finitely supported function ``Point -> value``; absent points are zero."""

    def __add__(self, other):
        out = FinSuppFunction(self)
        for p, v in other.items():
            out[p] = reals.add(out.get(p, Fraction(0)), v)
        return out

    def scale(self, a) -> "FinSuppFunction":
        return FinSuppFunction({p: reals.mul(a, v) for p, v in self.items()})

    def nonzero(self) -> "FinSuppFunction":
        return FinSuppFunction({p: v for p, v in self.items() if not reals.is_zero(v)})


def indicator(points) -> FinSuppFunction:
    return FinSuppFunction({p: Fraction(1) for p in points})


def ruelle_apply(phi: Mapping, P: Potential) -> FinSuppFunction:
    """``(L phi)(x) = sum_{sigma(y) = x} exp(-beta F(y)) phi(y)``."""
    out = FinSuppFunction()
    for y, v in phi.items():
        if iterates_defined(y) < 1:
            raise ValueError(f"{y} is outside the shift domain; test functions live on U")
        if reals.is_zero(v):
            continue
        x = shift_point(y)
        out[x] = reals.add(out.get(x, Fraction(0)), reals.mul(P.boltzmann(y), v))
    return out


def _atom_mass(mu, p: Point) -> Real:
    if isinstance(p, SigmaPoint):
        return Fraction(0)
    if len(p.stem) > mu.depth:
        raise DepthError(f"atom {p} is beyond depth {mu.depth}; solve to depth >= {len(p.stem)}", len(p.stem))
    return mu.atom(p.stem)


def integrate(phi: Mapping, mu) -> Real:
    return reals.total(reals.mul(_atom_mass(mu, p), v) for p, v in phi.items())


def eigenmeasure_residual(mu, P: Potential, phi: Mapping) -> Real:
    """``| int L(phi) dmu - int phi dmu |`` for an atomic measure on Y_A."""
    lhs = integrate(ruelle_apply(phi, P), mu)
    rhs = integrate(phi, mu)
    return reals.absval(reals.sub(lhs, rhs))
