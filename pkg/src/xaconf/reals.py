"""Exact and high-precision real values.

Three kinds of value travel through the package:

* ``Fraction`` for exact rationals,
* ``Log`` for the exact natural logarithm of a positive rational,
* ``mpmath.mpf`` for everything else, evaluated at the working precision.

Arithmetic stays exact whenever the result is still representable by the
first two kinds (for instance ``exp(-log 3 * 2) == 1/9``) and silently
falls back to ``mpf`` otherwise.  Callers that care about the precision
wrap their work in ``mpmath.workdps(digits)``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Union

import mpmath

DEFAULT_PRECISION = 100


class Log:
    """The natural logarithm of a positive rational, kept symbolically."""

    __slots__ = ("arg",)

    def __init__(self, arg):
        arg = Fraction(arg)
        if arg <= 0:
            raise ValueError(f"log of non-positive value {arg}")
        self.arg = arg

    def __eq__(self, other):
        if isinstance(other, Log):
            return self.arg == other.arg
        if isinstance(other, (int, Fraction)):
            return self.arg == 1 and other == 0
        return NotImplemented

    def __hash__(self):
        return hash(("log", self.arg))

    def __repr__(self):
        return f"Log({self.arg})"

    def __str__(self):
        return f"log({self.arg})"

    def __neg__(self):
        return Log(1 / self.arg)

    def to_mpf(self):
        return mpmath.log(_frac_to_mpf(self.arg))


Real = Union[Fraction, Log, mpmath.mpf]


def _frac_to_mpf(x: Fraction):
    return mpmath.mpf(x.numerator) / x.denominator


def real(x) -> Real:
    """Coerce ints, strings of rationals and floats-as-mpf into a Real."""
    if isinstance(x, (Fraction, Log, mpmath.mpf)):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_real(x)
    if isinstance(x, float):
        return mpmath.mpf(x)
    raise TypeError(f"cannot interpret {x!r} as a real value")


def is_exact(x) -> bool:
    return isinstance(x, (int, Fraction, Log))


def as_mpf(x):
    if isinstance(x, mpmath.mpf):
        return x
    if isinstance(x, int):
        return mpmath.mpf(x)
    if isinstance(x, Fraction):
        return _frac_to_mpf(x)
    if isinstance(x, Log):
        return x.to_mpf()
    return mpmath.mpf(x)


def is_zero(x) -> bool:
    if isinstance(x, Log):
        return x.arg == 1
    return x == 0


def neg(x: Real) -> Real:
    return -x


def add(a: Real, b: Real) -> Real:
    if isinstance(a, int):
        a = Fraction(a)
    if isinstance(b, int):
        b = Fraction(b)
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return a + b
    if isinstance(a, Log) and isinstance(b, Log):
        return Log(a.arg * b.arg)
    if isinstance(a, Log) and isinstance(b, Fraction) and b == 0:
        return a
    if isinstance(b, Log) and isinstance(a, Fraction) and a == 0:
        return b
    return as_mpf(a) + as_mpf(b)


def sub(a: Real, b: Real) -> Real:
    return add(a, neg(b))


def total(values: Iterable[Real]) -> Real:
    acc: Real = Fraction(0)
    for v in values:
        acc = add(acc, v)
    return acc


def mul(a: Real, b: Real) -> Real:
    if isinstance(a, int):
        a = Fraction(a)
    if isinstance(b, int):
        b = Fraction(b)
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return a * b
    if isinstance(a, Log) and isinstance(b, Fraction):
        a, b = b, a
    if isinstance(a, Fraction) and isinstance(b, Log) and a.denominator == 1:
        # k * log q == log(q**k)
        if a == 0:
            return Fraction(0)
        return Log(b.arg ** a.numerator)
    return as_mpf(a) * as_mpf(b)


def div(a: Real, b: Real) -> Real:
    if is_zero(b):
        raise ZeroDivisionError("division by zero real")
    if isinstance(a, (int, Fraction)) and isinstance(b, (int, Fraction)):
        return Fraction(a) / Fraction(b)
    return as_mpf(a) / as_mpf(b)


def exp_neg(x: Real) -> Real:
    """``exp(-x)``; exact when ``x`` is ``0`` or a ``Log``."""
    if isinstance(x, Log):
        return 1 / x.arg
    if isinstance(x, (int, Fraction)) and x == 0:
        return Fraction(1)
    return mpmath.exp(-as_mpf(x))


def exp_pos(x: Real) -> Real:
    """``exp(x)``; exact when ``x`` is ``0`` or a ``Log``."""
    if isinstance(x, Log):
        return x.arg
    if isinstance(x, (int, Fraction)) and x == 0:
        return Fraction(1)
    return mpmath.exp(as_mpf(x))


def absval(x: Real) -> Real:
    if isinstance(x, Log):
        return x if x.arg >= 1 else -x
    return abs(x)


def compare(a: Real, b: Real) -> int:
    """Sign of ``a - b``.  Exact for rationals and logarithms."""
    if isinstance(a, (int, Fraction)) and isinstance(b, (int, Fraction)):
        d = Fraction(a) - Fraction(b)
        return (d > 0) - (d < 0)
    if isinstance(a, Log) and isinstance(b, Log):
        return (a.arg > b.arg) - (a.arg < b.arg)
    d = as_mpf(a) - as_mpf(b)
    return (d > 0) - (d < 0)


def scaled_vs_log2(beta: Real, v: Fraction) -> int:
    """Sign of ``beta * v - log 2`` for rational ``v``.

    With ``beta = log b`` and ``v = p/q`` this is the sign of ``b**p - 2**q``,
    decided in integers.  A rational ``beta * v`` is never equal to ``log 2``,
    so the high-precision comparison is always decisive in that case.
    """
    v = Fraction(v)
    if isinstance(beta, Log):
        lhs = beta.arg ** v.numerator
        rhs = Fraction(2) ** v.denominator
        return (lhs > rhs) - (lhs < rhs)
    if isinstance(beta, (int, Fraction)):
        d = _frac_to_mpf(Fraction(beta) * v) - mpmath.log(2)
        return (d > 0) - (d < 0)
    d = as_mpf(beta) * _frac_to_mpf(v) - mpmath.log(2)
    return (d > 0) - (d < 0)


def parse_real(text: str) -> Real:
    """Parse ``"p/q"``, ``"0.25"``, ``"log(p/q)"``, ``"inf"`` or ``"<digits>@<prec>"``."""
    s = text.strip()
    if s in ("inf", "+inf"):
        return mpmath.inf
    if s.startswith("log(") and s.endswith(")"):
        return Log(Fraction(s[4:-1].strip()))
    if "@" in s:
        digits, prec = s.rsplit("@", 1)
        with mpmath.workdps(int(prec)):
            return mpmath.mpf(digits)
    try:
        return Fraction(s)
    except ValueError:
        raise ValueError(f"not a real value string: {text!r}") from None


def format_real(x: Real, digits: int = DEFAULT_PRECISION) -> str:
    """Inverse of :func:`parse_real`; decimals carry their precision suffix."""
    if isinstance(x, int):
        x = Fraction(x)
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, Log):
        return str(x)
    if mpmath.isinf(x):
        return "inf"
    with mpmath.workdps(digits):
        return f"{mpmath.nstr(x, digits)}@{digits}"
