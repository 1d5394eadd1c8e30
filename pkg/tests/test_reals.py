from fractions import Fraction

import mpmath
import pytest

from xaconf import reals
from xaconf.reals import Log


def test_log_arithmetic_stays_exact():
    assert reals.add(Log(2), Log(3)) == Log(6)
    assert reals.mul(3, Log(2)) == Log(8)
    assert reals.exp_neg(reals.mul(2, Log(3))) == Fraction(1, 9)
    assert reals.exp_pos(Log(Fraction(5, 2))) == Fraction(5, 2)
    assert -Log(4) == Log(Fraction(1, 4))


def test_non_representable_falls_back_to_mpf():
    with mpmath.workdps(50):
        v = reals.mul(Fraction(1, 2), Log(2))
        assert isinstance(v, mpmath.mpf)
        assert abs(v - mpmath.log(2) / 2) < mpmath.mpf(10) ** -45


@pytest.mark.parametrize(
    "beta, v, sign",
    [(Log(2), 1, 0), (Log(3), 1, 1), (Log(2), Fraction(1, 2), -1), (Log(4), Fraction(1, 2), 0), (Fraction(2, 5), 2, 1), (Fraction(1, 5), 3, -1)],
)
def test_scaled_vs_log2(beta, v, sign):
    assert reals.scaled_vs_log2(beta, Fraction(v)) == sign


@pytest.mark.parametrize("text", ["1/2", "-3/7", "0", "log(5/2)", "inf"])
def test_round_trip_exact(text):
    assert reals.format_real(reals.parse_real(text)) == text


def test_round_trip_decimal_keeps_precision():
    with mpmath.workdps(60):
        x = mpmath.pi
        s = reals.format_real(x, 60)
        assert s.endswith("@60")
        assert abs(reals.parse_real(s) - x) < mpmath.mpf(10) ** -58


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        reals.parse_real("three")
    with pytest.raises(ValueError):
        Log(0)


def test_compare_and_zero():
    assert reals.compare(Log(3), Log(2)) == 1
    assert reals.compare(Fraction(1, 3), mpmath.mpf("0.5")) == -1
    assert reals.is_zero(Log(1))
    with pytest.raises(ZeroDivisionError):
        reals.div(1, 0)
