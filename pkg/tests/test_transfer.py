from fractions import Fraction

import pytest

from xaconf import conformal
from xaconf.groupoid import XI0, SigmaPoint, YPoint
from xaconf.reals import Log
from xaconf.transfer import (
    DepthError,
    FinSuppFunction,
    birkhoff_sum,
    constant_potential,
    eigenmeasure_residual,
    first_coordinate_potential,
    indicator,
    integrate,
    per_length_potential,
    potential_from_json,
    ruelle_apply,
)


def test_birkhoff_sum():
    f = lambda w: Fraction(w[0])  # noqa: E731
    assert birkhoff_sum(f, (2, 1), 2) == 3
    assert birkhoff_sum(f, (3, 2, 1), 0) == 0
    with pytest.raises(ValueError):
        birkhoff_sum(f, (1,), 2)


def test_potential_bounds_are_checked():
    with pytest.raises(ValueError):
        first_coordinate_potential({1: 3}, 1, default=2, lower_bound_M=Fraction(5, 2))
    with pytest.raises(ValueError):
        first_coordinate_potential({1: 0}, 1, default=1)
    with pytest.raises(ValueError):
        constant_potential(1, 0)
    P = first_coordinate_potential({1: 3}, 1, default=2)
    assert (P.lower_bound_M, P.sup_norm) == (2, 3)
    assert P.f((5, 4, 3, 2, 1)) == 2 and P.f(SigmaPoint((), (1,))) == 3
    with pytest.raises(ValueError):
        P.f(XI0)


def test_potential_json_round_trip():
    P = first_coordinate_potential({1: 3}, Fraction(2, 5), default=2, lower_bound_M=2, sup_norm=3)
    Q = potential_from_json(P.to_json())
    assert Q == P
    C = potential_from_json({"kind": "constant", "values": {"value": "1"}, "beta": "log(3)"})
    assert C.beta == Log(3) and C.is_constant and C.constant_value == 1
    L = potential_from_json({"kind": "per_length", "values": {"1": "log(2)", "2": "log(8)"}})
    assert L.f((2, 1)) == Log(8)


def test_weights_exact_for_log_beta():
    P = constant_potential(1, Log(3))
    assert P.boltzmann((2, 1)) == Fraction(1, 3)
    assert P.inverse_boltzmann((1,)) == 3


def test_ruelle_is_linear_and_pushes_forward():
    P = first_coordinate_potential({1: 1}, Log(2), default=2)
    phi = FinSuppFunction({YPoint((1, 1)): Fraction(1), YPoint((2, 1)): Fraction(3)})
    psi = indicator([YPoint((1,)), YPoint((2, 1))])
    lhs = ruelle_apply(phi + psi.scale(2), P)
    rhs = ruelle_apply(phi, P) + ruelle_apply(psi, P).scale(2)
    assert lhs.nonzero() == rhs.nonzero()
    # (L phi)(1) = e^{-F(1.1)} * 1 + e^{-F(2.1)} * 3 + 2 * e^{-F(2.1)}
    assert lhs[YPoint((1,))] == Fraction(1, 2) + Fraction(3, 4) + Fraction(2, 4)
    with pytest.raises(ValueError):
        ruelle_apply(indicator([XI0]), P)


def test_eigenmeasure_residual_on_solved_and_alpha_measures():
    P = constant_potential(1, Log(3))
    mu = conformal.solve_renewal(P, 6)
    phi = FinSuppFunction({YPoint(w): Fraction(len(w)) for w in mu.stems()})
    assert eigenmeasure_residual(mu, P, phi) == 0
    a = conformal.example_alpha(Fraction(7, 2), 6)
    assert eigenmeasure_residual(a, a.potential, phi) == 0
    assert integrate(indicator([SigmaPoint((), (1,))]), mu) == 0


def test_depth_error_names_required_depth():
    P = constant_potential(1, Log(3))
    mu = conformal.solve_renewal(P, 3)
    with pytest.raises(DepthError) as err:
        integrate(indicator([YPoint((1, 1, 1, 1, 1))]), mu)
    assert err.value.required_depth == 5


def test_per_length_potential():
    P = per_length_potential({1: Log(2), 2: Log(8)})
    assert P.F((2, 1)) == Log(8)
    with pytest.raises(KeyError):
        P.f((1, 1, 1))
