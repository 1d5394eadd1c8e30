"""One group of tests per acceptance criterion; the summary hook in conftest prints PASS/FAIL per criterion."""

import json
import random
import time
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings

from xaconf import cli, conformal
from xaconf.config_space import (
    IDENTITY,
    Configuration,
    FreeWord,
    omega_tau_membership,
    reduce,
    saturate,
    stem,
    translate,
    xi0_renewal,
)
from xaconf.groupoid import cocycle, compose
from xaconf.reals import Log, format_real
from xaconf.shift_core import enumerate_stems, renewal_matrix
from xaconf.transfer import constant_potential, first_coordinate_potential

from .helpers import random_composable_pair, signed_words


# 1 ------------------------------------------------------------------ cardinality


def test_criterion_1_stem_cardinality():
    A = renewal_matrix(20)
    for n in range(1, 21):
        stems = enumerate_stems(A, n, 1)
        assert len(stems) == 2 ** (n - 1)
        assert len(set(stems)) == len(stems)


# 2 ------------------------------------------------------------------ alpha example


@pytest.mark.parametrize("alpha", [Fraction(3), Fraction(5, 2), Fraction(10)])
def test_criterion_2_alpha_normalization(alpha):
    mu = conformal.example_alpha(alpha, 40)
    assert mu.c_empty == (alpha - 2) / (alpha - 1)
    assert conformal.alpha_total_mass(alpha) == 1
    # independent partial sum over lengths
    partial = mu.c_empty + sum(Fraction(2 ** (n - 1)) * (alpha - 2) / (alpha ** n * (alpha - 1)) for n in range(1, 41))
    assert partial == mu.mass_materialized
    assert partial <= 1 <= partial + mu.tail_bound
    assert 1 - partial == mu.tail_bound  # a geometric remainder is exact
    assert mu.atom((3, 2, 1)) == (alpha - 2) / (alpha ** 3 * (alpha - 1))


# 3 ------------------------------------------------------------------ phase transition


def test_criterion_3_scan_brackets_log2():
    P = constant_potential(1, 1)
    result = conformal.scan_beta(P, "0.5", "1.0", 50, depth=10, tol="1e-6")
    assert len(result.flips) == 1
    flip = result.flips[0]
    assert (flip.verdict_lo, flip.verdict_hi) == ("not_exists", "exists")
    assert flip.beta_hi - flip.beta_lo <= Fraction(1, 10 ** 6)
    assert mpmath.mpf(flip.beta_lo.numerator) / flip.beta_lo.denominator < mpmath.log(2)
    assert mpmath.mpf(flip.beta_hi.numerator) / flip.beta_hi.denominator > mpmath.log(2)
    assert abs(float(flip.estimate) - 0.6931471805599453) < 1e-6


def _solve_exit(tmp_path, beta: str):
    pot = tmp_path / "p.json"
    pot.write_text(json.dumps({"kind": "constant", "values": {"value": "1"}, "beta": beta}))
    out = tmp_path / "m.json"
    code = cli.main(["solve", "--potential", str(pot), "--depth", "8", "--out", str(out)])
    return code, json.loads(out.read_text())


def test_criterion_3_solve_at_and_above_log2(tmp_path):
    code, data = _solve_exit(tmp_path, "log(2)")
    assert code == 3 and data["verdict"] == "not_exists"
    # divergence certificate: every level contributes exactly 1/2
    report = conformal.classify_series(constant_potential(1, Log(2)), 8)
    assert report.method == "exact_geometric"
    assert all(a == Fraction(1, 2) for a in report.level_sums[1:])
    with mpmath.workdps(60):
        above = format_real(mpmath.log(2) + mpmath.mpf("0.001"), 60)
    code, data = _solve_exit(tmp_path, above)
    assert code == 0 and data["verdict"] == "exists"


# 4 ------------------------------------------------------------------ existence thresholds


def _stepped(beta):
    return first_coordinate_potential({1: 3}, beta, default=2, lower_bound_M=2, sup_norm=3)


def test_criterion_4_threshold_verdicts():
    assert conformal.solve_renewal(_stepped(Fraction(2, 5)), 10).verdict == "exists"
    assert conformal.solve_renewal(_stepped(Fraction(1, 5)), 10).verdict == "not_exists"
    for beta in ("0.24", "0.2812", "0.3", "0.34"):
        mu = conformal.solve_renewal(_stepped(Fraction(beta)), 10)
        assert mu.verdict == "undetermined"
        assert mu.series.method == "ratio_heuristic"


# 5 ------------------------------------------------------------------ four-way equivalence


def test_criterion_5_four_way_residuals_zero():
    start = time.perf_counter()
    P = constant_potential(1, Log(3))
    mu = conformal.solve_renewal(P, 10)
    report = conformal.verify_measure(mu, P)
    assert report.exact
    for name in conformal.CONDITIONS:
        assert report.max_residual[name] == 0, name
        assert report.counts[name] > 0
    # every W(2,1) singleton within depth 10: two per stem of length 2..10
    assert report.counts["quasi_invariance"] >= 2 * (2 ** 10 - 2)
    assert time.perf_counter() - start <= 10


# 6 ------------------------------------------------------------------ perturbation oracle


def test_criterion_6_perturbation_detected():
    P = constant_potential(1, Log(3))
    mu = conformal.solve_renewal(P, 5)
    for w in [()] + mu.stems():
        bad = conformal.verify_measure(mu.perturbed(w, 2), P)
        assert not bad.passed
        for name in conformal.CONDITIONS:
            assert bad.max_residual[name] != 0, (w, name)


# 7 ------------------------------------------------------------------ structural suite


@settings(max_examples=1000, deadline=None)
@given(signed_words(), signed_words(), signed_words())
def test_criterion_7_reduce_closure_laws(a, b, c):
    ra, rb, rc = reduce(a), reduce(b), reduce(c)
    assert reduce(ra.syllables) == ra
    assert reduce(a + b) == ra * rb
    assert (ra * rb) * rc == ra * (rb * rc)
    assert ra * ~ra == IDENTITY and ~ra * ra == IDENTITY
    assert ra * IDENTITY == ra == IDENTITY * ra


def test_criterion_7_saturate_closure_operator():
    A = renewal_matrix(9)
    rng = random.Random(7)
    for depth in range(1, 7):
        base = xi0_renewal(depth, A)
        closed = saturate(base, A)
        assert closed == base  # xi0 is already closed
        for _ in range(10):
            g = FreeWord.positive(rng.choice(enumerate_stems(A, rng.randint(1, depth), 1)))
            seed = Configuration(frozenset(set(g.prefixes()) | {g}), depth)
            s1 = saturate(seed, A)
            assert seed.filled <= s1.filled
            assert saturate(s1, A) == s1
            assert s1.filled <= saturate(Configuration(seed.filled | base.filled, depth), A).filled


def test_criterion_7_xi0_membership():
    for depth in range(1, 9):
        A = renewal_matrix(depth + 1)
        report = omega_tau_membership(xi0_renewal(depth, A), A)
        assert report.ok, report.violations[:3]
        assert stem(xi0_renewal(depth, A)).stem == ()


def test_criterion_7_stem_translate_identity():
    for n in range(1, 9):
        A = renewal_matrix(2 * n + 1)
        xi0 = xi0_renewal(2 * n, A)
        stems = enumerate_stems(A, n, 1)
        if n >= 7:
            stems = random.Random(n).sample(stems, 12)
        for w in stems:
            moved = translate(FreeWord.positive(w), xi0)
            assert stem(moved).stem == w
            assert omega_tau_membership(moved, A).ok


def test_criterion_7_cocycle_additivity():
    rng = random.Random(2024)
    P = first_coordinate_potential({1: 3, 2: Fraction(5, 2), 3: 7}, 1, default=2)
    for _ in range(500):
        g1, g2 = random_composable_pair(rng)
        g = compose(g1, g2)
        assert cocycle(P.f, g) == cocycle(P.f, g1) + cocycle(P.f, g2)


# 8 ------------------------------------------------------------------ superexponential example


def test_criterion_8_superexp():
    depth = 10
    mu, P = conformal.example_superexp(depth, 100)
    for n in range(2, depth + 1):
        assert P.values[n] == Log(2 ** (2 * n - 1))
    lo, hi = mu.c_empty_bracket
    assert hi - lo == Fraction(1, 2 ** (depth * depth))
    assert mu.tail_bound <= Fraction(1, 2 ** (depth * depth))
    with mpmath.workdps(100):
        oracle = 1 - mpmath.nsum(lambda n: mpmath.power(2, n - 1 - n * n), [1, mpmath.inf])
        assert mpmath.mpf(lo.numerator) / lo.denominator <= oracle <= mpmath.mpf(hi.numerator) / hi.denominator
        assert abs(mu.c_empty - oracle) < mpmath.mpf(10) ** -90
        assert abs(P.values[1] - mpmath.log(2 * oracle)) < mpmath.mpf(10) ** -90
