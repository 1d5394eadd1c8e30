"""Atomic conformal measures on Y_A for the renewal shift.

A probability measure vanishing on Sigma_A is a family of atom weights
``c_w = mu({w . xi0})`` over stems ``w`` (admissible words ending in 1, plus
the empty stem).  Conformality for the potential ``beta * f`` forces

    c_w * exp(beta * S_|w| f(w)) = c_empty,

so everything hinges on the normalization series
``Z = 1 + sum_w exp(-beta * S_|w| f(w))``; the measure exists iff ``Z < oo``
and then ``c_empty = 1 / Z``.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from fractions import Fraction
from collections.abc import Mapping
from typing import Iterable, Optional, Sequence

import mpmath

from . import reals
from .groupoid import (
    Bisection,
    GroupoidElement,
    SigmaPoint,
    YPoint,
    XI0,
    build_bisection,
    cocycle,
    unit,
)
from .reals import Log, Real
from .shift_core import TransitionMatrix, is_admissible, iter_stems, preimage_letters, renewal_matrix
from .transfer import DepthError, Potential, constant_potential, eigenmeasure_residual, indicator, per_length_potential

EXISTS, NOT_EXISTS, UNDETERMINED = "exists", "not_exists", "undetermined"
CONVERGENT, DIVERGENT = "convergent", "divergent"
EXACT_GEOMETRIC, THRESHOLD_THEOREM, RATIO_HEURISTIC = "exact_geometric", "threshold_theorem", "ratio_heuristic"

_VERDICT = {CONVERGENT: EXISTS, DIVERGENT: NOT_EXISTS, UNDETERMINED: UNDETERMINED}


class NotAStem(ValueError):
    pass


class NotSpecial(ValueError):
    pass


def stem_key(w: tuple):
    return (len(w), w)


@dataclass(frozen=True)
class SeriesReport:
    """Partial sums ``Z_n`` for ``n = 0..depth`` (``Z_0 = 1``) and the verdict on the full series."""

    partial_sums: list
    classification: str
    method: str
    tail_bound: Real
    level_sums: list = field(default_factory=list)
    lower_comparison: Optional[list] = None
    ratio_estimate: Optional[Real] = None


@dataclass(frozen=True)
class AtomicMeasure:
    c_empty: Optional[Real]
    coefficients: Mapping
    depth: int
    mass_materialized: Optional[Real]
    tail_bound: Optional[Real]
    verdict: str
    c_empty_bracket: Optional[tuple] = None
    potential: Optional[Potential] = field(default=None, compare=False)
    series: Optional[SeriesReport] = field(default=None, compare=False)

    def atom(self, w) -> Real:
        if isinstance(w, YPoint):
            w = w.stem
        elif isinstance(w, SigmaPoint):
            return Fraction(0)
        w = tuple(w)
        if not w:
            if self.c_empty is None:
                raise ValueError(f"no measure: verdict is {self.verdict}")
            return self.c_empty
        if len(w) > self.depth:
            raise DepthError(f"atom {w} is beyond depth {self.depth}", len(w))
        try:
            return self.coefficients[w]
        except KeyError:
            raise NotAStem(f"{w} is not a Y_A stem") from None

    def stems(self) -> list:
        return sorted(self.coefficients, key=stem_key)

    def perturbed(self, w, factor=2) -> "AtomicMeasure":
        """Copy with one atom weight multiplied by ``factor`` (the empty stem scales c_empty)."""
        w = tuple(w)
        if not w:
            return dataclasses.replace(self, c_empty=reals.mul(self.c_empty, Fraction(factor)))
        coeffs = dict(self.coefficients)
        coeffs[w] = reals.mul(coeffs[w], Fraction(factor))
        return dataclasses.replace(self, coefficients=coeffs)

    def problems(self) -> list:
        """Violations of the measure invariants (empty when consistent)."""
        out = []
        if self.verdict != EXISTS:
            return out
        if reals.compare(self.c_empty, 0) <= 0:
            out.append("c_empty is not positive")
        out.extend(f"coefficient of {w} is not positive" for w, c in self.coefficients.items() if reals.compare(c, 0) <= 0)
        if self.mass_materialized is not None and self.tail_bound is not None:
            if reals.compare(self.mass_materialized, 1) > 0:
                out.append("materialized mass exceeds 1")
            if reals.compare(reals.add(self.mass_materialized, self.tail_bound), 1) < 0:
                out.append("mass plus tail bound is below 1")
        return out


def renewal_for_depth(depth: int) -> TransitionMatrix:
    # stems of length n ending in 1 use letters up to n; one spare letter keeps preimages untruncated
    return renewal_matrix(depth + 1)


def is_stem(w: Sequence[int], A: Optional[TransitionMatrix] = None) -> bool:
    w = tuple(w)
    if not w:
        return True
    A = A or renewal_for_depth(len(w))
    return w[-1] == 1 and is_admissible(w, A)


def atom_preimages(w: tuple) -> list:
    """Stems ``v`` with ``sigma(v) = w`` for the renewal shift, sorted."""
    if not w:
        return [(1,)]
    return sorted((a,) + w for a in (1, w[0] + 1))


def iter_all_stems(depth: int, order: str = "lex"):
    """Every non-empty stem of length <= depth, level by level.

    ``order="lex"`` uses the lexicographic enumeration; ``order="tree"`` grows
    level n+1 from level n by prepending preimage letters.
    """
    if order == "lex":
        A = renewal_for_depth(depth)
        for n in range(1, depth + 1):
            yield from iter_stems(A, n, 1)
    elif order == "tree":
        level = [(1,)]
        for n in range(1, depth + 1):
            yield from reversed(level)
            level = [v for w in level for v in atom_preimages(w)]
    else:
        raise ValueError(f"unknown enumeration order {order!r}")


def stem_weight(P: Potential, w: tuple) -> Real:
    """``exp(-beta * S_|w| f(w))``."""
    from .transfer import birkhoff_sum

    if not w:
        return Fraction(1)
    return P.weight(birkhoff_sum(P, w, len(w)))


def coefficient(w: Sequence[int], P: Potential, c_empty: Real) -> Real:
    w = tuple(w)
    if not is_stem(w):
        raise NotAStem(f"{w} is not a Y_A stem (must be admissible and end with 1)")
    return reals.mul(c_empty, stem_weight(P, w))


def _require_solvable(P: Potential):
    if P.kind not in ("first_coordinate", "constant"):
        raise ValueError("the renewal solver handles first_coordinate and constant potentials")
    if P.lower_bound_M is None or P.sup_norm is None:
        raise ValueError("potential needs a lower bound M and a sup norm")


def _decide(P: Potential) -> tuple:
    """(classification, method) without computing any partial sums."""
    _require_solvable(P)
    if P.is_constant:
        s = reals.scaled_vs_log2(P.beta, P.constant_value)
        return (CONVERGENT if s > 0 else DIVERGENT), EXACT_GEOMETRIC
    if reals.scaled_vs_log2(P.beta, P.lower_bound_M) > 0:
        return CONVERGENT, THRESHOLD_THEOREM
    if reals.scaled_vs_log2(P.beta, P.sup_norm) < 0:
        return DIVERGENT, THRESHOLD_THEOREM
    return UNDETERMINED, RATIO_HEURISTIC


def _geometric_tail(r: Real, depth: int) -> Real:
    # (1/2) * sum_{n > depth} r^n for 0 < r < 1
    if isinstance(r, Fraction):
        return r ** (depth + 1) / (2 * (1 - r))
    r = reals.as_mpf(r)
    return r ** (depth + 1) / (2 * (1 - r))


def _half_geometric_partials(r: Real, depth: int) -> list:
    out, acc, term = [], Fraction(0), Fraction(1, 2)
    for _ in range(depth):
        term = reals.mul(term, r)
        acc = reals.add(acc, term)
        out.append(acc)
    return out


def _weights(P: Potential, depth: int, order: str) -> dict:
    return {w: stem_weight(P, w) for w in iter_all_stems(depth, order)}


def _series_from_weights(P: Potential, weights: Mapping, depth: int) -> SeriesReport:
    classification, method = _decide(P)
    level = [Fraction(0)] * (depth + 1)
    for w, x in weights.items():
        level[len(w)] = reals.add(level[len(w)], x)
    level[0] = Fraction(1)
    partial, acc = [], Fraction(0)
    for a in level:
        acc = reals.add(acc, a)
        partial.append(acc)
    ratio = None
    if depth >= 2 and not reals.is_zero(level[depth - 1]):
        ratio = reals.div(level[depth], level[depth - 1])
    tail: Real = mpmath.inf
    lower = None
    if classification == CONVERGENT:
        bound = P.constant_value if method == EXACT_GEOMETRIC else P.lower_bound_M
        tail = _geometric_tail(reals.mul(2, P.weight(bound)), depth)
    elif classification == DIVERGENT:
        bound = P.constant_value if method == EXACT_GEOMETRIC else P.sup_norm
        lower = _half_geometric_partials(reals.mul(2, P.weight(bound)), depth)
    return SeriesReport(partial, classification, method, tail, level, lower, ratio)


def classify_series(P: Potential, depth: int, precision: int = reals.DEFAULT_PRECISION) -> SeriesReport:
    """Classify ``Z = 1 + sum_w exp(-beta S f(w))``.

    Constant ``f`` has an exact threshold at ``beta * f = log 2``.  Otherwise
    the comparison series ``(1/2) sum (2 exp(-beta M))^n`` and
    ``(1/2) sum (2 exp(-beta |f|_oo))^n`` certify convergence or divergence;
    between the two thresholds the last level ratio is reported but the
    classification stays undetermined.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    with mpmath.workdps(precision):
        return _series_from_weights(P, _weights(P, depth, "lex"), depth)


def solve_renewal(
    P: Potential, depth: int, precision: int = reals.DEFAULT_PRECISION, order: str = "lex"
) -> AtomicMeasure:
    if depth < 1:
        raise ValueError("depth must be >= 1")
    with mpmath.workdps(precision):
        weights = _weights(P, depth, order)
        report = _series_from_weights(P, weights, depth)
        verdict = _VERDICT[report.classification]
        if verdict != EXISTS:
            return AtomicMeasure(None, {}, depth, None, None, verdict, None, P, report)
        z_depth = report.partial_sums[-1]
        if report.method == EXACT_GEOMETRIC:
            # Z = 1 + (1/2) r / (1 - r) with r = 2 exp(-beta c)
            r = reals.mul(2, P.weight(P.constant_value))
            z = reals.add(1, reals.div(r, reals.mul(2, reals.sub(1, r))))
            c_empty = reals.div(1, z)
            bracket = (c_empty, c_empty)
        else:
            lo = reals.div(1, reals.add(z_depth, report.tail_bound))
            hi = reals.div(1, z_depth)
            c_empty = reals.div(reals.add(lo, hi), 2)
            bracket = (lo, hi)
        coeffs = {w: reals.mul(c_empty, x) for w, x in weights.items()}
        return AtomicMeasure(
            c_empty,
            coeffs,
            depth,
            reals.mul(c_empty, z_depth),
            reals.mul(c_empty, report.tail_bound),
            EXISTS,
            bracket,
            P,
            report,
        )


def recover_length_potential(c_by_length: Sequence[Real]) -> dict:
    """``F(n) = log(c_{n-1} / c_n)`` for ``n >= 1``; ``c_by_length[0]`` is c_empty."""
    out = {}
    for n in range(1, len(c_by_length)):
        ratio = reals.div(c_by_length[n - 1], c_by_length[n])
        out[n] = Log(ratio) if isinstance(ratio, Fraction) else mpmath.log(ratio)
    return out


class LengthCoefficients(Mapping):
    """Lazy stem -> coefficient mapping for weights that depend on the length only."""

    def __init__(self, c_by_length: Sequence[Real], depth: int):
        self._c = list(c_by_length)
        self.depth = depth

    def __getitem__(self, w):
        w = tuple(w)
        if not w or len(w) > self.depth or not is_stem(w):
            raise KeyError(w)
        return self._c[len(w)]

    def __iter__(self):
        return iter_all_stems(self.depth)

    def __len__(self):
        return 2 ** self.depth - 1

    def __contains__(self, w):
        try:
            self[w]
        except KeyError:
            return False
        return True


def _length_measure(c_by_length: Sequence[Real], depth: int, c_bracket, tail: Real, potential) -> AtomicMeasure:
    coeffs = LengthCoefficients(c_by_length, depth)
    mass = reals.total([c_by_length[0]] + [reals.mul(Fraction(2 ** (n - 1)), c_by_length[n]) for n in range(1, depth + 1)])
    return AtomicMeasure(c_by_length[0], coeffs, depth, mass, tail, EXISTS, c_bracket, potential)


def example_alpha(alpha, depth: int) -> AtomicMeasure:
    """Length-only weights ``c_n = (alpha-2) / (alpha^n (alpha-1))`` for ``alpha > 2``.

    The measure is conformal for the constant potential ``F = log alpha``,
    which is attached as ``potential`` (``f = 1``, ``beta = log alpha``).
    """
    alpha = Fraction(alpha)
    if alpha <= 2:
        raise ValueError("alpha must exceed 2 for the weights to normalize")
    if depth < 1:
        raise ValueError("depth must be >= 1")
    c = [(alpha - 2) / (alpha ** n * (alpha - 1)) for n in range(depth + 1)]
    q = 2 / alpha
    tail = c[0] * q ** (depth + 1) / (2 * (1 - q))
    return _length_measure(c, depth, (c[0], c[0]), tail, constant_potential(1, Log(alpha)))


def alpha_total_mass(alpha) -> Fraction:
    """Closed form of ``c_empty + sum_n 2^(n-1) c_n`` for the alpha family."""
    alpha = Fraction(alpha)
    c0 = (alpha - 2) / (alpha - 1)
    q = 2 / alpha
    return c0 + c0 * q / (2 * (1 - q))


def superexp_tail_bound(depth: int) -> Fraction:
    """Bound ``2^(-depth^2)`` on ``sum_{n > depth} 2^(n-1) 2^(-n^2)``."""
    return Fraction(1, 2 ** (depth * depth))


def example_superexp(depth: int, precision: int = reals.DEFAULT_PRECISION) -> tuple:
    """Weights ``c_n = 2^(-n^2)``; returns ``(measure, recovered per-length potential)``."""
    if depth < 1:
        raise ValueError("depth must be >= 1")
    with mpmath.workdps(precision):
        partial = sum(Fraction(2 ** (n - 1), 2 ** (n * n)) for n in range(1, depth + 1))
        tb = superexp_tail_bound(depth)
        bracket = (1 - partial - tb, 1 - partial)
        # enough extra terms to push the remainder below the working precision
        n_full = depth
        while superexp_tail_bound(n_full) > Fraction(1, 10 ** (precision + 10)):
            n_full += 1
        full = sum(Fraction(2 ** (n - 1), 2 ** (n * n)) for n in range(1, n_full + 1))
        c_empty = reals.as_mpf(1 - full)
        c = [c_empty] + [Fraction(1, 2 ** (n * n)) for n in range(1, depth + 1)]
        F = recover_length_potential(c)
        P = per_length_potential(F, beta=1)
        mu = _length_measure(c, depth, bracket, tb, P)
    return mu, P


# ---------------------------------------------------------------- verifiers


def check_denker_urbanski(mu: AtomicMeasure, P: Potential, E: Iterable[Sequence[int]]) -> Real:
    """``| mu(sigma E) - sum_{w in E} exp(beta F(w)) c_w |`` on a special set of stems."""
    E = sorted({tuple(w) for w in E}, key=stem_key)
    if () in E:
        raise ValueError("xi0 is outside the shift domain and cannot belong to a special set")
    images: dict = {}
    for w in E:
        if w[1:] in images:
            raise NotSpecial(f"not special: {images[w[1:]]} and {w} have the same image")
        images[w[1:]] = w
    lhs = reals.total(mu.atom(w[1:]) for w in E)
    rhs = reals.total(reals.mul(P.inverse_boltzmann(w), mu.atom(w)) for w in E)
    return reals.absval(reals.sub(lhs, rhs))


def check_sarig(mu: AtomicMeasure, P: Potential, w: Sequence[int]) -> Real:
    """``| c_{sigma w} / c_w - exp(beta F(w)) |``, the per-atom Radon-Nikodym defect."""
    w = tuple(w)
    if not w:
        raise ValueError("xi0 is outside the shift domain")
    c = mu.atom(w)
    if reals.is_zero(c):
        raise ValueError(f"measure not positive on atom {w}")
    return reals.absval(reals.sub(reals.div(mu.atom(w[1:]), c), P.inverse_boltzmann(w)))


def _require_atoms(mu: AtomicMeasure, g: GroupoidElement):
    for p in (g.x, g.y):
        if not isinstance(p, YPoint):
            raise ValueError(f"{p} is not a Y_A atom")
        if len(p.stem) > mu.depth:
            raise DepthError(f"{p} is beyond depth {mu.depth}", len(p.stem))


def check_quasi_invariance(mu: AtomicMeasure, P: Potential, B) -> Real:
    """``| sum_g exp(beta c_F(g)) mu(r g) - sum_g mu(s g) |`` for the indicator of ``B``."""
    elements = list(B)
    lhs, rhs = [], []
    for g in elements:
        _require_atoms(mu, g)
        c = cocycle(P.f, g)
        lhs.append(reals.mul(reals.exp_pos(reals.mul(P.beta, c)), mu.atom(g.x)))
        rhs.append(mu.atom(g.y))
    return reals.absval(reals.sub(reals.total(lhs), reals.total(rhs)))


def check_eigenmeasure(mu: AtomicMeasure, P: Potential, w: Sequence[int]) -> Real:
    return eigenmeasure_residual(mu, P, indicator([YPoint(tuple(w))]))


def special_set_panel(depth: int) -> list:
    """Singletons plus larger special sets on which the shift is injective."""
    stems = list(iter_all_stems(depth))
    panel = [[w] for w in stems]
    for n in range(1, depth + 1):
        level = [w for w in stems if len(w) == n]
        panel.append([w for w in level if w[0] == 1])
        others = [w for w in level if w[0] != 1]
        if others:
            panel.append(others)
    panel.append([w for w in stems if w[0] == 1])
    return panel


def bisection_panel(depth: int) -> list:
    """Units, W(1,0) and W(2,1) singletons, and multi-element W(1,0) / W(2,1) bisections."""
    stems = list(iter_all_stems(depth))
    atoms = [XI0] + [YPoint(w) for w in stems]
    panel: list = [[unit(x)] for x in atoms]
    for w in stems:
        panel.append(build_bisection(1, 0, {YPoint(w)}, {YPoint(w[1:])}))
    panel.append(build_bisection(1, 0, {YPoint(w) for w in stems if w[0] == 1}, {YPoint(w) for w in [()] + stems if len(w) < depth}))
    etas = [()] + [w for w in stems if len(w) <= depth - 2]
    for w in stems:
        if len(w) >= 2:
            for y in atom_preimages(w[2:]):
                panel.append(build_bisection(2, 1, {YPoint(w)}, {YPoint(y)}))
    for i in range(4):
        for j in range(2):
            V1, V2 = set(), set()
            for eta in etas:
                xs = sorted(v for u in atom_preimages(eta) for v in atom_preimages(u))
                ys = atom_preimages(eta)
                if i < len(xs) and j < len(ys):
                    V1.add(YPoint(xs[i]))
                    V2.add(YPoint(ys[j]))
            if V1:
                panel.append(build_bisection(2, 1, V1, V2))
    return panel


CONDITIONS = ("denker_urbanski", "sarig", "quasi_invariance", "eigenmeasure")


@dataclass
class VerificationReport:
    max_residual: dict
    counts: dict
    exact: bool
    tolerance: Optional[Real]

    @property
    def passed(self) -> bool:
        for r in self.max_residual.values():
            if self.exact:
                if not reals.is_zero(r):
                    return False
            elif reals.compare(r, self.tolerance) >= 0:
                return False
        return True


def verify_measure(
    mu: AtomicMeasure, P: Potential, depth: Optional[int] = None, precision: int = reals.DEFAULT_PRECISION
) -> VerificationReport:
    """Run the four conformality checks on every atom and panel set within ``depth``."""
    depth = mu.depth if depth is None else depth
    if mu.verdict != EXISTS or not mu.coefficients:
        raise ValueError("nothing to verify: the measure has no atoms")
    with mpmath.workdps(precision):
        stems = list(iter_all_stems(depth))
        residuals = {
            "denker_urbanski": [check_denker_urbanski(mu, P, E) for E in special_set_panel(depth)],
            "sarig": [check_sarig(mu, P, w) for w in stems],
            "quasi_invariance": [check_quasi_invariance(mu, P, B) for B in bisection_panel(depth)],
            "eigenmeasure": [check_eigenmeasure(mu, P, w) for w in stems],
        }
        exact = all(reals.is_exact(r) for rs in residuals.values() for r in rs)
        tol = None if exact else mpmath.mpf(10) ** (-(precision - 10))
        worst = {}
        for k, rs in residuals.items():
            m: Real = Fraction(0)
            for r in rs:
                if reals.compare(r, m) > 0:
                    m = r
            worst[k] = m
    return VerificationReport(worst, {k: len(v) for k, v in residuals.items()}, exact, tol)


# ---------------------------------------------------------------- beta scans


@dataclass(frozen=True)
class ScanRow:
    beta: Fraction
    verdict: str
    c_empty: Optional[Real]
    partial_mass: Real
    tail_bound: Real


@dataclass(frozen=True)
class Flip:
    beta_lo: Fraction
    beta_hi: Fraction
    verdict_lo: str
    verdict_hi: str

    @property
    def estimate(self) -> Fraction:
        return (self.beta_lo + self.beta_hi) / 2


@dataclass
class ScanResult:
    rows: list
    flips: list


def scan_beta(
    P: Potential,
    beta_lo,
    beta_hi,
    steps: int,
    depth: int = 10,
    tol="1e-6",
    precision: int = reals.DEFAULT_PRECISION,
) -> ScanResult:
    """Verdicts on an even grid of ``steps + 1`` inverse temperatures, with every flip refined by bisection.

    ``beta`` of ``P`` is ignored.  For ``not_exists``/``undetermined`` rows the
    partial mass column carries the unnormalized partial sum ``Z_depth``.
    """
    lo, hi = Fraction(str(beta_lo)), Fraction(str(beta_hi))
    if lo >= hi:
        raise ValueError("beta_lo must be smaller than beta_hi")
    if steps < 1:
        raise ValueError("steps must be >= 1")
    if lo <= 0:
        raise ValueError("inverse temperatures must be positive")
    tol = Fraction(str(tol))
    rows = []
    with mpmath.workdps(precision):
        for i in range(steps + 1):
            beta = lo + (hi - lo) * i / steps
            mu = solve_renewal(P.with_beta(beta), depth, precision)
            if mu.verdict == EXISTS:
                rows.append(ScanRow(beta, EXISTS, mu.c_empty, mu.mass_materialized, mu.tail_bound))
            else:
                rows.append(ScanRow(beta, mu.verdict, None, mu.series.partial_sums[-1], mpmath.inf))
        flips = []
        for a, b in zip(rows, rows[1:]):
            if a.verdict != b.verdict:
                flips.append(_refine(P, a.beta, b.beta, a.verdict, b.verdict, tol))
    return ScanResult(rows, flips)


def _refine(P: Potential, lo: Fraction, hi: Fraction, v_lo: str, v_hi: str, tol: Fraction) -> Flip:
    while hi - lo > tol:
        mid = (lo + hi) / 2
        v = _VERDICT[_decide(P.with_beta(mid))[0]]
        if v == v_lo:
            lo = mid
        else:
            hi, v_hi = mid, v
    return Flip(lo, hi, v_lo, v_hi)


# ---------------------------------------------------------------- file formats


def measure_to_json(mu: AtomicMeasure, digits: int = reals.DEFAULT_PRECISION) -> dict:
    fmt = lambda v: None if v is None else reals.format_real(v, digits)  # noqa: E731
    out = {
        "verdict": mu.verdict,
        "depth": mu.depth,
        "c_empty": fmt(mu.c_empty),
        "tail_bound": fmt(mu.tail_bound),
        "mass_materialized": fmt(mu.mass_materialized),
        "c_empty_bracket": None if mu.c_empty_bracket is None else [fmt(v) for v in mu.c_empty_bracket],
        "atoms": [{"stem": ".".join(map(str, w)), "coefficient": fmt(mu.coefficients[w])} for w in mu.stems()],
    }
    if mu.potential is not None:
        out["potential"] = mu.potential.to_json(digits)
    return out


def measure_from_json(data: Mapping) -> AtomicMeasure:
    """Rebuild a measure from its export; the embedded potential, if any, is attached."""
    from .shift_core import parse_word
    from .transfer import potential_from_json

    parse = lambda v: None if v is None else reals.parse_real(str(v))  # noqa: E731
    atoms = data.get("atoms") or []
    if not atoms:
        raise ValueError("measure has no atoms")
    coeffs = {}
    for a in atoms:
        w = parse_word(str(a["stem"]))
        if not w or not is_stem(w):
            raise NotAStem(f"{a['stem']!r} is not a Y_A stem")
        if w in coeffs:
            raise ValueError(f"duplicate atom {a['stem']!r}")
        coeffs[w] = parse(a["coefficient"])
    depth = int(data.get("depth", max(len(w) for w in coeffs)))
    missing = [w for w in iter_all_stems(depth) if w not in coeffs]
    if missing:
        raise ValueError(f"measure lists no coefficient for stem {'.'.join(map(str, missing[0]))}")
    verdict = data.get("verdict", EXISTS)
    if verdict not in (EXISTS, NOT_EXISTS, UNDETERMINED):
        raise ValueError(f"unknown verdict {verdict!r}")
    c_empty = parse(data.get("c_empty"))
    if c_empty is None:
        raise ValueError("measure has no c_empty")
    bracket = data.get("c_empty_bracket")
    P = potential_from_json(data["potential"]) if data.get("potential") else None
    return AtomicMeasure(
        c_empty,
        coeffs,
        depth,
        parse(data.get("mass_materialized")),
        parse(data.get("tail_bound")),
        verdict,
        None if bracket is None else tuple(parse(v) for v in bracket),
        P,
    )
