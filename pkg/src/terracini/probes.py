"""Randomized and enumerative probes.

Probes gather evidence, never theorems: each one draws seeded random
configurations, checks an exact property on every draw, and reports the
failing seeds verbatim. All verdicts are reproducible from (curve,
parameters, seed), and no floating-point number ever enters an exact
verdict; float scans only produce hints that are re-verified exactly.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from .curves import (
    CanonicalHyperelliptic,
    Curve,
    CurvePoint,
    Divisor,
    HyperPoint,
    Hyperelliptic,
    HyperplaneSystem,
    LinearSystem,
    PARAM_T_WINDOW,
    ParamValue,
    ParametricRational,
    PlaneImplicit,
    PlanePoint,
    ProjectivePoint,
    hyperelliptic_point_pool,
    plane_point_pool,
    weierstrass_points,
)
from .defects import (
    TerraciniReport,
    defect_report,
    hyperelliptic_oracle,
    jet_matrix,
    scheme_report,
)
from .errors import NotSpaceCurve, PreconditionNotMet
from .qlinalg import Matrix, Polynomial

# rational grid for exact zero searches of the coplanar-tangent determinant
COPLANAR_GRID = tuple(Fraction(n) for n in range(-6, 7))

# default caps for exhaustive enumeration; hundreds of exact rank queries
ENUMERATION_MAX_GENUS = 4
ENUMERATION_MAX_X = 4


@dataclass(frozen=True)
class ProbeResult:
    trials: int
    failures: int
    failing_seeds: tuple
    verdict: str

    @classmethod
    def from_failures(cls, trials: int, failing_seeds: list) -> "ProbeResult":
        return cls(
            trials=trials,
            failures=len(failing_seeds),
            failing_seeds=tuple(failing_seeds),
            verdict="counterexample-found" if failing_seeds else "all-passed",
        )


# ---------------------------------------------------------------------------
# seeded configuration sampling
# ---------------------------------------------------------------------------

def _draw_param_points(curve: ParametricRational, count: int, rng: random.Random):
    lo, hi = PARAM_T_WINDOW
    values = rng.sample(range(lo, hi + 1), count)
    return [ParamValue(Fraction(v)) for v in values]


def _draw_hyper_points(curve: Hyperelliptic, count: int, rng: random.Random,
                       distinct_x: bool = False, exclude_branch: bool = False):
    pool = list(hyperelliptic_point_pool(curve))
    if exclude_branch:
        pool = [p for p in pool if p.y != 0]
    chosen: list[HyperPoint] = []
    rng.shuffle(pool)
    for p in pool:
        if distinct_x and any(q.x == p.x for q in chosen):
            continue
        chosen.append(p)
        if len(chosen) == count:
            return chosen
    raise PreconditionNotMet(
        "rational point pool too small: needed %d points, found %d" % (count, len(chosen))
    )


def sample_reduced_divisor(curve: Curve, x: int, rng: random.Random) -> Divisor:
    if isinstance(curve, ParametricRational):
        return Divisor.reduced(_draw_param_points(curve, x, rng))
    if isinstance(curve, Hyperelliptic):
        return Divisor.reduced(_draw_hyper_points(curve, x, rng))
    raise PreconditionNotMet("random divisors are not supported for %s" % curve.label())


# ---------------------------------------------------------------------------
# emptiness and generic-rank probes
# ---------------------------------------------------------------------------

def emptiness_probe(curve: Curve, system: LinearSystem, x: int, trials: int,
                    seed) -> ProbeResult:
    """Draw `trials` random reduced sets of size x and require defect zero."""
    failing = []
    for i in range(trials):
        rng = random.Random("emptiness:%s:%d" % (seed, i))
        s = sample_reduced_divisor(curve, x, rng)
        if defect_report(curve, system, s).defect != 0:
            failing.append(i)
    return ProbeResult.from_failures(trials, failing)


def generic_rank_probe(curve: Curve, system: LinearSystem, lengths, trials: int,
                       seed) -> ProbeResult:
    """Check dim V(-Z) = max(0, dim V - sum of lengths) on random supports.

    The support points are drawn as general points: pairwise distinct, and
    when any component length exceeds one, away from the branch locus and
    from shared fibers (where the formula genuinely fails).
    """
    lengths = tuple(int(e) for e in lengths)
    if any(e < 1 for e in lengths):
        raise PreconditionNotMet("component lengths must be positive")
    total = sum(lengths)
    dim_v = system.dim(curve)
    expected = max(0, dim_v - total)
    failing = []
    for i in range(trials):
        rng = random.Random("generic-rank:%s:%d" % (seed, i))
        if isinstance(curve, ParametricRational):
            points = _draw_param_points(curve, len(lengths), rng)
        elif isinstance(curve, Hyperelliptic):
            needs_generic = any(e > 1 for e in lengths)
            points = _draw_hyper_points(
                curve, len(lengths), rng,
                distinct_x=True, exclude_branch=needs_generic,
            )
        else:
            raise PreconditionNotMet("sampling unsupported for %s" % curve.label())
        z = Divisor(list(zip(points, lengths)))
        rank = jet_matrix(curve, system, z).rank()
        if dim_v - rank != expected:
            failing.append(i)
    return ProbeResult.from_failures(trials, failing)


# ---------------------------------------------------------------------------
# coplanar tangent pairs of space curves
# ---------------------------------------------------------------------------

class BivariatePoly:
    """Polynomial in (s, t), stored as t-polynomials indexed by the power of s."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        rows = list(rows)
        while rows and rows[-1].is_zero():
            rows.pop()
        self.rows = tuple(rows)

    def is_zero(self) -> bool:
        return not self.rows

    def is_constant(self) -> bool:
        return self.is_zero() or (len(self.rows) == 1 and self.rows[0].is_constant())

    def constant_value(self) -> Fraction:
        if self.is_zero():
            return Fraction(0)
        return self.rows[0].coeff(0)

    def __call__(self, s0, t0) -> Fraction:
        s0 = Fraction(s0)
        acc = Fraction(0)
        for row in reversed(self.rows):
            acc = acc * s0 + row(t0)
        return acc

    def diagonal(self) -> Polynomial:
        """The univariate restriction to s = t."""
        acc = Polynomial.zero()
        for i, row in enumerate(self.rows):
            acc = acc + row * Polynomial.monomial(i)
        return acc

    def swapped(self) -> "BivariatePoly":
        """The polynomial with s and t exchanged."""
        max_t = max((row.degree() for row in self.rows), default=-1)
        new_rows = []
        for j in range(max_t + 1):
            new_rows.append(Polynomial([row.coeff(j) for row in self.rows]))
        return BivariatePoly(new_rows)

    def scale(self, c) -> "BivariatePoly":
        return BivariatePoly([row.scale(c) for row in self.rows])

    def __eq__(self, other) -> bool:
        return isinstance(other, BivariatePoly) and self.rows == other.rows

    def divide_once_by_s_minus_t(self) -> "BivariatePoly | None":
        """Exact quotient by (s - t), or None if not divisible."""
        if self.is_zero():
            return self
        n = len(self.rows) - 1
        if n == 0:
            return None
        t_poly = Polynomial.variable()
        quotient = [Polynomial.zero()] * n
        quotient[n - 1] = self.rows[n]
        for k in range(n - 1, 0, -1):
            quotient[k - 1] = self.rows[k] + t_poly * quotient[k]
        remainder = self.rows[0] + t_poly * quotient[0]
        if not remainder.is_zero():
            return None
        return BivariatePoly(quotient)


@dataclass(frozen=True)
class CoplanarLocus:
    determinant: BivariatePoly
    diagonal_order: int
    reduced: BivariatePoly
    rational_zeros: tuple
    zero_reports: tuple
    float_hints: tuple


def coplanar_tangent_locus(curve: Curve) -> CoplanarLocus:
    """Locus of parameter pairs whose tangent lines span only a plane.

    For a parametric curve in P^3 the four rows (phi(s), phi'(s), phi(t),
    phi'(t)) are dependent exactly when the two tangent lines meet, so the
    4x4 determinant D(s, t) cuts out the coplanar pairs. D always vanishes
    along the diagonal; the reduced form divides out the full power of
    (s - t). Rational zeros found on a bounded grid are re-verified through
    defect_report, and floating-point scanning only contributes hints.
    """
    if not isinstance(curve, ParametricRational) or curve.ambient_dim != 3:
        raise NotSpaceCurve("coplanar tangents need a parametric curve in P^3")
    phi = curve.coords
    dphi = [p.derivative() for p in phi]

    def minor(i: int, j: int) -> Polynomial:
        return phi[i] * dphi[j] - phi[j] * dphi[i]

    pairs = list(itertools.combinations(range(4), 2))
    accumulated: list[Polynomial] = []
    for (i, j) in pairs:
        comp = tuple(k for k in range(4) if k not in (i, j))
        sign = (-1) ** (i + j + 1)
        ms = minor(i, j)
        mt = minor(*comp).scale(sign)
        # accumulate ms(s) * mt(t)
        rows = [mt.scale(c) for c in ms.coeffs]
        width = max(len(accumulated), len(rows))
        merged = []
        for idx in range(width):
            a = accumulated[idx] if idx < len(accumulated) else Polynomial.zero()
            b = rows[idx] if idx < len(rows) else Polynomial.zero()
            merged.append(a + b)
        accumulated = merged
    d = BivariatePoly(accumulated)

    if not d.diagonal().is_zero():
        raise NotSpaceCurve("determinant does not vanish on the diagonal")

    order = 0
    reduced = d
    while True:
        candidate = reduced.divide_once_by_s_minus_t()
        if candidate is None:
            break
        reduced = candidate
        order += 1

    zeros = []
    reports = []
    for s0 in COPLANAR_GRID:
        for t0 in COPLANAR_GRID:
            if s0 >= t0:
                continue
            if reduced(s0, t0) == 0:
                report = defect_report(
                    curve, HyperplaneSystem(),
                    Divisor.reduced([ParamValue(s0), ParamValue(t0)]),
                )
                if not report.member:
                    raise PreconditionNotMet(
                        "vanishing at (%s, %s) without membership" % (s0, t0)
                    )
                zeros.append((s0, t0))
                reports.append(report)

    hints = _coplanar_float_hints(reduced)
    return CoplanarLocus(
        determinant=d,
        diagonal_order=order,
        reduced=reduced,
        rational_zeros=tuple(zeros),
        zero_reports=tuple(reports),
        float_hints=tuple(hints),
    )


def _coplanar_float_hints(reduced: BivariatePoly, steps: int = 60) -> list:
    if reduced.is_constant():
        return []
    lo, hi = -3.0, 3.0
    hints = []
    coeff_rows = [[float(row.coeff(j)) for j in range(row.degree() + 1)] for row in reduced.rows]
    for a in range(steps + 1):
        s0 = lo + (hi - lo) * a / steps
        for b in range(steps + 1):
            t0 = lo + (hi - lo) * b / steps
            if abs(s0 - t0) < 1e-9:
                continue
            acc = 0.0
            for row in reversed(coeff_rows):
                rv = 0.0
                for c in reversed(row):
                    rv = rv * t0 + c
                acc = acc * s0 + rv
            if abs(acc) < 1e-7:
                hints.append((s0, t0))
    return hints


# ---------------------------------------------------------------------------
# exhaustive branch-point suites
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SubsetRow:
    points: tuple
    kind: str
    e: int
    f: int
    predicted_h0: int
    actual_h0: int
    member: bool

    @property
    def h0_matches(self) -> bool:
        return self.predicted_h0 == self.actual_h0


def weierstrass_subset_suite(curve: Hyperelliptic, x: int,
                             include_mixed: bool = True,
                             override_caps: bool = False) -> tuple[SubsetRow, ...]:
    """Enumerate size-x subsets of the branch locus (plus mixed families with
    a rational fiber pair when one exists) and tabulate prediction against
    computation for each."""
    g = curve.genus
    if x > g - 1:
        raise PreconditionNotMet("subset suite needs x <= g - 1")
    if not override_caps and (g > ENUMERATION_MAX_GENUS or x > ENUMERATION_MAX_X):
        raise PreconditionNotMet(
            "enumeration capped at g <= %d, x <= %d (override to force)"
            % (ENUMERATION_MAX_GENUS, ENUMERATION_MAX_X)
        )
    branch = weierstrass_points(curve)
    rows = []
    for subset in itertools.combinations(branch, x):
        rows.append(_subset_row(curve, subset, "branch-only"))
    if include_mixed and x >= 2:
        pair = _find_fiber_pair(curve)
        if pair is not None:
            if x == 2:
                rows.append(_subset_row(curve, pair, "mixed"))
            else:
                for extra in itertools.combinations(branch, x - 2):
                    rows.append(_subset_row(curve, pair + extra, "mixed"))
    return tuple(rows)


def _find_fiber_pair(curve: Hyperelliptic):
    for p in hyperelliptic_point_pool(curve):
        if p.y > 0:
            return (p, HyperPoint(p.x, -p.y))
    return None


def _subset_row(curve: Hyperelliptic, points, kind: str) -> SubsetRow:
    s = Divisor.reduced(list(points))
    finding = hyperelliptic_oracle(curve, s)
    return SubsetRow(
        points=tuple(points),
        kind=kind,
        e=finding.e,
        f=finding.f,
        predicted_h0=finding.predicted_h0,
        actual_h0=finding.actual_h0,
        member=finding.actual_member,
    )


# ---------------------------------------------------------------------------
# bitangent search on plane curves
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BitangentFindings:
    confirmed_pairs: tuple
    hyperflexes: tuple
    hints: tuple


def bitangent_search(curve: PlaneImplicit, trials: int = 40, seed=0) -> BitangentFindings:
    """Search for coinciding tangent lines on a smooth plane curve.

    The exact pass groups the bounded rational point pool by tangent line
    and confirms candidate pairs (and single points of contact order at
    least four) through the defect machinery. The float pass scans a chart
    grid for near-coincident tangent lines and reports them as hints only.
    """
    findings = []
    flexes = []
    pool = plane_point_pool(curve)
    by_line: dict[ProjectivePoint, list[PlanePoint]] = {}
    for p in pool:
        grad = curve.gradient(p)
        line = ProjectivePoint(grad)
        by_line.setdefault(line, []).append(p)
    for line, points in sorted(by_line.items(), key=lambda kv: kv[0].coords):
        for a, b in itertools.combinations(points, 2):
            report = defect_report(curve, HyperplaneSystem(), Divisor.reduced([a, b]))
            if report.member:
                findings.append(((a, b), report))
        for p in points:
            if curve.degree >= 4:
                report = scheme_report(curve, HyperplaneSystem(), Divisor([(p, 2)]))
                if report.member_scheme:
                    flexes.append((p, report))
    hints = _bitangent_float_hints(curve, trials, seed)
    return BitangentFindings(
        confirmed_pairs=tuple(findings),
        hyperflexes=tuple(flexes),
        hints=tuple(hints),
    )


def _bitangent_float_hints(curve: PlaneImplicit, trials: int, seed) -> list:
    import numpy as np

    rng = random.Random("bitangent:%s" % (seed,))
    jitter = rng.random() * 1e-3
    y_coeffs = curve.f.collect("y")
    grad = [curve.f.diff(v) for v in PlaneImplicit.VARS]
    seen: dict[tuple, tuple] = {}
    hints = []
    steps = max(4, trials)
    for i in range(steps):
        x0 = -4.0 + 8.0 * i / steps + jitter
        # coefficients of F(x0, y, 1) as a float polynomial in y
        coeffs = [_float_eval_xz(c, x0) for c in y_coeffs]
        arr = np.array(list(reversed(coeffs)), dtype=float)
        if not np.any(np.abs(arr) > 1e-12):
            continue
        for root in np.roots(arr):
            if abs(root.imag) > 1e-9:
                continue
            y0 = root.real
            gvals = [_float_eval_xyz(g, x0, y0) for g in grad]
            norm = max(abs(v) for v in gvals)
            if norm < 1e-9:
                continue
            key = tuple(round(v / norm, 3) for v in gvals)
            if key in seen and abs(seen[key][0] - x0) > 1e-6:
                hints.append((seen[key], (x0, y0)))
            else:
                seen[key] = (x0, y0)
    return hints


def _float_eval_xz(f, x0: float) -> float:
    """Float value of an (x, z)-coefficient polynomial at (x0, 1)."""
    return sum(float(c) * (x0 ** e[0]) for e, c in f.terms.items())


def _float_eval_xyz(f, x0: float, y0: float) -> float:
    return sum(float(c) * (x0 ** e[0]) * (y0 ** e[1]) for e, c in f.terms.items())
