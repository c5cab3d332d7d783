"""Defect and membership calculus for finite subschemes of curves.

For a divisor Z = sum m_i p_i and a linear system V of dimension dim_V, the
jet matrix stacks, for each point, the first m_i coefficient rows of the
basis expansions. Its rank is the number of independent conditions Z imposes
on V, so dim V(-Z) = dim_V - rank. A reduced set S of x points is a member
of the Terracini locus exactly when the doubled scheme 2S underperforms:

    rank(jets of 2S) < dim_V   and   rank(jets of 2S) < 2x,

equivalently dim V(-2S) > max(dim_V - 2x, 0). The defect is 2x - rank. The
scheme variant accepts non-reduced Z of degree x and applies the same rank
test to 2Z: the span of 2Z has dimension rank - 1, so membership reads
span(2Z) <= 2x - 2 together with V(-2Z) != 0.
"""

from __future__ import annotations

from dataclasses import dataclass

from .curves import (
    CanonicalHyperelliptic,
    Curve,
    CurvePoint,
    Divisor,
    Hyperelliptic,
    LinearSystem,
    sample_point,
)
from .errors import NonReducedInput, PreconditionNotMet, SelfCheckError
from .qlinalg import Matrix


@dataclass(frozen=True)
class TerraciniReport:
    """Outcome of one (curve, system, divisor) rank query."""

    x: int
    dim_V: int
    rank: int
    h0_V_minus_2S: int
    defect: int
    span_dim: int
    member: bool
    member_scheme: bool

    def __post_init__(self):
        ok = (
            self.h0_V_minus_2S == self.dim_V - self.rank
            and self.defect == 2 * self.x - self.rank
            and self.span_dim == self.rank - 1
            and self.member == (self.rank < self.dim_V and self.rank < 2 * self.x)
            and self.member_scheme == (self.rank <= 2 * self.x - 1 and self.rank < self.dim_V)
        )
        if not ok:
            raise SelfCheckError("inconsistent report bookkeeping: %r" % (self,))


def _report(x: int, dim_v: int, rank: int) -> TerraciniReport:
    return TerraciniReport(
        x=x,
        dim_V=dim_v,
        rank=rank,
        h0_V_minus_2S=dim_v - rank,
        defect=2 * x - rank,
        span_dim=rank - 1,
        member=(rank < dim_v and rank < 2 * x),
        member_scheme=(rank <= 2 * x - 1 and rank < dim_v),
    )


def jet_block(curve: Curve, system: LinearSystem, point: CurvePoint, order: int) -> Matrix:
    """Jet conditions at one point: order rows, one column per basis element."""
    if order < 1:
        raise ValueError("jet order must be positive")
    series = system.basis_series(curve, point, order)
    return Matrix([[s.coeff(j) for s in series] for j in range(order)])


def jet_matrix(curve: Curve, system: LinearSystem, divisor: Divisor) -> Matrix:
    """Vertical stack of jet blocks; one row per unit of divisor degree."""
    rows = []
    for point, mult in divisor:
        rows.extend(jet_block(curve, system, point, mult).entries())
    return Matrix(rows)


def defect_report(curve: Curve, system: LinearSystem, s: Divisor) -> TerraciniReport:
    """Terracini report for a reduced set S: doubles S and ranks the jets."""
    if not s.is_reduced():
        raise NonReducedInput("defect_report needs a reduced divisor")
    rank = jet_matrix(curve, system, s.double()).rank()
    return _report(s.degree, system.dim(curve), rank)


def scheme_report(curve: Curve, system: LinearSystem, z: Divisor) -> TerraciniReport:
    """Scheme-variant report for a possibly non-reduced Z of degree x."""
    rank = jet_matrix(curve, system, z.double()).rank()
    return _report(z.degree, system.dim(curve), rank)


# ---------------------------------------------------------------------------
# hyperelliptic canonical bookkeeping
# ---------------------------------------------------------------------------

def h0_of_double(curve: Hyperelliptic, s: Divisor,
                 canonical_report: TerraciniReport | None = None) -> int:
    """h0(2S) from Riemann-Roch: 2x - g + 1 + h0(K - 2S)."""
    if canonical_report is None:
        canonical_report = defect_report(curve, CanonicalHyperelliptic(), s)
    return 2 * s.degree - curve.genus + 1 + canonical_report.h0_V_minus_2S


@dataclass(frozen=True)
class CanonicalVerdict:
    member: bool
    branch: str
    h0_2s: int
    h0_k_minus_2s: int


def canonical_membership(curve: Hyperelliptic, s: Divisor) -> CanonicalVerdict:
    """Membership via the dichotomy on 2x against g.

    For 2x < g the criterion is h0(2S) > 1; for 2x >= g it is
    h0(K - 2S) > 0. Both readings come from the same canonical jet matrix
    and must agree with the rank characterization, which is asserted.
    """
    report = defect_report(curve, CanonicalHyperelliptic(), s)
    h0_k = report.h0_V_minus_2S
    h0_2s = h0_of_double(curve, s, report)
    x = s.degree
    if 2 * x < curve.genus:
        member = h0_2s > 1
        branch = "2x<g: h0(2S)>1"
    else:
        member = h0_k > 0
        branch = "2x>=g: h0(K-2S)>0"
    if member != report.member:
        raise SelfCheckError(
            "dichotomy verdict %s disagrees with rank verdict %s" % (member, report.member)
        )
    return CanonicalVerdict(member=member, branch=branch, h0_2s=h0_2s, h0_k_minus_2s=h0_k)


@dataclass(frozen=True)
class OracleFinding:
    """Combinatorial prediction against the computed canonical numbers.

    e counts branch points in S and f counts fiber pairs (two points with the
    same x and opposite y). The predicted value g - 2x + e + f is a known
    undercount whenever f > 0 (each fiber pair relaxes two conditions, not
    one), so mismatches are reported rather than hidden.
    """

    e: int
    f: int
    predicted_h0: int
    membership_predicted: bool
    actual_h0: int
    actual_member: bool

    @property
    def h0_matches(self) -> bool:
        return self.predicted_h0 == self.actual_h0

    @property
    def membership_matches(self) -> bool:
        return self.membership_predicted == self.actual_member


def hyperelliptic_oracle(curve: Hyperelliptic, s: Divisor) -> OracleFinding:
    """Predict h0(K - 2S) combinatorially and compare with linear algebra."""
    if not s.is_reduced():
        raise NonReducedInput("the oracle needs a reduced divisor")
    x = s.degree
    if x > curve.genus - 1:
        raise PreconditionNotMet("oracle requires x <= g - 1")
    points = s.points()
    e = sum(1 for p in points if p.y == 0)
    f = 0
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            a, b = points[i], points[j]
            if a.x == b.x and a.y == -b.y and a.y != 0:
                f += 1
    report = defect_report(curve, CanonicalHyperelliptic(), s)
    return OracleFinding(
        e=e,
        f=f,
        predicted_h0=curve.genus - 2 * x + e + f,
        membership_predicted=(e > 0 or f > 0),
        actual_h0=report.h0_V_minus_2S,
        actual_member=report.member,
    )


# ---------------------------------------------------------------------------
# extension by a general point
# ---------------------------------------------------------------------------

def extend_by_general_point(curve: Curve, system: LinearSystem, s: Divisor,
                            seed) -> TerraciniReport:
    """Report for S plus one seeded random point.

    Preconditions: S itself is a member, and the degree bound holds that
    makes the extension automatic (2x < r for the hyperplane system on a
    curve in P^r, 2x <= g - 2 for the canonical system). Under these bounds
    the doubled extension gains at most two rank units while 2x gains
    exactly two, so the extended set must again be a member; the report is
    still recomputed from scratch.
    """
    x = s.degree
    if isinstance(system, CanonicalHyperelliptic):
        if not isinstance(curve, Hyperelliptic):
            raise PreconditionNotMet("canonical extension needs a hyperelliptic curve")
        if 2 * x > curve.genus - 2:
            raise PreconditionNotMet(
                "canonical extension needs 2x <= g - 2 (got 2x=%d, g=%d)" % (2 * x, curve.genus)
            )
    else:
        r = curve.ambient_dim
        if 2 * x >= r:
            raise PreconditionNotMet(
                "hyperplane extension needs 2x < r (got 2x=%d, r=%d)" % (2 * x, r)
            )
    base = defect_report(curve, system, s)
    if not base.member:
        raise PreconditionNotMet("the base set is not a Terracini member")
    existing = set(s.points())
    for attempt in range(200):
        candidate = sample_point(curve, "extend:%s:%d" % (seed, attempt))
        if candidate not in existing:
            return defect_report(curve, system, s.add_point(candidate))
    raise PreconditionNotMet("could not sample a point outside S")
