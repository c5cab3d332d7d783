"""Named verification suites.

Each suite bundles exact checks around one family of fixtures and returns
one record per check. Every expectation is either a hand-derived constant,
an enumerative count, or a fact forced by an explicit construction; the
provenance tag on each check names which. All verdicts are exact: there is
no numeric tolerance anywhere.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from .curves import (
    CanonicalHyperelliptic,
    Divisor,
    HyperPoint,
    HyperplaneSystem,
    ParamValue,
    ParametricRational,
    PlaneImplicit,
    weierstrass_points,
)
from .defects import (
    canonical_membership,
    defect_report,
    extend_by_general_point,
    hyperelliptic_oracle,
    jet_matrix,
    scheme_report,
)
from .probes import (
    coplanar_tangent_locus,
    emptiness_probe,
    sample_reduced_divisor,
    weierstrass_subset_suite,
)
from .qlinalg import Matrix, MPoly, Polynomial, Series, evaluate_mpoly, implicit_lift
from .witness import (
    _apply_change,
    _random_change,
    fiber_g3,
    fiber_g5,
    fiber_g7,
    flex_weight_total,
    standard_g3,
    tangent_elliptic_quartic,
    tangent_nodal_union,
    tangent_rational_curve,
    total_flex_plane_curve,
    witness_quartic,
)


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    passed: bool
    provenance: str
    details: str


def _check(suite: str, name: str, passed: bool, provenance: str, details: str) -> CheckResult:
    return CheckResult(suite=suite, name=name, passed=bool(passed),
                       provenance=provenance, details=details)


def _rnc(r: int) -> ParametricRational:
    return ParametricRational([Polynomial.monomial(i) for i in range(r + 1)])


# ---------------------------------------------------------------------------
# suite bodies
# ---------------------------------------------------------------------------

def suite_rnc_emptiness(seed="acceptance") -> list[CheckResult]:
    out = []
    for r in (3, 5):
        probe = emptiness_probe(_rnc(r), HyperplaneSystem(), (r + 1) // 2, 200, "%s:r%d" % (seed, r))
        out.append(_check(
            "rnc-emptiness", "r=%d defect-free sampling" % r,
            probe.verdict == "all-passed",
            "rank of any short subscheme on a degree-r monomial curve is full",
            "trials=%d failures=%d" % (probe.trials, probe.failures),
        ))
    locus = coplanar_tangent_locus(_rnc(3))
    out.append(_check(
        "rnc-emptiness", "r=3 coplanar determinant is a nonzero constant",
        locus.reduced.is_constant() and locus.reduced.constant_value() != 0,
        "independent oracle: direct 4x4 determinant expansion",
        "diagonal order %d, reduced value %s" % (locus.diagonal_order, locus.reduced.constant_value()),
    ))
    return out


def suite_witness_quartic() -> list[CheckResult]:
    recipe = witness_quartic()
    report = recipe.report
    ok = report.rank == 3 and report.defect == 1 and report.member
    return [_check(
        "witness-quartic", "S={0,1} has rank 3, defect 1, member",
        ok,
        "hand row-reduction of the four jet rows; double roots kill the last coordinate",
        "report=%r" % (report,),
    )]


def suite_hyperelliptic_g3() -> list[CheckResult]:
    curve = standard_g3().curve
    out = []
    rows1 = [r for r in weierstrass_subset_suite(curve, 1, include_mixed=False)]
    out.append(_check(
        "hyperelliptic-g3", "all 8 branch points are members at x=1",
        len(rows1) == 8 and all(r.member for r in rows1),
        "each branch block has rank one",
        "members=%d/8" % sum(r.member for r in rows1),
    ))
    rows2 = [r for r in weierstrass_subset_suite(curve, 2, include_mixed=False)]
    count_ok = len(rows2) == 28 and 28 == 2 ** (3 - 1) * (2 ** 3 - 1)
    pair_ok = all(r.member and r.actual_h0 == 1 for r in rows2)
    out.append(_check(
        "hyperelliptic-g3", "all 28 branch pairs are members with h0(K-2S)=1",
        count_ok and pair_ok,
        "binomial count C(8,2)=28 equals the odd theta-characteristic count for g=3",
        "pairs=%d members=%d" % (len(rows2), sum(r.member for r in rows2)),
    ))
    branch = weierstrass_points(curve)
    high = []
    for x in (3, 4):
        for subset in itertools.combinations(branch, x):
            high.append(defect_report(curve, CanonicalHyperelliptic(), Divisor.reduced(subset)).member)
    out.append(_check(
        "hyperelliptic-g3", "every tested query at x >= g is a non-member",
        not any(high),
        "the twisted canonical bundle has negative degree for x >= g",
        "queries=%d members=%d" % (len(high), sum(high)),
    ))
    return out


def suite_oracle_agreement(seed="acceptance") -> list[CheckResult]:
    out = []
    g3 = standard_g3().curve
    rows = []
    for x in (1, 2):
        rows.extend(r for r in weierstrass_subset_suite(g3, x, include_mixed=False))
    out.append(_check(
        "oracle-agreement", "g=3 exhaustive branch-only agreement",
        all(r.h0_matches for r in rows),
        "divisibility count: branch conditions drop one row each",
        "subsets=%d mismatches=%d" % (len(rows), sum(not r.h0_matches for r in rows)),
    ))
    g7 = fiber_g7().curve
    branch7 = weierstrass_points(g7)
    mismatches = 0
    for i in range(100):
        rng = random.Random("oracle:%s:%d" % (seed, i))
        x = rng.randint(1, 6)
        subset = rng.sample(branch7, x)
        finding = hyperelliptic_oracle(g7, Divisor.reduced(subset))
        if not finding.h0_matches:
            mismatches += 1
    out.append(_check(
        "oracle-agreement", "g=7 sampled branch-only agreement (100 seeds)",
        mismatches == 0,
        "divisibility count: branch conditions drop one row each",
        "mismatches=%d/100" % mismatches,
    ))
    pair = fiber_g3().notes["fiber_pair"]
    finding = hyperelliptic_oracle(fiber_g3().curve, Divisor.reduced(list(pair)))
    out.append(_check(
        "oracle-agreement", "g=3 fiber pair mismatch is reproduced and flagged",
        finding.predicted_h0 == 0 and finding.actual_h0 == 1 and not finding.h0_matches
        and finding.membership_predicted and finding.actual_member,
        "the double of a fiber moves in a pencil, one more section than predicted",
        "predicted=%d actual=%d" % (finding.predicted_h0, finding.actual_h0),
    ))
    return out


def suite_rr_dichotomy(seed="acceptance") -> list[CheckResult]:
    fixtures = {3: standard_g3().curve, 5: fiber_g5().curve, 7: fiber_g7().curve}
    disagreements = 0
    for i in range(500):
        rng = random.Random("dichotomy:%s:%d" % (seed, i))
        g = rng.choice((3, 5, 7))
        curve = fixtures[g]
        x = rng.randint(1, g - 1)
        s = sample_reduced_divisor(curve, x, rng)
        verdict = canonical_membership(curve, s)
        report = defect_report(curve, CanonicalHyperelliptic(), s)
        if verdict.member != report.member:
            disagreements += 1
    return [_check(
        "rr-dichotomy", "two-clause verdict equals rank verdict on 500 seeded queries",
        disagreements == 0,
        "dimension count h0(2S) = 2x - g + 1 + h0(K-2S) on the same jet matrix",
        "disagreements=%d/500" % disagreements,
    )]


def suite_gonality_fiber() -> list[CheckResult]:
    recipe = fiber_g5()
    pair = recipe.notes["fiber_pair"]
    report = defect_report(recipe.curve, CanonicalHyperelliptic(), Divisor.reduced(list(pair)))
    ok = report.member and 2 * 2 < recipe.curve.genus
    return [_check(
        "gonality-fiber", "g=5 rational fiber pair is a member at x=2 < g/2",
        ok and report.h0_V_minus_2S == 3,
        "constructed fiber of the degree-two map; its double moves in a pencil",
        "report=%r" % (report,),
    )]


def suite_extension(seed="acceptance") -> list[CheckResult]:
    out = []
    g7 = fiber_g7().curve
    base = Divisor.reduced([HyperPoint(1, 0), HyperPoint(2, 0)])
    failures = []
    for i in range(50):
        report = extend_by_general_point(g7, CanonicalHyperelliptic(), base, "%s:can:%d" % (seed, i))
        if not report.member:
            failures.append("%s:can:%d" % (seed, i))
    out.append(_check(
        "extension", "canonical g=7 extensions stay members (50 seeds)",
        not failures,
        "rank can grow by at most two while the degree bound holds",
        "failing seeds: %s" % (failures if failures else "none"),
    ))
    witness = tangent_rational_curve(5, 6, [0, 1])
    failures = []
    for i in range(50):
        report = extend_by_general_point(
            witness.curve, HyperplaneSystem(), witness.divisor, "%s:hyp:%d" % (seed, i)
        )
        if not report.member:
            failures.append("%s:hyp:%d" % (seed, i))
    out.append(_check(
        "extension", "hyperplane r=5 extensions stay members (50 seeds)",
        not failures,
        "rank can grow by at most two while 2x < r",
        "failing seeds: %s" % (failures if failures else "none"),
    ))
    return out


def suite_total_flex() -> list[CheckResult]:
    out = []
    for d in (4, 6):
        recipe = total_flex_plane_curve(d)
        report = recipe.report
        out.append(_check(
            "total-flex", "d=%d scheme (d/2)p is a scheme-variant member with span 1" % d,
            report.member_scheme and report.span_dim == 1,
            "the tangent line meets the curve only at p, with full contact d",
            "report=%r" % (report,),
        ))
    return out


def suite_flex_weight(seed="acceptance") -> list[CheckResult]:
    out = []
    fermat4 = PlaneImplicit(MPoly(("x", "y", "z"), {(4, 0, 0): 1, (0, 4, 0): 1, (0, 0, 4): 1}))
    flex4 = total_flex_plane_curve(4).curve
    cubic = PlaneImplicit(MPoly(("x", "y", "z"), {(3, 0, 0): 1, (0, 3, 0): 1, (0, 0, 3): 1}))
    for label, curve, expected in (
        ("Fermat quartic", fermat4, 24),
        ("total-flex quartic", flex4, 24),
        ("Fermat cubic", cubic, 9),
    ):
        result = flex_weight_total(curve, seed=seed)
        invariant = True
        rng = random.Random("flexinv:%s:%s" % (seed, label))
        for k in range(3):
            changed = PlaneImplicit(_apply_change(curve.f, _random_change(rng)))
            if flex_weight_total(changed, seed="%s:%d" % (seed, k)).total != expected:
                invariant = False
        out.append(_check(
            "flex-weight", "%s has total flex weight %d, coordinate-invariant" % (label, expected),
            result.total == expected and invariant,
            "eliminant degree of the curve against its Hessian",
            "total=%d attempts=%d" % (result.total, result.attempts),
        ))
    return out


def suite_tangency_fixtures() -> list[CheckResult]:
    out = []
    quartic = tangent_elliptic_quartic()
    out.append(_check(
        "tangency-fixtures", "elliptic quartic pair of plane tangencies is a member at x=2",
        quartic.report.member and quartic.report.x == 2,
        "all four jet rows lie in the plane w=0 by construction",
        "report=%r" % (quartic.report,),
    ))
    union = tangent_nodal_union()
    out.append(_check(
        "tangency-fixtures", "nodal union with three coplanar tangencies is a member at x=3",
        union.report.member and union.report.x == 3,
        "all six jet rows lie in the plane w=0 by construction",
        "report=%r" % (union.report,),
    ))
    return out


def suite_infrastructure(seed="acceptance") -> list[CheckResult]:
    out = []
    wq = witness_quartic().curve
    s = Divisor.reduced([ParamValue(Fraction(0)), ParamValue(Fraction(1))])

    def transformed(curve, m):
        new = []
        for row in m:
            acc = Polynomial.zero()
            for c, p in zip(row, curve.coords):
                acc = acc + p.scale(c)
            new.append(acc)
        return ParametricRational(new)

    rng = random.Random("projective:%s" % seed)
    failures = 0
    for _ in range(20):
        while True:
            m = [[Fraction(rng.randint(-4, 4)) for _ in range(4)] for _ in range(4)]
            if Matrix(m).det() != 0:
                break
        before = jet_matrix(wq, HyperplaneSystem(), s.double()).rank()
        after = jet_matrix(transformed(wq, m), HyperplaneSystem(), s.double()).rank()
        failures += before != after
    out.append(_check(
        "infrastructure", "projective invariance of jet ranks (20 seeds)",
        failures == 0,
        "an invertible change of coordinates mixes jet columns invertibly",
        "failures=%d" % failures,
    ))

    rng = random.Random("repar:%s" % seed)
    failures = 0
    for _ in range(20):
        c = Fraction(rng.randint(1, 3), rng.randint(4, 9))
        sub = Polynomial([0, 1, c])
        curve2 = ParametricRational([p.compose(sub) for p in wq.coords])
        us = [Fraction(0), Fraction(1)]
        d_orig = Divisor.reduced([ParamValue(sub(u)) for u in us])
        d_new = Divisor.reduced([ParamValue(u) for u in us])
        r1 = jet_matrix(wq, HyperplaneSystem(), d_orig.double()).rank()
        r2 = jet_matrix(curve2, HyperplaneSystem(), d_new.double()).rank()
        failures += r1 != r2
    out.append(_check(
        "infrastructure", "reparametrization invariance of jet ranks (20 seeds)",
        failures == 0,
        "a chart change acts triangularly on each jet block",
        "failures=%d" % failures,
    ))

    failures = 0
    for i in range(50):
        rng = random.Random("lift:%s:%d" % (seed, i))
        while True:
            terms = {}
            for du in range(3):
                for dt in range(3):
                    if rng.random() < 0.7:
                        terms[(du, dt)] = Fraction(rng.randint(-5, 5))
            g = MPoly(("u", "t"), terms)
            u0 = Fraction(rng.randint(-3, 3))
            f = g - MPoly.constant(("u", "t"), g(u0, 0))
            if f.diff("u")(u0, 0) != 0:
                break
        n = rng.randint(2, 9)
        lifted = implicit_lift(f, u0, n)
        residual = evaluate_mpoly(f, {"u": lifted, "t": Series([0, 1], n)})
        longer = implicit_lift(f, u0, n + 3)
        if not residual.is_zero() or longer.coeffs[:n] != lifted.coeffs:
            failures += 1
    out.append(_check(
        "infrastructure", "implicit lift residuals vanish and prefixes are stable (50 seeds)",
        failures == 0,
        "Newton iteration doubles the valuation of the residual",
        "failures=%d" % failures,
    ))

    from .fileio import render_document, report_to_json
    report = defect_report(wq, HyperplaneSystem(), s)
    doc1 = render_document({"report": report_to_json(report)}, ("byte-identity",))
    doc2 = render_document({"report": report_to_json(report)}, ("byte-identity",))
    out.append(_check(
        "infrastructure", "repeated report rendering is byte-identical",
        doc1 == doc2,
        "sorted-key serialization with exact rational strings",
        "bytes=%d" % len(doc1),
    ))
    return out


SUITES = {
    "rnc-emptiness": suite_rnc_emptiness,
    "witness-quartic": suite_witness_quartic,
    "hyperelliptic-g3": suite_hyperelliptic_g3,
    "oracle-agreement": suite_oracle_agreement,
    "rr-dichotomy": suite_rr_dichotomy,
    "gonality-fiber": suite_gonality_fiber,
    "extension": suite_extension,
    "total-flex": suite_total_flex,
    "flex-weight": suite_flex_weight,
    "tangency-fixtures": suite_tangency_fixtures,
    "infrastructure": suite_infrastructure,
}


def run_suite(name: str) -> list[CheckResult]:
    if name == "all":
        results = []
        for key in SUITES:
            results.extend(SUITES[key]())
        return results
    if name not in SUITES:
        raise KeyError("unknown suite %r; available: %s" % (name, ", ".join(sorted(SUITES))))
    return SUITES[name]()
