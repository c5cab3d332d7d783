import random
from fractions import Fraction

import pytest

from terracini import (
    CanonicalHyperelliptic,
    Divisor,
    HyperplaneSystem,
    ParamValue,
    PlaneImplicit,
    PlanePoint,
    ProjectivePoint,
)
from terracini.errors import NotSpaceCurve, PreconditionNotMet
from terracini.probes import (
    bitangent_search,
    coplanar_tangent_locus,
    emptiness_probe,
    generic_rank_probe,
    sample_reduced_divisor,
    weierstrass_subset_suite,
)
from terracini.qlinalg import Matrix, MPoly
from terracini.witness import fiber_g3, standard_g3, total_flex_plane_curve, witness_quartic

# seed found by scanning: trial 20 draws exactly the planted pair {0, 1}
PLANTED_SEED, PLANTED_TRIAL = 92, 20


# --- emptiness probes -----------------------------------------------------------

def test_rnc_emptiness_small(rnc3, rnc5, hyperplane):
    assert emptiness_probe(rnc3, hyperplane, 2, 40, "unit").verdict == "all-passed"
    assert emptiness_probe(rnc5, hyperplane, 3, 40, "unit").verdict == "all-passed"


def test_probe_results_are_reproducible(rnc3, hyperplane):
    a = emptiness_probe(rnc3, hyperplane, 2, 25, "same")
    b = emptiness_probe(rnc3, hyperplane, 2, 25, "same")
    assert a == b


def test_witness_quartic_planted_counterexample(quartic_witness, hyperplane):
    probe = emptiness_probe(quartic_witness.curve, hyperplane, 2, PLANTED_TRIAL + 1, PLANTED_SEED)
    assert probe.verdict == "counterexample-found"
    assert PLANTED_TRIAL in probe.failing_seeds
    rng = random.Random("emptiness:%s:%d" % (PLANTED_SEED, PLANTED_TRIAL))
    drawn = sample_reduced_divisor(quartic_witness.curve, 2, rng)
    assert sorted(p.t for p in drawn.points()) == [0, 1]


# --- generic rank probes -----------------------------------------------------------

def test_generic_rank_rnc(rnc3, hyperplane):
    assert generic_rank_probe(rnc3, hyperplane, (2, 2), 30, 0).verdict == "all-passed"
    assert generic_rank_probe(rnc3, hyperplane, (1, 1, 1), 30, 0).verdict == "all-passed"


def test_generic_rank_hyperelliptic(g3_curve):
    probe = generic_rank_probe(g3_curve, CanonicalHyperelliptic(), (1, 1), 30, 0)
    assert probe.verdict == "all-passed"


def test_generic_rank_guards(g3_curve):
    with pytest.raises(PreconditionNotMet):
        generic_rank_probe(g3_curve, CanonicalHyperelliptic(), (0, 1), 5, 0)


# --- coplanar tangents ----------------------------------------------------------------

def test_coplanar_locus_rnc(rnc3):
    locus = coplanar_tangent_locus(rnc3)
    assert locus.reduced.is_constant() and locus.reduced.constant_value() != 0
    assert locus.rational_zeros == ()
    assert locus.diagonal_order == 4


def test_coplanar_locus_witness(quartic_witness):
    locus = coplanar_tangent_locus(quartic_witness.curve)
    assert locus.reduced(Fraction(0), Fraction(1)) == 0
    assert (Fraction(0), Fraction(1)) in locus.rational_zeros
    assert all(report.member for report in locus.zero_reports)


def test_coplanar_determinant_matches_direct_expansion(quartic_witness):
    curve = quartic_witness.curve
    locus = coplanar_tangent_locus(curve)
    phi = curve.coords
    dphi = [p.derivative() for p in phi]
    rng = random.Random("coplanar-oracle")
    for _ in range(5):
        s0, t0 = Fraction(rng.randint(-9, 9)), Fraction(rng.randint(-9, 9))
        direct = Matrix([
            [p(s0) for p in phi],
            [p(s0) for p in dphi],
            [p(t0) for p in phi],
            [p(t0) for p in dphi],
        ]).det()
        assert locus.determinant(s0, t0) == direct


def test_coplanar_diagonal_vanishes(quartic_witness):
    locus = coplanar_tangent_locus(quartic_witness.curve)
    assert locus.determinant.diagonal().is_zero()


def test_coplanar_symmetry_up_to_sign(quartic_witness):
    locus = coplanar_tangent_locus(quartic_witness.curve)
    swapped = locus.reduced.swapped()
    sign = (-1) ** locus.diagonal_order
    assert swapped == locus.reduced.scale(sign)


def test_coplanar_requires_space_curve(g3_curve):
    with pytest.raises(NotSpaceCurve):
        coplanar_tangent_locus(g3_curve)


# --- branch subset suites ------------------------------------------------------------------

def test_subset_suite_counts(g3_curve):
    rows1 = weierstrass_subset_suite(g3_curve, 1, include_mixed=False)
    rows2 = weierstrass_subset_suite(g3_curve, 2, include_mixed=False)
    assert len(rows1) == 8 and all(r.member for r in rows1)
    assert len(rows2) == 28
    assert all(r.member and r.actual_h0 == 1 and r.h0_matches for r in rows2)


def test_subset_suite_mixed_rows_flag_mismatch():
    curve = fiber_g3().curve
    rows = weierstrass_subset_suite(curve, 2)
    mixed = [r for r in rows if r.kind == "mixed"]
    assert mixed and all(r.f == 1 for r in mixed)
    assert all(not r.h0_matches for r in mixed)  # the documented fiber-pair undercount


def test_subset_suite_caps():
    from terracini.witness import split_hyperelliptic

    big = split_hyperelliptic(5, [s * i for i in range(1, 7) for s in (1, -1)]).curve
    with pytest.raises(PreconditionNotMet):
        weierstrass_subset_suite(big, 2)
    rows = weierstrass_subset_suite(big, 2, include_mixed=False, override_caps=True)
    assert len(rows) == 66  # C(12, 2)


def test_subset_suite_requires_x_below_genus(g3_curve):
    with pytest.raises(PreconditionNotMet):
        weierstrass_subset_suite(g3_curve, 3)


# --- bitangents ---------------------------------------------------------------------------------

def test_conic_has_no_bitangents():
    conic = PlaneImplicit(MPoly(("x", "y", "z"), {(2, 0, 0): 1, (0, 2, 0): 1, (0, 0, 2): -1}))
    findings = bitangent_search(conic, trials=8, seed=0)
    assert findings.confirmed_pairs == () and findings.hyperflexes == ()


def test_planted_bitangent_found(planted_bitangent_quartic):
    findings = bitangent_search(planted_bitangent_quartic, trials=8, seed=0)
    pairs = {frozenset((a.point.coords, b.point.coords)) for (a, b), _ in findings.confirmed_pairs}
    planted = frozenset((
        ProjectivePoint((0, 0, 1)).coords,
        ProjectivePoint((1, 0, 1)).coords,
    ))
    assert planted in pairs
    assert all(rep.member for _, rep in findings.confirmed_pairs)


def test_total_flex_hyperflex_found():
    curve = total_flex_plane_curve(4).curve
    findings = bitangent_search(curve, trials=8, seed=0)
    flex_points = {p.point.coords for p, _ in findings.hyperflexes}
    assert ProjectivePoint((0, 0, 1)).coords in flex_points
    assert all(rep.member_scheme for _, rep in findings.hyperflexes)
