import random
from fractions import Fraction

import pytest

from terracini import (
    CanonicalHyperelliptic,
    Divisor,
    HyperPoint,
    Hyperelliptic,
    HyperplaneSystem,
    NodalUnion,
    ParamValue,
    ParametricRational,
    PlaneImplicit,
    PlanePoint,
    Polynomial,
    ProjectivePoint,
    SpaceImplicit,
    SpacePoint,
    jet_block,
    jet_matrix,
    make_curve,
    sample_point,
    tangent_line,
    weierstrass_points,
)
from terracini.curves import hyperelliptic_point_pool, plane_point_pool
from terracini.errors import (
    AmbientMismatch,
    BadDegree,
    CommonFactor,
    NoRationalPointFound,
    NonSquarefree,
    NotSplit,
    PointNotOnCurve,
    SingularPoint,
    UnsupportedMultiplicity,
)
from terracini.qlinalg import Matrix, MPoly


# --- constructors -----------------------------------------------------------

def test_make_curve_rational_normal_cubic():
    curve = make_curve({"type": "parametric", "r": 3, "coords": ["1", "t", "t^2", "t^3"]})
    assert curve.degree == 3 and curve.r == 3


def test_make_curve_hyperelliptic_genus_from_degree():
    roots = ",".join(str(i) for i in range(1, 9))
    curve = make_curve({"type": "hyperelliptic",
                        "f": "*".join("(x - %d)" % i for i in range(1, 9))})
    assert isinstance(curve, Hyperelliptic)
    assert curve.genus == 3


def test_make_curve_plane_quartic():
    curve = make_curve({"type": "plane", "F": "x^4 + y^4 - y*z^3"})
    assert curve.degree == 4 and curve.genus == 3


def test_common_factor_rejected():
    with pytest.raises(CommonFactor):
        ParametricRational([Polynomial([0, 1]), Polynomial([0, 0, 1])])


def test_duplicate_roots_rejected():
    with pytest.raises(NonSquarefree):
        Hyperelliptic(Polynomial.from_roots([1, 1, 2, 3, 4]) * Polynomial.from_roots([5]))


def test_bad_degree_rejected():
    with pytest.raises(BadDegree):
        Hyperelliptic(Polynomial.from_roots([1, 2, 3]))
    with pytest.raises(BadDegree):
        PlaneImplicit(MPoly(("x", "y", "z"), {(1, 0, 0): 1, (0, 0, 0): 1}))


def test_ambient_mismatch_in_union():
    conic = ParametricRational([Polynomial([1]), Polynomial([0, 1]), Polynomial([0, 0, 1])])
    quartic_space = ParametricRational([Polynomial.monomial(i) for i in range(4)])
    with pytest.raises(AmbientMismatch):
        NodalUnion([conic, quartic_space])


# --- jet engine -------------------------------------------------------------

def test_parametric_jet_block_at_zero(rnc3, hyperplane):
    block = jet_block(rnc3, hyperplane, ParamValue(Fraction(0)), 2)
    assert block.entries() == ((1, 0, 0, 0), (0, 1, 0, 0))


def test_parametric_jet_at_infinity(rnc3, hyperplane):
    block = jet_block(rnc3, hyperplane, ParamValue(None), 2)
    # reversed coordinates: (u^3, u^2, u, 1) at u = 0
    assert block.entries() == ((0, 0, 0, 1), (0, 0, 1, 0))


def test_weierstrass_block_rank_one(g3_curve):
    block = jet_block(g3_curve, CanonicalHyperelliptic(), HyperPoint(1, 0), 2)
    assert block.rank() == 1
    row0, row1 = block.entries()
    assert row1 == (0, 0, 0)
    assert row0[0] == row0[1] == row0[2] != 0


def test_plane_jet_total_flex():
    curve = make_curve({"type": "plane", "F": "x^4 + y^4 - y*z^3"})
    p = PlanePoint(ProjectivePoint((0, 0, 1)))
    block = jet_block(curve, HyperplaneSystem(), p, 4)
    assert block.rank() == 2
    assert block.entries()[0] == (0, 0, 1)
    assert block.entries()[1] == (1, 0, 0)
    assert block.entries()[2] == (0, 0, 0)


def test_point_not_on_curve_rejected():
    curve = make_curve({"type": "plane", "F": "x^4 + y^4 - y*z^3"})
    with pytest.raises(PointNotOnCurve):
        jet_block(curve, HyperplaneSystem(), PlanePoint(ProjectivePoint((1, 1, 1))), 1)


def test_hyper_point_must_satisfy_equation(g3_curve):
    with pytest.raises(PointNotOnCurve):
        jet_block(g3_curve, CanonicalHyperelliptic(), HyperPoint(0, 1), 1)


def test_space_jets_capped_at_two():
    q1 = MPoly(("x", "y", "z", "w"), {(2, 0, 0, 0): 1, (0, 2, 0, 0): 1, (0, 0, 2, 0): -1, (1, 0, 0, 1): 1})
    q2 = MPoly(("x", "y", "z", "w"), {(2, 0, 0, 0): 1, (0, 2, 0, 0): 2, (0, 0, 2, 0): -1, (1, 0, 0, 1): -1})
    curve = SpaceImplicit(3, [q1, q2])
    p = SpacePoint(ProjectivePoint((1, 0, 1, 0)))
    assert jet_block(curve, HyperplaneSystem(), p, 2).rows == 2
    with pytest.raises(UnsupportedMultiplicity):
        jet_block(curve, HyperplaneSystem(), p, 3)


def test_singular_point_detected_on_parametric():
    # cusp at t = 0: all derivatives vanish there
    cusp = ParametricRational([Polynomial([1]), Polynomial([0, 0, 1]), Polynomial([0, 0, 0, 1])])
    with pytest.raises(SingularPoint):
        jet_block(cusp, HyperplaneSystem(), ParamValue(Fraction(0)), 2)


# --- tangent lines -----------------------------------------------------------

def test_tangent_line_rnc(rnc3):
    p, direction = tangent_line(rnc3, ParamValue(Fraction(0)))
    assert p.coords == (1, 0, 0, 0)
    assert direction.coords == (0, 1, 0, 0)


def test_tangent_line_witness_quartic_in_hyperplane(quartic_witness):
    for t in (0, 1):
        p, direction = tangent_line(quartic_witness.curve, ParamValue(Fraction(t)))
        assert p.coords[3] == 0 and direction.coords[3] == 0


def test_tangent_line_elliptic_quartic():
    from terracini.witness import tangent_elliptic_quartic

    recipe = tangent_elliptic_quartic()
    p, direction = tangent_line(recipe.curve, recipe.divisor.points()[0])
    assert p.coords[3] == 0 and direction.coords[3] == 0


# --- branch points and sampling ----------------------------------------------

def test_weierstrass_points_even_model(g3_curve):
    points = weierstrass_points(g3_curve)
    assert [p.x for p in points] == list(range(1, 9))
    assert all(p.y == 0 for p in points)


def test_weierstrass_points_odd_model():
    curve = Hyperelliptic(Polynomial.from_roots(range(1, 8)))
    assert curve.genus == 3
    assert len(weierstrass_points(curve)) == 7


def test_not_split_detected():
    f = Polynomial([-2, 0, 1]) * Polynomial.from_roots([1, 2, 3])
    curve = Hyperelliptic(f)
    with pytest.raises(NotSplit):
        weierstrass_points(curve)


def test_sampling_is_deterministic(rnc3, g3_curve):
    assert sample_point(rnc3, 7) == sample_point(rnc3, 7)
    assert sample_point(g3_curve, "s") == sample_point(g3_curve, "s")


def test_hyperelliptic_pool_contains_fiber_pair():
    from terracini.witness import fiber_g3

    curve = fiber_g3().curve
    pool = hyperelliptic_point_pool(curve)
    assert HyperPoint(0, 24) in pool and HyperPoint(0, -24) in pool
    assert sample_point(curve, 0) in pool


def test_plane_pool_finds_known_point():
    curve = make_curve({"type": "plane", "F": "x^4 + y^4 - y*z^3"})
    pool = plane_point_pool(curve)
    assert PlanePoint(ProjectivePoint((0, 0, 1))) in pool


def test_no_rational_point_found():
    # x^4 + y^4 + z^4 has no rational points at all
    fermat = make_curve({"type": "plane", "F": "x^4 + y^4 + z^4"})
    with pytest.raises(NoRationalPointFound):
        sample_point(fermat, 0)


# --- invariance properties ----------------------------------------------------

def test_projective_invariance_of_ranks(quartic_witness, s01, hyperplane):
    curve = quartic_witness.curve
    rng = random.Random("projective-test")
    base = jet_matrix(curve, hyperplane, s01.double()).rank()
    for _ in range(20):
        while True:
            m = [[Fraction(rng.randint(-4, 4)) for _ in range(4)] for _ in range(4)]
            if Matrix(m).det() != 0:
                break
        coords = []
        for row in m:
            acc = Polynomial.zero()
            for c, p in zip(row, curve.coords):
                acc = acc + p.scale(c)
            coords.append(acc)
        moved = ParametricRational(coords)
        assert jet_matrix(moved, hyperplane, s01.double()).rank() == base


def test_reparametrization_invariance_of_ranks(quartic_witness, hyperplane):
    curve = quartic_witness.curve
    rng = random.Random("repar-test")
    for _ in range(20):
        c = Fraction(rng.randint(1, 3), rng.randint(4, 9))
        sub = Polynomial([0, 1, c])
        reparam = ParametricRational([p.compose(sub) for p in curve.coords])
        us = [Fraction(0), Fraction(1)]
        original = Divisor.reduced([ParamValue(sub(u)) for u in us])
        relabeled = Divisor.reduced([ParamValue(u) for u in us])
        r1 = jet_matrix(curve, hyperplane, original.double()).rank()
        r2 = jet_matrix(reparam, hyperplane, relabeled.double()).rank()
        assert r1 == r2


def test_hyperplane_rank_gives_span_dimension(rnc3, hyperplane, s01):
    # dim of the span of Z is rank - 1; V(-Z) has dim dim V - rank
    m = jet_matrix(rnc3, hyperplane, s01)
    assert m.rank() == 2  # two points span a line
    assert len(m.kernel_basis()) == 4 - 2
