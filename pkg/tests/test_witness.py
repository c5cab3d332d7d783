import random
from fractions import Fraction

import pytest

from terracini import Divisor, HyperplaneSystem, PlaneImplicit, jet_matrix
from terracini.errors import (
    DegreeMismatch,
    NonSquarefree,
    NotASquare,
    OddDegree,
    SingularCurve,
)
from terracini.qlinalg import MPoly
from terracini.witness import (
    _apply_change,
    _random_change,
    certify_smooth_plane_curve,
    fiber_g3,
    fiber_g5,
    fiber_g7,
    flex_weight_at,
    flex_weight_total,
    split_hyperelliptic,
    standard_g3,
    tangent_elliptic_quartic,
    tangent_nodal_union,
    tangent_rational_curve,
    total_flex_plane_curve,
    witness_quartic,
)


# --- tangent rational curves ---------------------------------------------------

def test_witness_quartic_facts():
    recipe = witness_quartic()
    assert [p.to_string("t") for p in recipe.curve.coords] == [
        "1", "t", "t^2", "t^4 - 2*t^3 + t^2"
    ]
    assert recipe.report.rank == 3 and recipe.report.defect == 1 and recipe.report.member


def test_r5_witness_member_below_half_ambient():
    recipe = tangent_rational_curve(5, 6, [0, 1])
    assert recipe.report.member and 2 * recipe.report.x < 5
    assert recipe.curve.degree == 6


def test_three_contacts_in_p3():
    recipe = tangent_rational_curve(3, 6, [0, 1, 2])
    assert recipe.report.member and recipe.report.x == 3


def test_trailing_coordinates_annihilated():
    recipe = tangent_rational_curve(4, 8, [0, 1, -1])
    stacked = jet_matrix(recipe.curve, HyperplaneSystem(), recipe.divisor.double())
    # the last-coordinate functional lies in the kernel of the doubled jets
    last = [Fraction(i == recipe.curve.r) for i in range(recipe.curve.r + 1)]
    assert all(v == 0 for v in stacked.mul_vector(last))
    assert len(stacked.kernel_basis()) >= 1


def test_contact_guards():
    with pytest.raises(DegreeMismatch):
        tangent_rational_curve(3, 3, [0, 1])  # 2k > d
    with pytest.raises(DegreeMismatch):
        tangent_rational_curve(5, 4, [0, 1])  # d < r
    with pytest.raises(DegreeMismatch):
        tangent_rational_curve(3, 4, [0])  # only one contact


# --- total flex family -----------------------------------------------------------

def test_total_flex_even_degrees():
    for d in (4, 6):
        recipe = total_flex_plane_curve(d)
        assert recipe.report.member_scheme and recipe.report.span_dim == 1
        assert recipe.divisor.degree == d // 2


def test_total_flex_rejects_odd():
    with pytest.raises(OddDegree):
        total_flex_plane_curve(5)


def test_total_flex_tangent_line_cuts_d_times():
    # F restricted to y = 0 is x^d: the tangent line meets only at p
    recipe = total_flex_plane_curve(4)
    f = recipe.curve.f
    restricted = f.subs({
        "x": MPoly.variable(("x", "z"), "x"),
        "y": MPoly.constant(("x", "z"), 0),
        "z": MPoly.variable(("x", "z"), "z"),
    })
    assert restricted == MPoly(("x", "z"), {(4, 0): 1})


# --- space fixtures ---------------------------------------------------------------

def test_elliptic_quartic_fixture():
    recipe = tangent_elliptic_quartic()
    assert recipe.report.member and recipe.report.defect == 1
    for point in recipe.divisor.points():
        assert recipe.curve.jacobian_at(point).rank() == 2


def test_nodal_union_fixture():
    recipe = tangent_nodal_union()
    assert recipe.report.member and recipe.report.x == 3
    stacked = jet_matrix(recipe.curve, HyperplaneSystem(), recipe.divisor.double())
    assert all(row[3] == 0 for row in stacked.entries())


# --- split hyperelliptic fixtures ---------------------------------------------------

def test_standard_g3_fixture():
    recipe = standard_g3()
    assert recipe.curve.genus == 3
    assert recipe.report.member


def test_fiber_fixtures_have_pairs():
    for builder, g in ((fiber_g3, 3), (fiber_g5, 5), (fiber_g7, 7)):
        recipe = builder()
        pair = recipe.notes["fiber_pair"]
        assert pair is not None and pair[0].x == pair[1].x == 0
        assert recipe.curve.genus == g


def test_split_guards():
    with pytest.raises(NonSquarefree):
        split_hyperelliptic(3, [1, 1, 2, 3, 4, 5, 6, 7])
    with pytest.raises(NotASquare):
        split_hyperelliptic(3, range(1, 9), fiber_x=0)  # 8! is not a square
    with pytest.raises(DegreeMismatch):
        split_hyperelliptic(3, [1, 2, 3])


def test_find_fiber_search():
    recipe = split_hyperelliptic(3, [1, -1, 2, -2, 3, -3, 4, -4], find_fiber=True)
    assert recipe.notes["fiber_pair"] is not None


# --- smoothness certificates ----------------------------------------------------------

def test_certificate_accepts_smooth_curves(planted_bitangent_quartic):
    fermat = PlaneImplicit(MPoly(("x", "y", "z"), {(4, 0, 0): 1, (0, 4, 0): 1, (0, 0, 4): 1}))
    certify_smooth_plane_curve(fermat)
    certify_smooth_plane_curve(planted_bitangent_quartic)


def test_certificate_rejects_cuspidal_cubic():
    # z y^2 = x^3 has a cusp at (0:0:1)
    cusp = PlaneImplicit(MPoly(("x", "y", "z"), {(3, 0, 0): 1, (0, 2, 1): -1}))
    with pytest.raises(SingularCurve):
        certify_smooth_plane_curve(cusp)


# --- flex weights -----------------------------------------------------------------------

def test_flex_weight_constants():
    fermat4 = PlaneImplicit(MPoly(("x", "y", "z"), {(4, 0, 0): 1, (0, 4, 0): 1, (0, 0, 4): 1}))
    cubic = PlaneImplicit(MPoly(("x", "y", "z"), {(3, 0, 0): 1, (0, 3, 0): 1, (0, 0, 3): 1}))
    assert flex_weight_total(fermat4).total == 24
    assert flex_weight_total(total_flex_plane_curve(4).curve).total == 24
    assert flex_weight_total(cubic).total == 9


def test_flex_weight_invariant_under_coordinate_changes():
    fermat4 = PlaneImplicit(MPoly(("x", "y", "z"), {(4, 0, 0): 1, (0, 4, 0): 1, (0, 0, 4): 1}))
    rng = random.Random("flex-invariance")
    for k in range(3):
        moved = PlaneImplicit(_apply_change(fermat4.f, _random_change(rng)))
        assert flex_weight_total(moved, seed=k).total == 24


def test_hyperflex_concentrates_weight():
    recipe = total_flex_plane_curve(4)
    weight = flex_weight_at(recipe.curve, recipe.divisor.points()[0])
    assert weight >= 2


def test_flex_weight_rejects_singular():
    cusp = PlaneImplicit(MPoly(("x", "y", "z"), {(3, 0, 0): 1, (0, 2, 1): -1}))
    with pytest.raises(SingularCurve):
        flex_weight_total(cusp)
