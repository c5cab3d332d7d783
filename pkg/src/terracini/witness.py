"""Constructive curve families with prescribed defect behavior.

Each recipe builds an explicit rational curve together with a designated
divisor and the facts its defect report must show. The facts are re-derived
through the full jet machinery at construction time; a recipe that fails its
own verification raises instead of shipping.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .curves import (
    CanonicalHyperelliptic,
    Curve,
    Divisor,
    HyperPoint,
    Hyperelliptic,
    HyperplaneSystem,
    NodalUnion,
    ParamValue,
    ParametricRational,
    PlaneImplicit,
    PlanePoint,
    ProjectivePoint,
    SpaceImplicit,
    SpacePoint,
    is_rational_square,
    rational_sqrt,
)
from .defects import TerraciniReport, defect_report, jet_matrix, scheme_report
from .errors import (
    DegenerateImage,
    DegreeMismatch,
    EliminationDegenerate,
    NonReducedInput,
    NotASquare,
    OddDegree,
    SelfCheckError,
    SingularCurve,
)
from .qlinalg import (
    Matrix,
    MPoly,
    Polynomial,
    Series,
    evaluate_mpoly,
    resultant_eliminating,
)


@dataclass(frozen=True)
class WitnessRecipe:
    """A verified fixture: curve, designated divisor, and its checked report."""

    name: str
    parameters: dict
    curve: Curve
    divisor: Divisor
    report: TerraciniReport
    expected: dict
    scheme_variant: bool = False
    notes: dict = field(default_factory=dict)


def _verify(name: str, report: TerraciniReport, expected: dict) -> None:
    for key, value in expected.items():
        actual = getattr(report, key)
        if actual != value:
            raise SelfCheckError(
                "%s: expected %s=%r but the computation gives %r" % (name, key, value, actual)
            )


# ---------------------------------------------------------------------------
# rational curves tangent to a hyperplane
# ---------------------------------------------------------------------------

def tangent_rational_curve(r: int, d: int, contacts: Sequence) -> WitnessRecipe:
    """Rational curve of degree d in P^r whose tangent lines at the contact
    parameters all lie in low-dimensional linear subspaces.

    The first rho coordinates are the monomials 1, t, ..., t^(rho-1) and the
    remaining r+1-rho are multiples of q = prod (t - t_i)^2, so every jet row
    at a contact point vanishes on the trailing coordinates and the stacked
    2k rows have rank exactly rho. With rho = min(r, 2k - 1) the contact set
    is always a member: its double spans too little by construction.
    """
    contacts = [Fraction(c) for c in contacts]
    k = len(contacts)
    if len(set(contacts)) != k:
        raise NonReducedInput("contact parameters must be distinct")
    if r < 3:
        raise DegreeMismatch("need ambient dimension r >= 3")
    if k < 2:
        raise DegreeMismatch("need at least two contact points")
    if 2 * k > d:
        raise DegreeMismatch("degree d must be at least 2k")
    if d < r:
        raise DegreeMismatch("degree d must be at least r")
    rho = min(r, 2 * k - 1)
    j = r + 1 - rho
    extra = d - (2 * k + j - 1)
    if extra < 0:
        raise DegreeMismatch(
            "no room for %d tangency coordinates: need d >= %d" % (j, 2 * k + j - 1)
        )
    q = Polynomial.from_roots(contacts) ** 2
    coords = [Polynomial.monomial(i) for i in range(rho)]
    filler_degrees = list(range(j - 1)) + [j - 1 + extra]
    for fd in filler_degrees:
        coords.append(q * Polynomial.monomial(fd))
    curve = ParametricRational(coords, r=r, degree=d)
    # nondegeneracy: the r+1 coordinate polynomials must be linearly independent
    coeff_rows = [[p.coeff(i) for i in range(d + 1)] for p in coords]
    if Matrix(coeff_rows).rank() != r + 1:
        raise DegenerateImage("coordinate polynomials are linearly dependent")
    s = Divisor.reduced([ParamValue(c) for c in contacts])
    report = defect_report(curve, HyperplaneSystem(), s)
    expected = {"rank": rho, "defect": 2 * k - rho, "member": True}
    _verify("tangent_rational_curve", report, expected)
    # every trailing coordinate functional lies in the kernel of the jets of 2S
    stacked = jet_matrix(curve, HyperplaneSystem(), s.double())
    for idx in range(rho, r + 1):
        unit = [Fraction(i == idx) for i in range(r + 1)]
        if any(v != 0 for v in stacked.mul_vector(unit)):
            raise SelfCheckError("trailing coordinate is not annihilated by the jets")
    return WitnessRecipe(
        name="tangent-rational",
        parameters={"r": r, "d": d, "contacts": contacts},
        curve=curve,
        divisor=s,
        report=report,
        expected=expected,
    )


def witness_quartic() -> WitnessRecipe:
    """The degree-4 curve (1 : t : t^2 : t^2 (t-1)^2) with contacts {0, 1}."""
    return tangent_rational_curve(3, 4, [0, 1])


# ---------------------------------------------------------------------------
# plane curve with a total inflection point
# ---------------------------------------------------------------------------

def total_flex_plane_curve(d: int) -> WitnessRecipe:
    """Smooth plane curve of even degree d >= 4 whose tangent at p = (0:0:1)
    meets it with full contact d, so the scheme Z = (d/2) p is a scheme-variant
    member while remaining supported at a single point."""
    if d % 2 != 0 or d < 4:
        raise OddDegree("the total-flex family needs an even degree d >= 4")
    x = MPoly.variable(PlaneImplicit.VARS, "x")
    y = MPoly.variable(PlaneImplicit.VARS, "y")
    z = MPoly.variable(PlaneImplicit.VARS, "z")
    f = x ** d + y ** d - y * z ** (d - 1)
    curve = PlaneImplicit(f)
    certify_smooth_plane_curve(curve)
    p = PlanePoint(ProjectivePoint((0, 0, 1)))
    zdiv = Divisor([(p, d // 2)])
    report = scheme_report(curve, HyperplaneSystem(), zdiv)
    expected = {"rank": 2, "span_dim": 1, "member_scheme": True}
    _verify("total_flex_plane_curve", report, expected)
    return WitnessRecipe(
        name="total-flex",
        parameters={"d": d},
        curve=curve,
        divisor=zdiv,
        report=report,
        expected=expected,
        scheme_variant=True,
    )


# ---------------------------------------------------------------------------
# elliptic quartic tangent to a plane at two points
# ---------------------------------------------------------------------------

_SPACE_VARS = ("x", "y", "z", "w")


def _space_poly(terms: dict) -> MPoly:
    return MPoly(_SPACE_VARS, terms)


def tangent_elliptic_quartic() -> WitnessRecipe:
    """Intersection of two quadrics in P^3, tangent to the plane w = 0 at
    (1:0:1:0) and (1:0:-1:0); the pair of contact points is a member."""
    q1 = _space_poly({(2, 0, 0, 0): 1, (0, 2, 0, 0): 1, (0, 0, 2, 0): -1, (1, 0, 0, 1): 1})
    q2 = _space_poly({(2, 0, 0, 0): 1, (0, 2, 0, 0): 2, (0, 0, 2, 0): -1, (1, 0, 0, 1): -1})
    curve = SpaceImplicit(3, [q1, q2])
    p1 = SpacePoint(ProjectivePoint((1, 0, 1, 0)))
    p2 = SpacePoint(ProjectivePoint((1, 0, -1, 0)))
    for p in (p1, p2):
        if curve.jacobian_at(p).rank() != 2:
            raise SelfCheckError("expected Jacobian rank 2 at %r" % (p.point,))
    s = Divisor.reduced([p1, p2])
    report = defect_report(curve, HyperplaneSystem(), s)
    expected = {"rank": 3, "defect": 1, "member": True}
    _verify("tangent_elliptic_quartic", report, expected)
    return WitnessRecipe(
        name="elliptic-quartic",
        parameters={},
        curve=curve,
        divisor=s,
        report=report,
        expected=expected,
        notes={"degree": 4, "genus": 1, "tangent_plane": "w=0"},
    )


def tangent_nodal_union() -> WitnessRecipe:
    """The elliptic quartic together with a conic in the plane y = 0 tangent
    to w = 0 at (1:0:0:0); three coplanar tangencies give a member at x = 3."""
    quartic = tangent_elliptic_quartic()
    conic = ParametricRational(
        [Polynomial((1,)), Polynomial.zero(), Polynomial((0, 1)), Polynomial((0, 0, 1))],
        r=3,
    )
    union = NodalUnion([quartic.curve, conic])
    p1 = SpacePoint(ProjectivePoint((1, 0, 1, 0)), component=0)
    p2 = SpacePoint(ProjectivePoint((1, 0, -1, 0)), component=0)
    p3 = ParamValue(Fraction(0), component=1)
    s = Divisor.reduced([p1, p2, p3])
    report = defect_report(union, HyperplaneSystem(), s)
    expected = {"rank": 3, "member": True}
    _verify("tangent_nodal_union", report, expected)
    return WitnessRecipe(
        name="nodal-union",
        parameters={},
        curve=union,
        divisor=s,
        report=report,
        expected=expected,
        notes={"components": ["elliptic quartic", "conic in y=0"]},
    )


# ---------------------------------------------------------------------------
# split hyperelliptic fixtures
# ---------------------------------------------------------------------------

FIBER_SEARCH_WINDOW = (-10, 10)


def split_hyperelliptic(g: int, roots: Sequence, fiber_x=None,
                        find_fiber: bool = False) -> WitnessRecipe:
    """Hyperelliptic curve with split branch polynomial prod (x - root_i).

    With `fiber_x` (or `find_fiber=True`, which searches a small window) the
    recipe also designates a rational fiber pair (a, b), (a, -b) of the
    degree-two map; its double moves in a pencil, so the pair is a member
    whenever x = 2 stays below the genus bound. Without a fiber the
    designated divisor is a pair of branch points (one point for g = 2).
    """
    if g < 2:
        raise DegreeMismatch("genus must be at least 2")
    roots = [Fraction(r) for r in roots]
    if len(roots) not in (2 * g + 1, 2 * g + 2):
        raise DegreeMismatch(
            "genus %d needs %d or %d roots, got %d" % (g, 2 * g + 1, 2 * g + 2, len(roots))
        )
    f = Polynomial.from_roots(roots)
    curve = Hyperelliptic(f, genus=g, split_roots=roots)

    fiber_pair = None
    if fiber_x is not None:
        a = Fraction(fiber_x)
        value = f(a)
        if value == 0 or not is_rational_square(value):
            raise NotASquare("f(%s) = %s is not a nonzero rational square" % (a, value))
        b = rational_sqrt(value)
        fiber_pair = (HyperPoint(a, b), HyperPoint(a, -b))
    elif find_fiber:
        for a in range(FIBER_SEARCH_WINDOW[0], FIBER_SEARCH_WINDOW[1] + 1):
            value = f(a)
            if value != 0 and is_rational_square(value):
                b = rational_sqrt(value)
                fiber_pair = (HyperPoint(Fraction(a), b), HyperPoint(Fraction(a), -b))
                break
        if fiber_pair is None:
            raise NotASquare("no fiber abscissa with square value in the search window")

    branch = [HyperPoint(r, Fraction(0)) for r in sorted(roots)]
    if fiber_pair is not None:
        s = Divisor.reduced(list(fiber_pair))
        # 2S is a double fiber: two conditions instead of four
        expected = {"rank": 2, "h0_V_minus_2S": g - 2, "member": g >= 3}
    elif g >= 3:
        s = Divisor.reduced(branch[:2])
        expected = {"rank": 2, "h0_V_minus_2S": g - 2, "member": True}
    else:
        s = Divisor.reduced(branch[:1])
        expected = {"rank": 1, "h0_V_minus_2S": g - 1, "member": True}
    report = defect_report(curve, CanonicalHyperelliptic(), s)
    _verify("split_hyperelliptic", report, expected)
    return WitnessRecipe(
        name="split-hyperelliptic",
        parameters={"g": g, "roots": roots, "fiber_x": fiber_pair[0].x if fiber_pair else None},
        curve=curve,
        divisor=s,
        report=report,
        expected=expected,
        notes={"fiber_pair": fiber_pair},
    )


def standard_g3() -> WitnessRecipe:
    """Genus 3, branch points at 1..8."""
    return split_hyperelliptic(3, range(1, 9))


def fiber_g3() -> WitnessRecipe:
    """Genus 3 with symmetric roots and the rational fiber pair over x = 0."""
    return split_hyperelliptic(3, [1, -1, 2, -2, 3, -3, 4, -4], fiber_x=0)


def fiber_g5() -> WitnessRecipe:
    """Genus 5 with symmetric roots and the rational fiber pair over x = 0."""
    roots = [s * i for i in range(1, 7) for s in (1, -1)]
    return split_hyperelliptic(5, roots, fiber_x=0)


def fiber_g7() -> WitnessRecipe:
    """Genus 7 with symmetric roots and the rational fiber pair over x = 0."""
    roots = [s * i for i in range(1, 9) for s in (1, -1)]
    return split_hyperelliptic(7, roots, fiber_x=0)


# ---------------------------------------------------------------------------
# plane-curve smoothness and flex weights
# ---------------------------------------------------------------------------

def _random_change(rng: random.Random) -> list[list[Fraction]]:
    while True:
        m = [[Fraction(rng.randint(-3, 3)) for _ in range(3)] for _ in range(3)]
        if Matrix(m).det() != 0:
            return m


def _apply_change(f: MPoly, m: Sequence[Sequence[Fraction]]) -> MPoly:
    names = PlaneImplicit.VARS
    gens = [MPoly.variable(names, v) for v in names]
    images = {}
    for i, v in enumerate(names):
        img = MPoly(names, {})
        for jdx, gen in enumerate(gens):
            img = img + gen.scale(m[i][jdx])
        images[v] = img
    return f.subs(images)


def _binary_restriction(f: MPoly) -> Polynomial:
    """f(x, 1, 0) as a univariate polynomial in x."""
    images = {
        "x": MPoly.variable(("x",), "x"),
        "y": MPoly.constant(("x",), 1),
        "z": MPoly.constant(("x",), 0),
    }
    return f.subs(images).to_univariate("x")


def certify_smooth_plane_curve(curve: PlaneImplicit, attempts: int = 8) -> None:
    """Certify that the gradient system of F has no projective zero.

    Strategy: hunt for an exact rational singular point first (bounded search
    over gradient-resultant roots); if one exists raise SingularCurve. For the
    certificate, after a random change of coordinates eliminate x from the
    pairs (F_x, F_y) and (F_x, F_z); if the two eliminants are coprime and the
    z = 0 slice of the gradient system is empty, no singular point exists.
    Degenerate eliminations retry with a fresh change of coordinates.
    """
    f = curve.f
    fx, fy, fz = (f.diff(v) for v in PlaneImplicit.VARS)
    rng = random.Random("smooth-certificate")
    for attempt in range(attempts):
        m = _random_change(rng) if attempt else [[Fraction(i == j) for j in range(3)] for i in range(3)]
        g = _apply_change(f, m)
        gx, gy, gz = (g.diff(v) for v in PlaneImplicit.VARS)
        # z = 0 slice: common projective zero of the three binary forms?
        bx, by, bz = (_binary_restriction(p) for p in (gx, gy, gz))
        slice_clean = _binary_forms_coprime([bx, by, bz], [gx, gy, gz])
        if not slice_clean:
            continue
        # affine chart z = 1
        chart = {
            "x": MPoly.variable(("x", "y"), "x"),
            "y": MPoly.variable(("x", "y"), "y"),
            "z": MPoly.constant(("x", "y"), 1),
        }
        ax, ay, az = (p.subs(chart) for p in (gx, gy, gz))
        if any(p.is_zero() for p in (ax, ay)):
            continue
        if ax.total_degree() == 0 or ay.total_degree() == 0 or az.total_degree() == 0:
            return  # a nowhere-zero gradient component settles the chart
        r1 = resultant_eliminating(ax, ay, "x")
        r2 = resultant_eliminating(ax, az, "x")
        if r1.is_zero() or r2.is_zero():
            continue
        common = r1.gcd(r2)
        if common.degree() <= 0:
            return
        # candidate singular y-values: confirm or move on
        for y0 in common.rational_roots():
            for x0 in _common_x_candidates(ax, ay, y0):
                if ax(x0, y0) == 0 and ay(x0, y0) == 0 and az(x0, y0) == 0:
                    raise SingularCurve("singular point in chart z=1 (transformed coordinates)")
    raise EliminationDegenerate(
        "could not certify smoothness after %d coordinate changes" % attempts
    )


def _common_x_candidates(ax: MPoly, ay: MPoly, y0: Fraction):
    for poly in (ax, ay):
        images = {"x": MPoly.variable(("x",), "x"), "y": MPoly.constant(("x",), y0)}
        restricted = poly.subs(images)
        if restricted.is_zero():
            continue
        uni = restricted.to_univariate("x")
        if uni.degree() >= 1:
            yield from uni.rational_roots()


def _binary_forms_coprime(restrictions: list[Polynomial], forms: list[MPoly]) -> bool:
    """No common projective zero of the z=0 gradient slice.

    The restrictions are the forms at (x, 1, 0); the extra check at (1, 0, 0)
    covers the point the dehomogenization misses. Identically-zero slices are
    treated as degenerate (caller retries with new coordinates).
    """
    nonzero = [p for p in restrictions if not p.is_zero()]
    if len(nonzero) < 2:
        return False
    g = nonzero[0]
    for p in nonzero[1:]:
        g = g.gcd(p)
    if g.degree() > 0:
        # a genuine rational common root would witness a singular point
        for root in g.rational_roots():
            if all(p(root) == 0 for p in restrictions):
                raise SingularCurve("singular point on the line z=0 (transformed coordinates)")
        return False
    if all(form(1, 0, 0) == 0 for form in forms):
        raise SingularCurve("singular point at (1:0:0) (transformed coordinates)")
    return True


def hessian(f: MPoly) -> MPoly:
    names = PlaneImplicit.VARS
    second = [[f.diff(a).diff(b) for b in names] for a in names]
    return (
        second[0][0] * (second[1][1] * second[2][2] - second[1][2] * second[2][1])
        - second[0][1] * (second[1][0] * second[2][2] - second[1][2] * second[2][0])
        + second[0][2] * (second[1][0] * second[2][1] - second[1][1] * second[2][0])
    )


@dataclass(frozen=True)
class FlexWeightResult:
    total: int
    degree: int
    attempts: int


def flex_weight_total(curve: PlaneImplicit, seed=0, max_attempts: int = 12) -> FlexWeightResult:
    """Total intersection multiplicity of the curve with its Hessian.

    After a random change of coordinates the resultant in the chart z = 1
    collects every intersection with its multiplicity; the changes are
    redrawn until no intersection lies on z = 0 and neither curve passes
    through the point at infinity of the y direction, so the eliminant's
    degree is the full weighted count 3 d (d - 2).
    """
    d = curve.degree
    if d < 3:
        raise SingularCurve("flexes need degree at least 3")
    certify_smooth_plane_curve(curve)
    h = hessian(curve.f)
    rng = random.Random("flex:%s" % (seed,))
    for attempt in range(1, max_attempts + 1):
        m = _random_change(rng)
        g = _apply_change(curve.f, m)
        hg = _apply_change(h, m)
        if g(0, 1, 0) == 0 or hg(0, 1, 0) == 0:
            continue
        # no common zeros on the line z = 0
        gz = _binary_restriction(g)
        hz = _binary_restriction(hg)
        if gz.is_zero() or hz.is_zero() or gz.gcd(hz).degree() > 0:
            continue
        if g(1, 0, 0) == 0 and hg(1, 0, 0) == 0:
            continue
        chart = {
            "x": MPoly.variable(("x", "y"), "x"),
            "y": MPoly.variable(("x", "y"), "y"),
            "z": MPoly.constant(("x", "y"), 1),
        }
        eliminant = resultant_eliminating(g.subs(chart), hg.subs(chart), "y")
        if eliminant.is_zero():
            continue
        expected = 3 * d * (d - 2)
        if eliminant.degree() == expected:
            return FlexWeightResult(total=expected, degree=eliminant.degree(), attempts=attempt)
    raise EliminationDegenerate("no coordinate change gave a clean elimination")


def flex_weight_at(curve: PlaneImplicit, point: PlanePoint, precision: int = 16) -> int:
    """Local intersection multiplicity of the curve with its Hessian at a
    smooth point, read off the Hessian's order along the local branch."""
    series = curve.coordinate_series(point, precision)
    h = hessian(curve.f)
    values = evaluate_mpoly(h, dict(zip(PlaneImplicit.VARS, series)))
    order = values.order()
    if order is None:
        raise EliminationDegenerate("Hessian vanishes to order >= %d; raise the precision" % precision)
    return order
