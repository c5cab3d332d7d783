"""Curve representations, divisors, linear systems, and the jet engine.

Every curve representation knows how to expand, at a chosen smooth point and
to a requested order, the functions of a linear system in a local parameter.
Those truncated expansions are the only geometric input the defect calculus
needs: the j-th coefficient rows of the basis expansions are the linear
conditions that the length-(j+1) subscheme at the point imposes.

Local parameter conventions:

* parametric curves use t - t0 at finite parameters and 1/t at infinity;
* implicit plane curves use the affine coordinate with nonvanishing partial
  derivative, the other one being lifted with Newton iteration;
* hyperelliptic curves y^2 = f(x) use x - a away from the branch points and
  t = y at a branch point, where x(t) solves f(x) = t^2 and the canonical
  differentials x^i dx / y become x(t)^i * 2 dt / f'(x(t));
* implicit space curves support order at most two: the point itself and a
  tangent direction read off the Jacobian kernel.

Points at infinity of hyperelliptic curves are excluded throughout; all
divisors on them are affine.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import (
    AmbientMismatch,
    BadDegree,
    CommonFactor,
    NoRationalPointFound,
    NonSquarefree,
    NotSplit,
    PointNotOnCurve,
    PreconditionNotMet,
    SingularPoint,
    UnsupportedMultiplicity,
)
from .qlinalg import Matrix, MPoly, Polynomial, Series, compose_polynomial, implicit_lift

# Sampling windows for seeded random points; kept in one place so that every
# probe documents the same ranges.
PARAM_T_WINDOW = (-30, 30)
HYPER_X_WINDOW = (-12, 12)
PLANE_X_WINDOW = (-8, 8)


def _frac(value) -> Fraction:
    if isinstance(value, float):
        raise TypeError("float coordinates are not allowed")
    return Fraction(value)


def is_rational_square(q: Fraction) -> bool:
    if q < 0:
        return False
    n, d = q.numerator, q.denominator
    return math.isqrt(n) ** 2 == n and math.isqrt(d) ** 2 == d


def rational_sqrt(q: Fraction) -> Fraction:
    if not is_rational_square(q):
        raise ValueError("%s is not a rational square" % q)
    return Fraction(math.isqrt(q.numerator), math.isqrt(q.denominator))


# ---------------------------------------------------------------------------
# points
# ---------------------------------------------------------------------------

class ProjectivePoint:
    """Point of projective space, normalized so the first nonzero coordinate is 1."""

    __slots__ = ("coords",)

    def __init__(self, coords: Iterable):
        data = [_frac(c) for c in coords]
        pivot = next((c for c in data if c != 0), None)
        if pivot is None:
            raise ValueError("all coordinates are zero")
        self.coords = tuple(c / pivot for c in data)

    def __getitem__(self, i: int) -> Fraction:
        return self.coords[i]

    def __len__(self) -> int:
        return len(self.coords)

    def __eq__(self, other) -> bool:
        return isinstance(other, ProjectivePoint) and self.coords == other.coords

    def __hash__(self) -> int:
        return hash(self.coords)

    def __repr__(self) -> str:
        return "(%s)" % " : ".join(str(c) for c in self.coords)


@dataclass(frozen=True)
class ParamValue:
    """Point of a parametric curve; t=None denotes the point at infinity."""

    t: Fraction | None
    component: int = 0

    def __post_init__(self):
        if self.t is not None:
            object.__setattr__(self, "t", _frac(self.t))


@dataclass(frozen=True)
class PlanePoint:
    point: ProjectivePoint
    component: int = 0

    def __post_init__(self):
        if len(self.point) != 3:
            raise ValueError("plane points have three homogeneous coordinates")


@dataclass(frozen=True)
class HyperPoint:
    """Affine point (x, y) with y^2 = f(x); branch points have y = 0."""

    x: Fraction
    y: Fraction
    component: int = 0

    def __post_init__(self):
        object.__setattr__(self, "x", _frac(self.x))
        object.__setattr__(self, "y", _frac(self.y))


@dataclass(frozen=True)
class SpacePoint:
    point: ProjectivePoint
    component: int = 0


CurvePoint = Union[ParamValue, PlanePoint, HyperPoint, SpacePoint]


# ---------------------------------------------------------------------------
# divisors
# ---------------------------------------------------------------------------

class Divisor:
    """Finite formal sum of distinct curve points with positive multiplicities."""

    __slots__ = ("entries",)

    def __init__(self, entries: Iterable[tuple[CurvePoint, int]]):
        data = []
        seen = set()
        for point, mult in entries:
            mult = int(mult)
            if mult < 1:
                raise ValueError("multiplicities must be positive")
            if point in seen:
                raise ValueError("divisor points must be pairwise distinct: %r" % (point,))
            seen.add(point)
            data.append((point, mult))
        self.entries = tuple(data)

    @classmethod
    def reduced(cls, points: Iterable[CurvePoint]) -> "Divisor":
        return cls([(p, 1) for p in points])

    @property
    def degree(self) -> int:
        return sum(m for _, m in self.entries)

    def points(self) -> tuple[CurvePoint, ...]:
        return tuple(p for p, _ in self.entries)

    def is_reduced(self) -> bool:
        return all(m == 1 for _, m in self.entries)

    def double(self) -> "Divisor":
        return Divisor([(p, 2 * m) for p, m in self.entries])

    def add_point(self, point: CurvePoint, mult: int = 1) -> "Divisor":
        return Divisor(list(self.entries) + [(point, mult)])

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __eq__(self, other) -> bool:
        return isinstance(other, Divisor) and self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __repr__(self) -> str:
        return "Divisor(%r)" % (self.entries,)


# ---------------------------------------------------------------------------
# curve representations
# ---------------------------------------------------------------------------

class ParametricRational:
    """Rational curve given by r+1 coordinate polynomials in t."""

    def __init__(self, coords: Sequence[Polynomial], r: int | None = None,
                 degree: int | None = None):
        coords = tuple(coords)
        if len(coords) < 2:
            raise AmbientMismatch("need at least two coordinate polynomials")
        if all(p.is_zero() for p in coords):
            raise CommonFactor("all coordinates vanish identically")
        if r is not None and r != len(coords) - 1:
            raise AmbientMismatch(
                "r=%d but %d coordinates were given" % (r, len(coords))
            )
        nonzero = [p for p in coords if not p.is_zero()]
        common = nonzero[0]
        for p in nonzero[1:]:
            common = common.gcd(p)
        if common.degree() > 0:
            raise CommonFactor("coordinates share the factor %s" % common.to_string())
        d = max(p.degree() for p in nonzero)
        if d < 1:
            raise BadDegree("the parametrization is constant")
        if degree is not None and degree != d:
            raise BadDegree("stated degree %d but coordinates have degree %d" % (degree, d))
        self.coords = coords
        self.r = len(coords) - 1
        self.degree = d
        self.genus = 0

    @property
    def ambient_dim(self) -> int:
        return self.r

    def label(self) -> str:
        return "parametric(r=%d, d=%d)" % (self.r, self.degree)

    def contains(self, point: CurvePoint) -> bool:
        return isinstance(point, ParamValue)

    def point_coordinates(self, point: ParamValue) -> ProjectivePoint:
        if point.t is None:
            return ProjectivePoint([p.coeff(self.degree) for p in self.coords])
        return ProjectivePoint([p(point.t) for p in self.coords])

    def coordinate_series(self, point: CurvePoint, order: int) -> list[Series]:
        if not isinstance(point, ParamValue):
            raise PointNotOnCurve("expected a parameter value on a parametric curve")
        if point.t is None:
            # local parameter u = 1/t; coordinates are rescaled by t^(-d)
            polys = [
                Polynomial([p.coeff(self.degree - k) for k in range(self.degree + 1)])
                for p in self.coords
            ]
            series = [Series(p.taylor_coefficients(0, order), order) for p in polys]
        else:
            series = [
                Series(p.taylor_coefficients(point.t, order), order) for p in self.coords
            ]
        if order >= 2:
            jet = Matrix([[s.coeff(0) for s in series], [s.coeff(1) for s in series]])
            if jet.rank() < 2:
                raise SingularPoint("parametrization is not an immersion at %r" % (point,))
        return series


class PlaneImplicit:
    """Smooth-where-used plane curve F(x, y, z) = 0."""

    VARS = ("x", "y", "z")

    def __init__(self, f: MPoly, degree: int | None = None):
        if f.vars != self.VARS:
            raise AmbientMismatch("plane curves use variables %s" % (self.VARS,))
        if f.is_zero() or not f.is_homogeneous():
            raise BadDegree("the defining form must be homogeneous and nonzero")
        d = f.total_degree()
        if d < 1:
            raise BadDegree("the defining form is constant")
        if degree is not None and degree != d:
            raise BadDegree("stated degree %d but the form has degree %d" % (degree, d))
        self.f = f
        self.degree = d
        self.genus = (d - 1) * (d - 2) // 2

    @property
    def ambient_dim(self) -> int:
        return 2

    def label(self) -> str:
        return "plane(d=%d)" % self.degree

    def contains(self, point: CurvePoint) -> bool:
        return isinstance(point, PlanePoint) and self.f(*point.point.coords) == 0

    def gradient(self, point: PlanePoint) -> tuple[Fraction, Fraction, Fraction]:
        coords = point.point.coords
        return tuple(self.f.diff(v)(*coords) for v in self.VARS)

    def coordinate_series(self, point: CurvePoint, order: int) -> list[Series]:
        if not isinstance(point, PlanePoint) or not self.contains(point):
            raise PointNotOnCurve("point does not satisfy the plane equation")
        coords = point.point.coords
        grad = self.gradient(point)
        chart = next(i for i in range(3) if coords[i] != 0)
        affine = [i for i in range(3) if i != chart]
        # dependent variable: the affine coordinate with nonvanishing partial
        if grad[affine[1]] != 0:
            indep, dep = affine
        elif grad[affine[0]] != 0:
            dep, indep = affine
        else:
            raise SingularPoint("gradient vanishes at %r" % (point.point,))
        a0, b0 = coords[indep], coords[dep]
        images = {
            self.VARS[chart]: MPoly.constant(("w", "s"), 1),
            self.VARS[indep]: MPoly(("w", "s"), {(0, 0): a0, (0, 1): 1}),
            self.VARS[dep]: MPoly.variable(("w", "s"), "w"),
        }
        chart_eq = self.f.subs(images)
        dep_series = implicit_lift(chart_eq, b0, order, uvar="w", tvar="s")
        out: list[Series] = [None, None, None]  # type: ignore[list-item]
        out[chart] = Series.constant(1, order)
        out[indep] = Series([a0, 1], order)
        out[dep] = dep_series
        return out


class Hyperelliptic:
    """Hyperelliptic curve y^2 = f(x) with squarefree f of degree 2g+1 or 2g+2."""

    def __init__(self, f: Polynomial, genus: int | None = None,
                 split_roots: Sequence[Fraction] | None = None):
        if f.is_zero() or f.degree() < 5:
            raise BadDegree("f must have degree at least 5 (genus at least 2)")
        if not f.is_squarefree():
            raise NonSquarefree("f has a repeated root")
        g = (f.degree() - 1) // 2
        if genus is not None and genus != g:
            raise BadDegree("stated genus %d but deg f = %d gives genus %d" % (genus, f.degree(), g))
        self.f = f
        self.genus = g
        if split_roots is not None:
            roots = tuple(sorted(_frac(r) for r in split_roots))
            if Polynomial.from_roots(roots).scale(f.leading()) != f:
                raise NotSplit("the supplied roots do not factor f")
            self._roots: tuple[Fraction, ...] | None = roots
        else:
            self._roots = None

    @property
    def ambient_dim(self) -> int:
        raise AmbientMismatch("hyperelliptic curves are not embedded; use the canonical system")

    def label(self) -> str:
        return "hyperelliptic(g=%d)" % self.genus

    def contains(self, point: CurvePoint) -> bool:
        return isinstance(point, HyperPoint) and point.y ** 2 == self.f(point.x)

    def branch_roots(self) -> tuple[Fraction, ...]:
        """Roots of f, available when f splits over Q."""
        if self._roots is None:
            roots = self.f.splits_over_q()
            if roots is None:
                raise NotSplit("f does not split into rational linear factors")
            self._roots = tuple(sorted(roots))
        return self._roots

    def canonical_series(self, point: CurvePoint, order: int) -> list[Series]:
        """Expansions of the g regular differentials x^i dx / y at the point."""
        if not isinstance(point, HyperPoint) or not self.contains(point):
            raise PointNotOnCurve("point does not satisfy y^2 = f(x)")
        if point.y == 0:
            # branch point: t = y, x(t) solves f(x) = t^2 and dx/y = 2 dt / f'(x(t))
            fx = MPoly(("x", "t"), {(i, 0): c for i, c in enumerate(self.f.coeffs)})
            eq = fx + MPoly(("x", "t"), {(0, 2): -1})
            x_series = implicit_lift(eq, point.x, order, uvar="x", tvar="t")
            weight = compose_polynomial(self.f.derivative(), x_series).invert().scale(2)
        else:
            # t = x - a; y(t) is the branch of sqrt(f(a + t)) through (a, b)
            shifted = self.f.compose(Polynomial((point.x, 1)))
            eq = MPoly(("u", "t"), {(0, j): -c for j, c in enumerate(shifted.coeffs)})
            eq = eq + MPoly(("u", "t"), {(2, 0): 1})
            y_series = implicit_lift(eq, point.y, order, uvar="u", tvar="t")
            x_series = Series([point.x, 1], order)
            weight = y_series.invert()
        basis = []
        power = Series.constant(1, order)
        for i in range(self.genus):
            basis.append(power * weight)
            if i + 1 < self.genus:
                power = power * x_series
        return basis


class SpaceImplicit:
    """Curve in P^r cut out by homogeneous polynomials; jets up to order two."""

    def __init__(self, r: int, polys: Sequence[MPoly]):
        if r < 2:
            raise AmbientMismatch("space curves need ambient dimension at least 2")
        polys = tuple(polys)
        if not polys:
            raise BadDegree("at least one defining polynomial is required")
        nvars = r + 1
        for p in polys:
            if len(p.vars) != nvars:
                raise AmbientMismatch(
                    "polynomial in %d variables for ambient dimension %d" % (len(p.vars), r)
                )
            if p.is_zero() or not p.is_homogeneous():
                raise BadDegree("defining polynomials must be homogeneous and nonzero")
        self.r = r
        self.polys = polys
        self.vars = polys[0].vars

    @property
    def ambient_dim(self) -> int:
        return self.r

    def label(self) -> str:
        return "space(r=%d, %d equations)" % (self.r, len(self.polys))

    def contains(self, point: CurvePoint) -> bool:
        return isinstance(point, SpacePoint) and all(
            p(*point.point.coords) == 0 for p in self.polys
        )

    def jacobian_at(self, point: SpacePoint) -> Matrix:
        coords = point.point.coords
        return Matrix([[p.diff(v)(*coords) for v in self.vars] for p in self.polys])

    def tangent_direction(self, point: SpacePoint) -> tuple[Fraction, ...]:
        """Kernel vector of the Jacobian independent of the point itself."""
        kernel = self.jacobian_at(point).kernel_basis()
        if len(kernel) != 2:
            raise SingularPoint(
                "Jacobian kernel has dimension %d at %r" % (len(kernel), point.point)
            )
        p = point.point.coords
        for v in kernel:
            # proportional to p iff all 2x2 minors with p vanish
            if any(p[i] * v[j] - p[j] * v[i] != 0 for i in range(len(p)) for j in range(i + 1, len(p))):
                return v
        raise SingularPoint("tangent direction collapses onto the point")

    def coordinate_series(self, point: CurvePoint, order: int) -> list[Series]:
        if not isinstance(point, SpacePoint) or not self.contains(point):
            raise PointNotOnCurve("point does not satisfy the defining equations")
        if order > 2:
            raise UnsupportedMultiplicity(
                "implicit space curves support jets of order at most 2, got %d" % order
            )
        coords = point.point.coords
        if order == 1:
            return [Series([c], 1) for c in coords]
        direction = self.tangent_direction(point)
        return [Series([c, d], 2) for c, d in zip(coords, direction)]


class NodalUnion:
    """Union of curves in a common ambient space; jets live on one component."""

    def __init__(self, components: Sequence):
        components = tuple(components)
        if not components:
            raise AmbientMismatch("a union needs at least one component")
        dims = {c.ambient_dim for c in components}
        if len(dims) != 1:
            raise AmbientMismatch("components live in different ambient spaces: %s" % dims)
        self.components = components

    @property
    def ambient_dim(self) -> int:
        return self.components[0].ambient_dim

    def label(self) -> str:
        return "union(%s)" % ", ".join(c.label() for c in self.components)

    def _component(self, point: CurvePoint):
        if not 0 <= point.component < len(self.components):
            raise PointNotOnCurve("component index %d out of range" % point.component)
        return self.components[point.component]

    def contains(self, point: CurvePoint) -> bool:
        return self._component(point).contains(point)

    def coordinate_series(self, point: CurvePoint, order: int) -> list[Series]:
        return self._component(point).coordinate_series(point, order)


Curve = Union[ParametricRational, PlaneImplicit, Hyperelliptic, SpaceImplicit, NodalUnion]


# ---------------------------------------------------------------------------
# linear systems
# ---------------------------------------------------------------------------

class HyperplaneSystem:
    """The coordinate functions of the ambient projective space."""

    name = "hyperplane"

    def dim(self, curve: Curve) -> int:
        return curve.ambient_dim + 1

    def basis_series(self, curve: Curve, point: CurvePoint, order: int) -> list[Series]:
        return curve.coordinate_series(point, order)


class CanonicalHyperelliptic:
    """The regular differentials x^i dx / y, i = 0..g-1, of a hyperelliptic curve."""

    name = "canonical"

    def dim(self, curve: Curve) -> int:
        if not isinstance(curve, Hyperelliptic):
            raise AmbientMismatch("the canonical system is implemented for hyperelliptic curves")
        return curve.genus

    def basis_series(self, curve: Curve, point: CurvePoint, order: int) -> list[Series]:
        if not isinstance(curve, Hyperelliptic):
            raise AmbientMismatch("the canonical system is implemented for hyperelliptic curves")
        return curve.canonical_series(point, order)


LinearSystem = Union[HyperplaneSystem, CanonicalHyperelliptic]


# ---------------------------------------------------------------------------
# geometric helpers
# ---------------------------------------------------------------------------

def tangent_line(curve: Curve, point: CurvePoint) -> tuple[ProjectivePoint, ProjectivePoint]:
    """Two points spanning the tangent line at a smooth point."""
    series = curve.coordinate_series(point, 2)
    row0 = [s.coeff(0) for s in series]
    row1 = [s.coeff(1) for s in series]
    if Matrix([row0, row1]).rank() < 2:
        raise SingularPoint("no well-defined tangent direction at %r" % (point,))
    return ProjectivePoint(row0), ProjectivePoint(row1)


def weierstrass_points(curve: Hyperelliptic) -> tuple[HyperPoint, ...]:
    """Affine branch points (root, 0); requires f to split over Q.

    Odd-degree models are ramified at infinity as well, but that point is
    excluded along with every other point at infinity, so an odd-degree f of
    degree 2g+1 yields 2g+1 affine branch points instead of 2g+2.
    """
    return tuple(HyperPoint(r, Fraction(0)) for r in curve.branch_roots())


def hyperelliptic_point_pool(curve: Hyperelliptic,
                             window: tuple[int, int] = HYPER_X_WINDOW) -> tuple[HyperPoint, ...]:
    """Deterministic pool of rational points: branch points plus fiber points
    (a, +-sqrt f(a)) for integers a in the window with square value."""
    pool: list[HyperPoint] = []
    try:
        pool.extend(weierstrass_points(curve))
    except NotSplit:
        pass
    for a in range(window[0], window[1] + 1):
        value = curve.f(a)
        if value > 0 and is_rational_square(value):
            b = rational_sqrt(value)
            pool.append(HyperPoint(Fraction(a), b))
            pool.append(HyperPoint(Fraction(a), -b))
    unique = sorted(set(pool), key=lambda p: (p.x, p.y))
    return tuple(unique)


def plane_point_pool(curve: PlaneImplicit,
                     window: tuple[int, int] = PLANE_X_WINDOW) -> tuple[PlanePoint, ...]:
    """Rational points (a : y : 1) found by solving F(a, y, 1) = 0 over the window."""
    pool = []
    y = MPoly.variable(("y",), "y")
    for a in range(window[0], window[1] + 1):
        images = {
            "x": MPoly.constant(("y",), a),
            "y": y,
            "z": MPoly.constant(("y",), 1),
        }
        restricted = curve.f.subs(images)
        if restricted.is_zero():
            continue
        for root in restricted.to_univariate("y").rational_roots():
            pool.append(PlanePoint(ProjectivePoint((Fraction(a), root, Fraction(1)))))
    return tuple(sorted(set(pool), key=lambda p: p.point.coords))


def sample_point(curve: Curve, seed) -> CurvePoint:
    """Deterministic seeded random rational point on the curve.

    Parametric curves draw an integer parameter from PARAM_T_WINDOW;
    hyperelliptic and plane curves draw uniformly from the bounded rational
    point pools above. "General point" always means this mechanism.
    """
    rng = random.Random("sample:%s" % (seed,))
    if isinstance(curve, ParametricRational):
        return ParamValue(Fraction(rng.randint(*PARAM_T_WINDOW)))
    if isinstance(curve, Hyperelliptic):
        pool = hyperelliptic_point_pool(curve)
        if not pool:
            raise NoRationalPointFound("no rational point in the search window")
        return pool[rng.randrange(len(pool))]
    if isinstance(curve, PlaneImplicit):
        pool = plane_point_pool(curve)
        if not pool:
            raise NoRationalPointFound("no rational point in the search window")
        return pool[rng.randrange(len(pool))]
    raise PreconditionNotMet("sampling is not supported for %s" % curve.label())


# ---------------------------------------------------------------------------
# validated construction from descriptions
# ---------------------------------------------------------------------------

def make_curve(description: dict) -> Curve:
    """Build and validate a curve from a description dictionary.

    Polynomial fields may be given as strings (parsed with the documented
    expression grammar) or as already-built Polynomial/MPoly objects.
    """
    from .exprparse import parse_polynomial

    kind = description.get("type")
    if kind == "parametric":
        coords = []
        for entry in description["coords"]:
            if isinstance(entry, Polynomial):
                coords.append(entry)
            else:
                coords.append(parse_polynomial(entry, ("t",)).to_univariate("t"))
        return ParametricRational(
            coords, r=description.get("r"), degree=description.get("degree")
        )
    if kind == "plane":
        f = description["F"]
        if not isinstance(f, MPoly):
            f = parse_polynomial(f, PlaneImplicit.VARS)
        return PlaneImplicit(f, degree=description.get("degree"))
    if kind == "hyperelliptic":
        f = description["f"]
        if not isinstance(f, Polynomial):
            f = parse_polynomial(f, ("x",)).to_univariate("x")
        roots = description.get("roots")
        if roots is not None:
            roots = [Fraction(r) if not isinstance(r, str) else Fraction(r) for r in roots]
        return Hyperelliptic(f, genus=description.get("genus"), split_roots=roots)
    if kind == "space":
        r = description["r"]
        names = ("x", "y", "z", "w") if r == 3 else tuple("x%d" % i for i in range(r + 1))
        polys = []
        for entry in description["polys"]:
            polys.append(entry if isinstance(entry, MPoly) else parse_polynomial(entry, names))
        return SpaceImplicit(r, polys)
    if kind == "nodal_union":
        return NodalUnion([make_curve(part) for part in description["components"]])
    raise BadDegree("unknown curve type %r" % kind)
