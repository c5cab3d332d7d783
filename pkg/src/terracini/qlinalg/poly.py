"""Univariate and sparse multivariate polynomials over the rationals.

`Polynomial` stores dense coefficients, lowest degree first, and carries the
ring operations needed by the jet engine: gcd, squarefree testing, Taylor
shifts and Sylvester resultants. `MPoly` is a small sparse multivariate
polynomial used for implicit plane and space curves, Hessians and
elimination. Both are immutable.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from ..errors import ZeroPolynomial
from .matrix import Matrix


def _frac(value) -> Fraction:
    if isinstance(value, float):
        raise TypeError("float coefficients are not allowed")
    return Fraction(value)


class Polynomial:
    """Univariate polynomial with exact rational coefficients.

    The zero polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        data = [_frac(c) for c in coeffs]
        while data and data[-1] == 0:
            data.pop()
        self.coeffs = tuple(data)

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls(())

    @classmethod
    def constant(cls, c) -> "Polynomial":
        return cls((c,))

    @classmethod
    def variable(cls) -> "Polynomial":
        return cls((0, 1))

    @classmethod
    def monomial(cls, degree: int, c=1) -> "Polynomial":
        return cls([0] * degree + [c])

    @classmethod
    def from_roots(cls, roots: Iterable) -> "Polynomial":
        p = cls.constant(1)
        for r in roots:
            p = p * cls((-_frac(r), 1))
        return p

    # -- basic structure -----------------------------------------------------

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def leading(self) -> Fraction:
        if not self.coeffs:
            raise ZeroPolynomial("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __eq__(self, other) -> bool:
        return isinstance(other, Polynomial) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return "Polynomial(%s)" % (list(map(str, self.coeffs)),)

    # -- ring operations -----------------------------------------------------

    def __add__(self, other: "Polynomial") -> "Polynomial":
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return Polynomial(
            [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]
        )

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __neg__(self) -> "Polynomial":
        return Polynomial([-c for c in self.coeffs])

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        if self.is_zero() or other.is_zero():
            return Polynomial.zero()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(out)

    def scale(self, c) -> "Polynomial":
        c = _frac(c)
        return Polynomial([c * x for x in self.coeffs])

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise ValueError("negative power")
        result = Polynomial.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divmod(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        if other.is_zero():
            raise ZeroPolynomial("division by the zero polynomial")
        rem = list(self.coeffs)
        d = other.degree()
        lead = other.leading()
        quot = [Fraction(0)] * max(0, len(rem) - d)
        for shift in range(len(rem) - d - 1, -1, -1):
            factor = rem[shift + d] / lead
            if factor != 0:
                quot[shift] = factor
                for k, c in enumerate(other.coeffs):
                    rem[shift + k] -= factor * c
        return Polynomial(quot), Polynomial(rem)

    def derivative(self) -> "Polynomial":
        return Polynomial([i * c for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x) -> Fraction:
        x = _frac(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose(self, other: "Polynomial") -> "Polynomial":
        acc = Polynomial.zero()
        for c in reversed(self.coeffs):
            acc = acc * other + Polynomial.constant(c)
        return acc

    def taylor_coefficients(self, a, n: int) -> tuple[Fraction, ...]:
        """First n coefficients of p(a + s) as a polynomial in s."""
        a = _frac(a)
        current = self
        divisor = Polynomial((-a, 1))
        out = []
        for _ in range(n):
            current, rem = current.divmod(divisor)
            out.append(rem.coeff(0))
        return tuple(out)

    # -- gcd and squarefreeness ----------------------------------------------

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        return self.scale(1 / self.leading())

    def gcd(self, other: "Polynomial") -> "Polynomial":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
        return a.monic()

    def is_squarefree(self) -> bool:
        if self.is_zero():
            return False
        return self.gcd(self.derivative()).degree() <= 0

    # -- root finding ---------------------------------------------------------

    def rational_roots(self) -> tuple[Fraction, ...]:
        """All rational roots, each listed once, via the rational root theorem."""
        if self.is_zero():
            raise ZeroPolynomial("roots of the zero polynomial")
        denom_lcm = math.lcm(*(c.denominator for c in self.coeffs))
        ints = [int(c * denom_lcm) for c in self.coeffs]
        shift = 0
        while ints and ints[0] == 0:
            ints.pop(0)
            shift += 1
        roots = set()
        if shift:
            roots.add(Fraction(0))
        if len(ints) > 1:
            a0, an = abs(ints[0]), abs(ints[-1])
            for p in _divisors(a0):
                for q in _divisors(an):
                    for cand in (Fraction(p, q), Fraction(-p, q)):
                        if self(cand) == 0:
                            roots.add(cand)
        return tuple(sorted(roots))

    def splits_over_q(self) -> tuple[Fraction, ...] | None:
        """Roots with multiplicity if the polynomial splits over Q, else None."""
        if self.degree() < 1:
            return None
        remaining = self
        roots: list[Fraction] = []
        for r in self.rational_roots():
            while True:
                quot, rem = remaining.divmod(Polynomial((-r, 1)))
                if rem.is_zero():
                    remaining = quot
                    roots.append(r)
                else:
                    break
        if remaining.degree() == 0:
            return tuple(roots)
        return None

    def to_string(self, var: str = "t") -> str:
        """Render with p/q literals and explicit '*' and '^' operators."""
        if self.is_zero():
            return "0"
        parts = []
        for k in range(self.degree(), -1, -1):
            c = self.coeff(k)
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                term = var if k == 1 else "%s^%d" % (var, k)
                body = term if mag == 1 else "%s*%s" % (mag, term)
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += " %s %s" % (sign, body)
        return text


def _divisors(n: int) -> list[int]:
    if n == 0:
        return [1]
    out = set()
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.add(d)
            out.add(n // d)
        d += 1
    return sorted(out)


# ---------------------------------------------------------------------------
# resultants
# ---------------------------------------------------------------------------

def sylvester_matrix(p: Polynomial, q: Polynomial) -> Matrix:
    m, n = p.degree(), q.degree()
    size = m + n
    rows = []
    pc = list(reversed(p.coeffs))
    qc = list(reversed(q.coeffs))
    for i in range(n):
        rows.append([Fraction(0)] * i + pc + [Fraction(0)] * (size - m - 1 - i))
    for i in range(m):
        rows.append([Fraction(0)] * i + qc + [Fraction(0)] * (size - n - 1 - i))
    return Matrix(rows)


def resultant(p: Polynomial, q: Polynomial) -> Fraction:
    """Sylvester resultant of two nonzero polynomials.

    Convention: det of the Sylvester matrix with the rows of p first, which
    equals lc(p)^deg(q) * prod q(alpha) over the roots alpha of p. In
    particular resultant(t - a, t - b) = a - b, and the value vanishes
    exactly when p and q share a root over the algebraic closure.
    """
    if p.is_zero() or q.is_zero():
        raise ZeroPolynomial("resultant of the zero polynomial")
    m, n = p.degree(), q.degree()
    if m == 0:
        return p.coeff(0) ** n
    if n == 0:
        return q.coeff(0) ** m
    return sylvester_matrix(p, q).det()


def lagrange_interpolate(points: Sequence[tuple[Fraction, Fraction]]) -> Polynomial:
    """Unique polynomial of degree < len(points) through the given points."""
    result = Polynomial.zero()
    xs = [p[0] for p in points]
    for i, (xi, yi) in enumerate(points):
        if yi == 0:
            continue
        num = Polynomial.constant(1)
        den = Fraction(1)
        for j, xj in enumerate(xs):
            if j != i:
                num = num * Polynomial((-xj, 1))
                den *= xi - xj
        result = result + num.scale(yi / den)
    return result


# ---------------------------------------------------------------------------
# sparse multivariate polynomials
# ---------------------------------------------------------------------------

class MPoly:
    """Sparse multivariate polynomial over Q with named variables."""

    __slots__ = ("vars", "terms")

    def __init__(self, vars: Sequence[str], terms: Mapping[tuple[int, ...], object] | None = None):
        self.vars = tuple(vars)
        clean: dict[tuple[int, ...], Fraction] = {}
        for exps, c in (terms or {}).items():
            c = _frac(c)
            if c == 0:
                continue
            exps = tuple(int(e) for e in exps)
            if len(exps) != len(self.vars):
                raise ValueError("exponent tuple length mismatch")
            clean[exps] = clean.get(exps, Fraction(0)) + c
        self.terms = {e: c for e, c in clean.items() if c != 0}

    # -- constructors ---------------------------------------------------------

    @classmethod
    def constant(cls, vars: Sequence[str], c) -> "MPoly":
        return cls(vars, {tuple([0] * len(vars)): c})

    @classmethod
    def variable(cls, vars: Sequence[str], name: str) -> "MPoly":
        idx = tuple(vars).index(name)
        exps = [0] * len(vars)
        exps[idx] = 1
        return cls(vars, {tuple(exps): 1})

    # -- structure -------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, name: str) -> int:
        idx = self.vars.index(name)
        return max((e[idx] for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        degrees = {sum(e) for e in self.terms}
        return len(degrees) <= 1

    def __eq__(self, other) -> bool:
        return isinstance(other, MPoly) and self.vars == other.vars and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.vars, tuple(sorted(self.terms.items()))))

    def __repr__(self) -> str:
        return "MPoly(%r, %s)" % (self.vars, self.to_string())

    # -- arithmetic -------------------------------------------------------------

    def _check(self, other: "MPoly") -> None:
        if self.vars != other.vars:
            raise ValueError("variable sets differ")

    def __add__(self, other: "MPoly") -> "MPoly":
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return MPoly(self.vars, out)

    def __sub__(self, other: "MPoly") -> "MPoly":
        return self + (-other)

    def __neg__(self) -> "MPoly":
        return MPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other: "MPoly") -> "MPoly":
        self._check(other)
        out: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                out[key] = out.get(key, Fraction(0)) + c1 * c2
        return MPoly(self.vars, out)

    def scale(self, c) -> "MPoly":
        c = _frac(c)
        return MPoly(self.vars, {e: c * v for e, v in self.terms.items()})

    def __pow__(self, n: int) -> "MPoly":
        if n < 0:
            raise ValueError("negative power")
        result = MPoly.constant(self.vars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def diff(self, name: str) -> "MPoly":
        idx = self.vars.index(name)
        out: dict[tuple[int, ...], Fraction] = {}
        for e, c in self.terms.items():
            if e[idx] == 0:
                continue
            new = list(e)
            new[idx] -= 1
            out[tuple(new)] = out.get(tuple(new), Fraction(0)) + c * e[idx]
        return MPoly(self.vars, out)

    # -- evaluation and substitution ---------------------------------------------

    def __call__(self, *values) -> Fraction:
        if len(values) != len(self.vars):
            raise ValueError("expected %d values" % len(self.vars))
        vals = [_frac(v) for v in values]
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for v, k in zip(vals, e):
                if k:
                    term *= v ** k
            total += term
        return total

    def subs(self, images: Mapping[str, "MPoly"]) -> "MPoly":
        """Substitute an MPoly (over a common new variable set) for each variable."""
        new_vars = None
        for img in images.values():
            if new_vars is None:
                new_vars = img.vars
            elif img.vars != new_vars:
                raise ValueError("substitution images over different variables")
        if new_vars is None:
            raise ValueError("empty substitution")
        missing = [v for v in self.vars if v not in images]
        if missing:
            raise ValueError("no image for variables %s" % (missing,))
        # cache powers of each image
        power_cache: dict[tuple[str, int], MPoly] = {}

        def img_power(name: str, k: int) -> MPoly:
            key = (name, k)
            if key not in power_cache:
                power_cache[key] = images[name] ** k
            return power_cache[key]

        acc = MPoly(new_vars, {})
        for e, c in self.terms.items():
            term = MPoly.constant(new_vars, c)
            for name, k in zip(self.vars, e):
                if k:
                    term = term * img_power(name, k)
            acc = acc + term
        return acc

    def to_univariate(self, name: str) -> Polynomial:
        idx = self.vars.index(name)
        for e in self.terms:
            if any(k != 0 for j, k in enumerate(e) if j != idx):
                raise ValueError("polynomial involves more than one variable")
        coeffs = [Fraction(0)] * (self.degree_in(name) + 1)
        for e, c in self.terms.items():
            coeffs[e[idx]] = c
        return Polynomial(coeffs)

    def collect(self, name: str) -> list["MPoly"]:
        """Coefficients of powers of `name`, each over the remaining variables."""
        idx = self.vars.index(name)
        rest = tuple(v for v in self.vars if v != name)
        top = self.degree_in(name)
        out = [MPoly(rest, {}) for _ in range(top + 1)]
        for e, c in self.terms.items():
            rest_exps = tuple(k for j, k in enumerate(e) if j != idx)
            out[e[idx]] = out[e[idx]] + MPoly(rest, {rest_exps: c})
        return out

    def to_string(self) -> str:
        if not self.terms:
            return "0"
        keys = sorted(self.terms, key=lambda e: (-sum(e), tuple(-k for k in e)))
        parts = []
        for e in keys:
            c = self.terms[e]
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            factors = []
            for name, k in zip(self.vars, e):
                if k == 1:
                    factors.append(name)
                elif k > 1:
                    factors.append("%s^%d" % (name, k))
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += " %s %s" % (sign, body)
        return text


def resultant_eliminating(f: MPoly, g: MPoly, name: str) -> Polynomial:
    """Resultant of two bivariate polynomials with respect to `name`.

    Both inputs must involve exactly the variables (other, name). The result
    is a univariate polynomial in the other variable, computed by evaluating
    numeric Sylvester determinants at enough sample points and interpolating,
    which keeps all arithmetic exact while avoiding polynomial-entry
    elimination.
    """
    if f.is_zero() or g.is_zero():
        raise ZeroPolynomial("resultant of the zero polynomial")
    if len(f.vars) != 2 or f.vars != g.vars:
        raise ValueError("expected bivariate polynomials over common variables")
    other = next(v for v in f.vars if v != name)
    fc = [c.to_univariate(other) for c in f.collect(name)]
    gc = [c.to_univariate(other) for c in g.collect(name)]
    m, n = len(fc) - 1, len(gc) - 1
    if m < 1 and n < 1:
        # both constant in the eliminated variable
        return Polynomial.constant(1)
    fx = max(c.degree() for c in fc)
    gx = max(c.degree() for c in gc)
    bound = m * gx + n * fx + 1
    samples = []
    x0 = 0
    while len(samples) < bound:
        xv = Fraction(x0)
        # Sylvester with the formal degrees (m, n); degree drops at the sample
        # point are handled by keeping explicit zero leading coefficients.
        value = _formal_resultant([c(xv) for c in fc], [c(xv) for c in gc])
        samples.append((xv, value))
        x0 = -x0 + (0 if x0 > 0 else 1)
    return lagrange_interpolate(samples)


def _formal_resultant(pc: list[Fraction], qc: list[Fraction]) -> Fraction:
    """Determinant of the Sylvester matrix built from formal coefficient lists."""
    m, n = len(pc) - 1, len(qc) - 1
    size = m + n
    if size == 0:
        return Fraction(1)
    rows = []
    prow = list(reversed(pc))
    qrow = list(reversed(qc))
    for i in range(n):
        rows.append([Fraction(0)] * i + prow + [Fraction(0)] * (size - m - 1 - i))
    for i in range(m):
        rows.append([Fraction(0)] * i + qrow + [Fraction(0)] * (size - n - 1 - i))
    return Matrix(rows).det()
