"""Truncated power series and implicit-function lifting.

A `Series` is a tuple of rational coefficients in a local parameter t,
together with its precision N: the object represents a function known
modulo t^N. Arithmetic truncates to the smaller precision of the operands
and never silently extends it; asking for a coefficient at or beyond the
precision is an error.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from ..errors import NonRegularPoint, NonUnit
from .poly import MPoly, Polynomial


def _frac(value) -> Fraction:
    if isinstance(value, float):
        raise TypeError("float coefficients are not allowed")
    return Fraction(value)


class Series:
    """Truncated power series with exact rational coefficients."""

    __slots__ = ("coeffs", "precision")

    def __init__(self, coeffs: Iterable, precision: int | None = None):
        data = [_frac(c) for c in coeffs]
        if precision is None:
            precision = len(data)
        if precision < 1:
            raise ValueError("precision must be at least 1")
        if len(data) > precision:
            data = data[:precision]
        else:
            data.extend([Fraction(0)] * (precision - len(data)))
        self.coeffs = tuple(data)
        self.precision = precision

    @classmethod
    def constant(cls, c, precision: int) -> "Series":
        return cls([c], precision)

    @classmethod
    def parameter(cls, precision: int) -> "Series":
        """The series t itself."""
        return cls([0, 1], precision)

    def coeff(self, k: int) -> Fraction:
        if not 0 <= k < self.precision:
            raise ValueError("coefficient %d beyond stated precision %d" % (k, self.precision))
        return self.coeffs[k]

    def truncate(self, precision: int) -> "Series":
        if precision > self.precision:
            raise ValueError("cannot extend precision by truncation")
        return Series(self.coeffs[:precision], precision)

    def order(self) -> int | None:
        """Index of the first nonzero coefficient, or None if zero to precision."""
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        return None

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Series)
            and self.precision == other.precision
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.coeffs, self.precision))

    def __repr__(self) -> str:
        return "Series(%s, precision=%d)" % (list(map(str, self.coeffs)), self.precision)

    def __add__(self, other: "Series") -> "Series":
        n = min(self.precision, other.precision)
        return Series([self.coeffs[i] + other.coeffs[i] for i in range(n)], n)

    def __sub__(self, other: "Series") -> "Series":
        n = min(self.precision, other.precision)
        return Series([self.coeffs[i] - other.coeffs[i] for i in range(n)], n)

    def __neg__(self) -> "Series":
        return Series([-c for c in self.coeffs], self.precision)

    def __mul__(self, other: "Series") -> "Series":
        n = min(self.precision, other.precision)
        out = [Fraction(0)] * n
        for i, a in enumerate(self.coeffs[:n]):
            if a == 0:
                continue
            for j in range(n - i):
                b = other.coeffs[j]
                if b != 0:
                    out[i + j] += a * b
        return Series(out, n)

    def scale(self, c) -> "Series":
        c = _frac(c)
        return Series([c * x for x in self.coeffs], self.precision)

    def shift(self, k: int) -> "Series":
        """Multiply by t^k, keeping the precision."""
        if k < 0:
            raise ValueError("negative shift")
        return Series([Fraction(0)] * k + list(self.coeffs), self.precision)

    def __pow__(self, n: int) -> "Series":
        if n < 0:
            raise ValueError("negative power")
        result = Series.constant(1, self.precision)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def invert(self) -> "Series":
        """Multiplicative inverse modulo t^precision; requires a unit."""
        a0 = self.coeffs[0]
        if a0 == 0:
            raise NonUnit("cannot invert a series with zero constant term")
        n = self.precision
        out = [Fraction(0)] * n
        out[0] = 1 / a0
        for k in range(1, n):
            acc = Fraction(0)
            for i in range(1, k + 1):
                acc += self.coeffs[i] * out[k - i]
            out[k] = -acc / a0
        return Series(out, n)


def compose_polynomial(p: Polynomial, s: Series) -> Series:
    """p(s(t)) truncated to the precision of s."""
    acc = Series.constant(0, s.precision)
    for c in reversed(p.coeffs):
        acc = acc * s + Series.constant(c, s.precision)
    return acc


def evaluate_mpoly(f: MPoly, assignment: dict[str, Series]) -> Series:
    """Evaluate a multivariate polynomial on series arguments."""
    missing = [v for v in f.vars if v not in assignment]
    if missing:
        raise ValueError("no series assigned to %s" % (missing,))
    precision = min(s.precision for s in assignment.values())
    powers: dict[tuple[str, int], Series] = {}

    def power(name: str, k: int) -> Series:
        key = (name, k)
        if key not in powers:
            powers[key] = assignment[name].truncate(precision) ** k
        return powers[key]

    total = Series.constant(0, precision)
    for exps, c in f.terms.items():
        term = Series.constant(c, precision)
        for name, k in zip(f.vars, exps):
            if k:
                term = term * power(name, k)
        total = total + term
    return total


def implicit_lift(f: MPoly, u0, n: int, uvar: str | None = None, tvar: str | None = None) -> Series:
    """Solve f(u(t), t) = 0 mod t^n for u(t) with u(0) = u0.

    The equation variable defaults to the first of f's two variables and the
    parameter to the second. Requires f(u0, 0) = 0 and a nonzero partial
    derivative with respect to u at (u0, 0); Newton iteration with doubling
    precision then converges quadratically. The returned series satisfies
    the equation exactly modulo t^n (asserted before returning), and
    recomputing with a larger n reproduces all earlier coefficients.
    """
    if len(f.vars) != 2:
        raise ValueError("implicit_lift expects a bivariate polynomial")
    uvar = uvar or f.vars[0]
    tvar = tvar or f.vars[1]
    if {uvar, tvar} != set(f.vars):
        raise ValueError("variable names do not match the polynomial")
    if n < 1:
        raise ValueError("precision must be at least 1")
    u0 = _frac(u0)
    if f(*(u0 if v == uvar else 0 for v in f.vars)) != 0:
        raise NonRegularPoint("f(u0, 0) != 0: the point is not on the locus")
    fu = f.diff(uvar)
    if fu(*(u0 if v == uvar else 0 for v in f.vars)) == 0:
        raise NonRegularPoint("partial derivative vanishes at (u0, 0)")

    u = Series.constant(u0, 1)
    while u.precision < n:
        prec = min(2 * u.precision, n)
        u = Series(u.coeffs, prec)
        env = {uvar: u, tvar: Series.parameter(prec)}
        value = evaluate_mpoly(f, env)
        deriv = evaluate_mpoly(fu, env)
        u = u - value * deriv.invert()
    residual = evaluate_mpoly(f, {uvar: u, tvar: Series.parameter(n)})
    if not residual.is_zero():
        raise NonRegularPoint("Newton iteration failed to cancel the residual")
    return u
