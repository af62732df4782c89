"""Exact rational scalars and dense univariate polynomials.

Scalars are :class:`fractions.Fraction` throughout; ``Rational`` is just an
alias so signatures read naturally. Polynomials are stored densely, lowest
degree first, and are always kept in canonical form (no trailing zeros), so
structural equality is mathematical equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Union

Rational = Fraction
Scalar = Union[int, Fraction]


def as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


class Poly:
    """Immutable polynomial with rational coefficients.

    ``Poly([1, 0, 3])`` is ``1 + 3 k^2``. The zero polynomial has no
    coefficients and degree -1.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [as_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "_c", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def constant(cls, c: Scalar) -> Poly:
        return cls([c])

    @classmethod
    def monomial(cls, n: int, c: Scalar = 1) -> Poly:
        return cls([0] * n + [c])

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._c

    @property
    def degree(self) -> int:
        return len(self._c) - 1

    @property
    def leading(self) -> Fraction:
        return self._c[-1] if self._c else Fraction(0)

    def is_zero(self) -> bool:
        return not self._c

    def coeff(self, d: int) -> Fraction:
        if d < 0:
            raise ValueError("degree must be non-negative")
        return self._c[d] if d < len(self._c) else Fraction(0)

    def __call__(self, x: Scalar) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self._c):
            acc = acc * x + c
        return acc

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self._c == other._c
        if isinstance(other, (int, Fraction)):
            return self._c == Poly([other])._c
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._c)

    def __add__(self, other) -> Poly:
        other = _lift(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._c, other._c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly(-c for c in self._c)

    def __sub__(self, other) -> Poly:
        other = _lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> Poly:
        return (-self) + other

    def __mul__(self, other) -> Poly:
        if isinstance(other, (int, Fraction)):
            return Poly(c * other for c in self._c)
        if not isinstance(other, Poly):
            return NotImplemented
        if not self._c or not other._c:
            return Poly()
        out = [Fraction(0)] * (len(self._c) + len(other._c) - 1)
        for i, a in enumerate(self._c):
            if a:
                for j, b in enumerate(other._c):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def derivative(self) -> Poly:
        return Poly(i * c for i, c in enumerate(self._c) if i)

    def antiderivative(self) -> Poly:
        """Antiderivative with zero constant term."""
        return Poly([0] + [c / (i + 1) for i, c in enumerate(self._c)])

    def shift(self, s: Scalar) -> Poly:
        """Return q with q(k) = p(k - s)."""
        s = as_rational(s)
        if s == 0 or len(self._c) <= 1:
            return self
        return _shifted(self, s)

    def integrate(self, lower: Scalar, upper: Scalar) -> Fraction:
        anti = self.antiderivative()
        return anti(as_rational(upper)) - anti(as_rational(lower))

    def format(self, var: str = "k") -> str:
        if not self._c:
            return "0"
        parts = []
        for d in range(len(self._c) - 1, -1, -1):
            c = self._c[d]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if d == 0:
                body = str(mag)
            else:
                mono = var if d == 1 else f"{var}^{d}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"Poly([{', '.join(str(c) for c in self._c)}])"


def _lift(x):
    if isinstance(x, Poly):
        return x
    if isinstance(x, (int, Fraction)):
        return Poly([x])
    return NotImplemented


K = Poly([0, 1])


@lru_cache(maxsize=1 << 16)
def _shifted(p: Poly, s: Fraction) -> Poly:
    # Taylor shift by repeated synthetic division (Horner's change of origin).
    cs = list(p.coeffs)
    n = len(cs)
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            cs[j] -= s * cs[j + 1]
    return Poly(cs)


@lru_cache(maxsize=None)
def binom_poly(d: int) -> Poly:
    """The polynomial k -> C(k + d, d) = (k+1)(k+2)...(k+d)/d!."""
    if d < 0:
        raise ValueError("d must be non-negative")
    p = Poly([1])
    for j in range(1, d + 1):
        p = p * Poly([1, Fraction(1, j)])
    return p


def poly_shift(p: Poly, s: Scalar) -> Poly:
    return p.shift(s)


def poly_integrate(p: Poly, lower: Scalar, upper: Scalar) -> Fraction:
    return p.integrate(lower, upper)


def poly_coeff(p: Poly, d: int) -> Fraction:
    return p.coeff(d)


@dataclass(frozen=True)
class GAffinePoly:
    """``const + g * g_part``: a polynomial in k whose genus dependence is affine."""

    const: Poly
    g_part: Poly

    @classmethod
    def of(cls, const: Poly, g_part: Poly | None = None) -> GAffinePoly:
        return cls(const, g_part if g_part is not None else Poly())

    def at_genus(self, g: Scalar) -> Poly:
        return self.const + self.g_part * as_rational(g)

    def __call__(self, k: Scalar, g: Scalar) -> Fraction:
        return self.const(k) + as_rational(g) * self.g_part(k)

    def coeff(self, d: int) -> tuple[Fraction, Fraction]:
        """Degree-d coefficient as the pair (constant term, g-coefficient)."""
        return self.const.coeff(d), self.g_part.coeff(d)

    @property
    def degree(self) -> int:
        return max(self.const.degree, self.g_part.degree)

    def shift(self, s: Scalar) -> GAffinePoly:
        return GAffinePoly(self.const.shift(s), self.g_part.shift(s))

    def __add__(self, other: GAffinePoly) -> GAffinePoly:
        if not isinstance(other, GAffinePoly):
            return NotImplemented
        return GAffinePoly(self.const + other.const, self.g_part + other.g_part)

    def __sub__(self, other: GAffinePoly) -> GAffinePoly:
        if not isinstance(other, GAffinePoly):
            return NotImplemented
        return GAffinePoly(self.const - other.const, self.g_part - other.g_part)

    def __neg__(self) -> GAffinePoly:
        return GAffinePoly(-self.const, -self.g_part)

    def __mul__(self, c) -> GAffinePoly:
        if isinstance(c, GAffinePoly):
            return NotImplemented
        return GAffinePoly(self.const * c, self.g_part * c)

    __rmul__ = __mul__

    def __str__(self) -> str:
        if self.g_part.is_zero():
            return self.const.format()
        return f"({self.const.format()}) + g*({self.g_part.format()})"
