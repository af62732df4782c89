"""Euler characteristics and C*-weights of O(k) on a projective bundle P(E) -> C.

Everything is pushed down to the curve and evaluated with Riemann-Roch, so the
results are exact polynomials in k whose dependence on the genus g is affine.
Each closed form has a term-by-term summation twin (the ``*_brute`` functions)
used as an independent check.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from math import comb

from .errors import DomainError
from .exact import GAffinePoly, Poly, binom_poly

ABSORPTION_SUMS = ("S1", "S2", "S3")


@dataclass(frozen=True)
class BundleOnCurve:
    """A locally free sheaf on the curve, remembered by rank and degree only."""

    rank: int
    degree: int

    def __post_init__(self):
        if not isinstance(self.rank, int) or self.rank < 1:
            raise DomainError(f"rank must be a positive integer, got {self.rank!r}")
        if not isinstance(self.degree, int):
            raise DomainError(f"degree must be an integer, got {self.degree!r}")

    @property
    def slope(self) -> Fraction:
        return Fraction(self.degree, self.rank)

    def __str__(self) -> str:
        return f"(rank {self.rank}, degree {self.degree})"


@dataclass(frozen=True)
class SplitPair:
    """E = F + Q with F the subbundle being tested."""

    total: BundleOnCurve
    sub: BundleOnCurve

    def __post_init__(self):
        if self.sub.rank >= self.total.rank:
            raise DomainError(
                f"subbundle rank {self.sub.rank} must be smaller than rank {self.total.rank}"
            )

    @classmethod
    def from_parts(cls, sub: BundleOnCurve, quotient: BundleOnCurve) -> SplitPair:
        total = BundleOnCurve(sub.rank + quotient.rank, sub.degree + quotient.degree)
        return cls(total, sub)

    @property
    def quotient(self) -> BundleOnCurve:
        return BundleOnCurve(self.total.rank - self.sub.rank, self.total.degree - self.sub.degree)


@lru_cache(maxsize=4096)
def h0_proj(E: BundleOnCurve) -> GAffinePoly:
    """chi(O_P(E)(k)) = C(e-1+k, e-1) (-k mu(E) + 1 - g)."""
    b = binom_poly(E.rank - 1)
    return GAffinePoly(b * Poly([1, -E.slope]), -b)


def dim_weight_space(pair: SplitPair, k: int, i: int) -> tuple[Fraction, Fraction]:
    """dim W_{-i} in H^0(O_P(E)(k)) as (constant term, coefficient of g)."""
    if not 0 <= i <= k:
        raise DomainError(f"weight index i={i} outside [0, {k}]")
    F, Q = pair.sub, pair.quotient
    mult = comb(F.rank - 1 + i, F.rank - 1) * comb(Q.rank - 1 + k - i, Q.rank - 1)
    const = mult * (1 - i * F.slope - (k - i) * Q.slope)
    return Fraction(const), Fraction(-mult)


def absorption_closed(f: int, q: int, k: int) -> tuple[int, int, int]:
    """Closed forms of the weighted sums S1, S2, S3 (see :func:`absorption_brute`)."""
    e = f + q
    s1 = f * comb(e + k - 1, e)
    s2 = f * (f + 1) * comb(e + k - 1, e + 1) + s1
    s3 = f * q * comb(e + k - 1, e + 1)
    return s1, s2, s3


def absorption_brute(f: int, q: int, k: int, which: str) -> int:
    """Sum over i of i^p (k-i)^s C(f-1+i, f-1) C(q-1+k-i, q-1), term by term.

    ``which`` selects (p, s): S1 = (1, 0), S2 = (2, 0), S3 = (1, 1).
    """
    p, s = {"S1": (1, 0), "S2": (2, 0), "S3": (1, 1)}[which]
    total = 0
    for i in range(k + 1):
        total += i**p * (k - i) ** s * comb(f - 1 + i, f - 1) * comb(q - 1 + k - i, q - 1)
    return total


@lru_cache(maxsize=4096)
def absorption_polys(f: int, q: int) -> tuple[Poly, Poly, Poly]:
    """S1, S2, S3 as polynomials in k.

    C(e+k-1, e) is binom_poly(e) shifted by 1 and C(e+k-1, e+1) is
    binom_poly(e+1) shifted by 2; both vanish at the small k where the
    integer binomial is zero, so the identities hold for every k >= 0.
    """
    e = f + q
    top = binom_poly(e).shift(1)
    top2 = binom_poly(e + 1).shift(2)
    s1 = top * f
    s2 = top2 * (f * (f + 1)) + s1
    s3 = top2 * (f * q)
    return s1, s2, s3


@lru_cache(maxsize=4096)
def trace_proj(pair: SplitPair) -> GAffinePoly:
    """Total C*-weight of H^0(O_P(E)(k)) with F scaled by weight one.

    Tr(k) = -sum_i i dim W_{-i} = mu(F) S2 + mu(Q) S3 - (1 - g) S1.
    """
    F, Q = pair.sub, pair.quotient
    s1, s2, s3 = absorption_polys(F.rank, Q.rank)
    return GAffinePoly(s2 * F.slope + s3 * Q.slope - s1, s1)


def trace_proj_brute_affine(pair: SplitPair, k: int) -> tuple[Fraction, Fraction]:
    """-sum_i i dim W_{-i}, summed term by term, as (constant term, coefficient of g)."""
    if k < 0:
        raise DomainError("k must be non-negative")
    const = gc = Fraction(0)
    for i in range(1, k + 1):
        c, d = dim_weight_space(pair, k, i)
        const -= i * c
        gc -= i * d
    return const, gc


def trace_proj_brute(pair: SplitPair, k: int, g: int) -> Fraction:
    const, gc = trace_proj_brute_affine(pair, k)
    return const + g * gc
