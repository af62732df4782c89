"""Donaldson-Futaki invariant of the test configuration that splits E into F + Q.

For a complete intersection X of multidegree m inside P(E), with n = dim X =
e - r, we expand

    h^0_X(k) = b0 k^n     + b1 k^(n-1) + ...
    Tr_X(k)  = a0 k^(n+1) + a1 k^n     + ...

and form F = a0 b1 - a1 b0. Only b1 and a1 depend on the genus g of the base
curve, so F(g) = F0 + g F1 is affine in g. Everything is computed at A = 0;
by continuity the verdicts hold for sufficiently small ample twists.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterable, Optional

from .errors import DomainError, PipelineMismatch
from .exact import GAffinePoly, Poly
from .koszul import MultiDegree, koszul_k0, koszul_k1
from .weights import BundleOnCurve, SplitPair, h0_proj, trace_proj


def slope(B: BundleOnCurve) -> Fraction:
    return B.slope


def modified_slope(B: BundleOnCurve, r: int) -> Fraction:
    """deg(B) / (rank(B) - r), defined only when rank(B) > r."""
    if B.rank <= r:
        raise DomainError(f"modified slope needs rank > r (rank {B.rank}, r = {r})")
    return Fraction(B.degree, B.rank - r)


@dataclass(frozen=True)
class FibrationSpec:
    """E = F + Q over a curve, and a complete intersection of multidegree m.

    ``globally_generated_asserted`` records the caller's claim that O_P(E)(1)
    is globally generated; nothing here can check it from rank and degree.
    """

    pair: SplitPair
    m: MultiDegree
    globally_generated_asserted: bool = False

    def __post_init__(self):
        if not isinstance(self.m, MultiDegree):
            object.__setattr__(self, "m", MultiDegree(self.m))
        r = self.m.r
        if self.f <= r:
            raise DomainError(f"rank of F must exceed the codimension r = {r} (got f = {self.f})")
        if self.e - r < 1:
            raise DomainError(f"dim X = e - r must be at least 1 (e = {self.e}, r = {r})")

    @classmethod
    def from_ranks(
        cls,
        rank_e: int,
        deg_e: int,
        rank_f: int,
        deg_f: int,
        m: Iterable[int],
        globally_generated_asserted: bool = False,
    ) -> FibrationSpec:
        pair = SplitPair(BundleOnCurve(rank_e, deg_e), BundleOnCurve(rank_f, deg_f))
        return cls(pair, MultiDegree(m), globally_generated_asserted)

    @property
    def E(self) -> BundleOnCurve:
        return self.pair.total

    @property
    def F(self) -> BundleOnCurve:
        return self.pair.sub

    @property
    def e(self) -> int:
        return self.pair.total.rank

    @property
    def f(self) -> int:
        return self.pair.sub.rank

    @property
    def q(self) -> int:
        return self.e - self.f

    @property
    def r(self) -> int:
        return self.m.r

    @property
    def dim(self) -> int:
        return self.e - self.r

    def __str__(self) -> str:
        return f"E={self.E} F={self.F} m={self.m}"


def hilbert_x(spec: FibrationSpec) -> GAffinePoly:
    """h^0_X(k) via the Koszul resolution of O_X."""
    return koszul_k0(h0_proj(spec.E), spec.m)


def trace_x(spec: FibrationSpec) -> GAffinePoly:
    """Tr H^0_X(k): Koszul sum of the ambient trace minus the grading shift."""
    h0 = h0_proj(spec.E)
    return koszul_k0(trace_proj(spec.pair), spec.m) - koszul_k1(h0, spec.m)


@dataclass(frozen=True)
class Expansion:
    b0: Fraction
    b1: tuple[Fraction, Fraction]
    a0: Fraction
    a1: tuple[Fraction, Fraction]


def expansion_coeffs(spec: FibrationSpec) -> Expansion:
    n = spec.dim
    h, t = hilbert_x(spec), trace_x(spec)
    b0, b0_g = h.coeff(n)
    a0, a0_g = t.coeff(n + 1)
    if b0_g or a0_g:
        raise PipelineMismatch("leading coefficients picked up genus dependence")
    return Expansion(b0=b0, b1=h.coeff(n - 1), a0=a0, a1=t.coeff(n))


def futaki_from_polys(h: Poly, t: Poly, n: int) -> Fraction:
    """a0 b1 - a1 b0 read off from h^0 (degree n) and Tr (degree n + 1)."""
    return t.coeff(n + 1) * h.coeff(n - 1) - t.coeff(n) * h.coeff(n)


def futaki_at(spec: FibrationSpec, g: int) -> Fraction:
    """F at a fixed genus, specialising g before the Koszul sums are taken."""
    h0 = h0_proj(spec.E).at_genus(g)
    tr = trace_proj(spec.pair).at_genus(g)
    h = koszul_k0(h0, spec.m)
    t = koszul_k0(tr, spec.m) - koszul_k1(h0, spec.m)
    return futaki_from_polys(h, t, spec.dim)


# Closed forms obtained by feeding leading terms through the two Koszul
# leading-term identities.

def b0_closed(spec: FibrationSpec) -> Fraction:
    return -spec.m.product * spec.e * spec.E.slope / factorial(spec.e - spec.r)


def a0_closed(spec: FibrationSpec) -> Fraction:
    e, f, r = spec.e, spec.f, spec.r
    num = f * spec.F.slope + e * (f - r) * spec.E.slope
    return spec.m.product * num / factorial(e + 1 - r)


def db1_closed(spec: FibrationSpec) -> Fraction:
    return Fraction(-spec.m.product, factorial(spec.e - 1 - spec.r))


def da1_closed(spec: FibrationSpec) -> Fraction:
    return Fraction(spec.m.product * (spec.f - spec.r), factorial(spec.e - spec.r))


def derivative_closed(spec: FibrationSpec) -> Fraction:
    """dF/dg = (prod m)^2 ((f-r) e mu(E) - (e-r) f mu(F)) / ((e-r)! (e-r+1)!).

    Equals (e-r)(f-r) (prod m)^2 (mu^r(E) - mu^r(F)) / ((e-r)! (e-r+1)!); see
    :func:`derivative_slope_form` for the version without that factor.
    """
    e, f, r = spec.e, spec.f, spec.r
    num = (f - r) * e * spec.E.slope - (e - r) * f * spec.F.slope
    return spec.m.product**2 * num / (factorial(e - r) * factorial(e - r + 1))


def derivative_slope_form(spec: FibrationSpec) -> Fraction:
    """(prod m)^2 (mu^r(E) - mu^r(F)) / ((e-r)! (e-r+1)!).

    Has the same sign as the true genus derivative but is smaller by the
    factor (e-r)(f-r); kept for comparison only.
    """
    e, r = spec.e, spec.r
    gap = modified_slope(spec.E, r) - modified_slope(spec.F, r)
    return spec.m.product**2 * gap / (factorial(e - r) * factorial(e - r + 1))


def futaki_affine(spec: FibrationSpec) -> tuple[Fraction, Fraction]:
    """(F0, F1) with F(g) = F0 + g F1, cross-checked against the closed form."""
    x = expansion_coeffs(spec)
    (b1_0, b1_g), (a1_0, a1_g) = x.b1, x.a1
    f0 = x.a0 * b1_0 - a1_0 * x.b0
    f1 = x.a0 * b1_g - a1_g * x.b0
    if f1 != derivative_closed(spec):
        raise PipelineMismatch(f"dF/dg pipeline {f1} != closed form {derivative_closed(spec)}")
    return f0, f1


def genus_threshold(spec: FibrationSpec) -> Optional[Fraction]:
    """g* with F(g) < 0 for every g > g*, when F decreases in g; else None."""
    f0, f1 = futaki_affine(spec)
    if f1 < 0:
        return -f0 / f1
    return None


class Verdict(str, enum.Enum):
    DESTABILIZES_FOR_LARGE_GENUS = "DestabilizesForLargeGenus"
    DESTABILIZES_AT_GENUS = "DestabilizesAtGenus"
    NO_CONCLUSION = "NoConclusion"
    INDETERMINATE = "Indeterminate"

    def __str__(self) -> str:
        return self.value


def _verdict(mu_e: Fraction, mu_f: Fraction, value_at_g: Optional[Fraction]) -> Verdict:
    if value_at_g is not None:
        return Verdict.DESTABILIZES_AT_GENUS if value_at_g < 0 else Verdict.NO_CONCLUSION
    if mu_f > mu_e:
        return Verdict.DESTABILIZES_FOR_LARGE_GENUS
    if mu_f == mu_e:
        return Verdict.INDETERMINATE
    return Verdict.NO_CONCLUSION


def verdict(spec: FibrationSpec, g: Optional[int] = None) -> Verdict:
    """Destabilization verdict; a non-negative F never certifies stability."""
    mu_e, mu_f = modified_slope(spec.E, spec.r), modified_slope(spec.F, spec.r)
    value = None
    if g is not None:
        f0, f1 = futaki_affine(spec)
        value = f0 + g * f1
    return _verdict(mu_e, mu_f, value)


@dataclass(frozen=True)
class FutakiReport:
    spec: FibrationSpec
    b0: Fraction
    a0: Fraction
    b1: tuple[Fraction, Fraction]
    a1: tuple[Fraction, Fraction]
    futaki: tuple[Fraction, Fraction]
    mu_r_E: Fraction
    mu_r_F: Fraction
    genus_threshold: Optional[Fraction]
    verdict: Verdict
    genus: Optional[int] = None
    futaki_at_genus: Optional[Fraction] = None

    @property
    def F0(self) -> Fraction:
        return self.futaki[0]

    @property
    def F1(self) -> Fraction:
        return self.futaki[1]

    def evaluate(self, g) -> Fraction:
        return self.F0 + g * self.F1


def futaki_report(spec: FibrationSpec, genus: Optional[int] = None) -> FutakiReport:
    if genus is not None and genus < 0:
        raise DomainError("genus must be non-negative")
    x = expansion_coeffs(spec)
    f0, f1 = futaki_affine(spec)
    mu_e, mu_f = modified_slope(spec.E, spec.r), modified_slope(spec.F, spec.r)
    value = None if genus is None else f0 + genus * f1
    return FutakiReport(
        spec=spec,
        b0=x.b0,
        a0=x.a0,
        b1=x.b1,
        a1=x.a1,
        futaki=(f0, f1),
        mu_r_E=mu_e,
        mu_r_F=mu_f,
        genus_threshold=-f0 / f1 if f1 < 0 else None,
        verdict=_verdict(mu_e, mu_f, value),
        genus=genus,
        futaki_at_genus=value,
    )
