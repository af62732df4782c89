"""Slope of a subscheme from its Hilbert-Samuel coefficients.

Given chi(L^k (x) I_Z^{kx}) = alpha0(x) k^n + alpha1(x) k^(n-1) + ..., compare

    mu_c(Z, L) = int_0^c (alpha1 + alpha0'/2) dx / int_0^c alpha0 dx

with mu(X, L) = alpha1(0) / alpha0(0). Z slope-destabilises when the first is
strictly larger. The alphas are inputs here; nothing computes them from Z.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import DomainError
from .exact import Poly, as_rational


class SlopeError(DomainError):
    pass


@dataclass(frozen=True)
class SlopeInput:
    alpha0: Poly
    alpha1: Poly
    c: Fraction
    seshadri_bound: Optional[Fraction] = None  # asserted by the caller, never verified

    def __post_init__(self):
        object.__setattr__(self, "c", as_rational(self.c))
        if self.alpha0.is_zero():
            raise SlopeError("alpha0 must not be the zero polynomial")
        if self.alpha0(0) == 0:
            raise SlopeError("alpha0(0) = 0, so mu(X, L) is undefined")
        if self.c <= 0:
            raise SlopeError(f"c must be positive, got {self.c}")
        if self.seshadri_bound is not None and self.c > self.seshadri_bound:
            raise SlopeError(f"c = {self.c} exceeds the asserted Seshadri bound {self.seshadri_bound}")


def mu_global(inp: SlopeInput) -> Fraction:
    return inp.alpha1(0) / inp.alpha0(0)


def mu_c(inp: SlopeInput) -> Fraction:
    den = inp.alpha0.integrate(0, inp.c)
    if den == 0:
        raise SlopeError(f"integral of alpha0 over [0, {inp.c}] vanishes")
    num = (inp.alpha1 + inp.alpha0.derivative() * Fraction(1, 2)).integrate(0, inp.c)
    return num / den


def mu_c_limit(inp: SlopeInput) -> Fraction:
    """Limit of mu_c as c -> 0+: mu(X, L) + alpha0'(0) / (2 alpha0(0)).

    The correction vanishes exactly when alpha0'(0) = 0 (e.g. Z of
    codimension at least two); for divisors mu_c does not tend to mu(X, L).
    """
    return (inp.alpha1(0) + inp.alpha0.coeff(1) / 2) / inp.alpha0(0)


def slope_destabilizes(inp: SlopeInput) -> bool:
    return mu_c(inp) > mu_global(inp)
