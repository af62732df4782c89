"""Conic bundles S in |O_P(E)(2)| with E = O + O(-H) + O(-D) over a hyperelliptic curve.

S is a blowup of a ruled surface in 2 deg(D) + 2 deg(H) points, and the
subbundle F = O + O(-H) gives a destabilising divisor P(F) cap S once the
genus is large. With deg H = 2 the destabilising range is g > 4(d+1)/(d-2),
which is at most 16.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import DomainError
from .futaki import FibrationSpec, FutakiReport, futaki_report

# genus above which every deg D in the conic family destabilizes
UNIFORM_GENUS_BOUND = 16


@dataclass(frozen=True)
class ConicParams:
    g: int
    d: int
    deg_h: int = 2

    def __post_init__(self):
        if self.g < 2:
            raise DomainError(f"genus must be at least 2, got {self.g}")
        if self.deg_h < 1:
            raise DomainError(f"deg H must be positive, got {self.deg_h}")
        if self.deg_h != 2 and not 3 * self.deg_h < self.g + 2:
            raise DomainError(f"deg H = {self.deg_h} needs deg H < (g + 2)/3")
        if self.d <= self.deg_h:
            raise DomainError(f"deg D must exceed deg H (deg D = {self.d}, deg H = {self.deg_h})")


@dataclass(frozen=True)
class ConicSurfaceInvariants:
    chi: int
    K_squared: int
    euler_number: int
    singular_fibres: int


def surface_invariants(p: ConicParams) -> ConicSurfaceInvariants:
    chi = 1 - p.g
    k2 = 8 * (1 - p.g) - 2 * (p.d + p.deg_h)
    euler = 12 * chi - k2  # Noether
    fibres = euler - 2 * (2 - 2 * p.g)
    return ConicSurfaceInvariants(chi, k2, euler, fibres)


def conic_spec(d: int, deg_h: int = 2) -> FibrationSpec:
    return FibrationSpec.from_ranks(3, -deg_h - d, 2, -deg_h, [2])


def conic_destab(p: ConicParams) -> FutakiReport:
    return futaki_report(conic_spec(p.d, p.deg_h), genus=p.g)


def uniform_bound_check(ds: Iterable[int], genus: int = UNIFORM_GENUS_BOUND + 1) -> dict[int, Fraction]:
    """F(genus) for each deg D in ``ds`` (deg H = 2)."""
    out = {}
    for d in ds:
        rep = futaki_report(conic_spec(d))
        out[d] = rep.evaluate(genus)
    return out
