"""Koszul alternating sums for a complete intersection of multidegree (m_1..m_r).

If p(k) is a Hilbert-type polynomial on the ambient space, the complete
intersection sees

    K0[p](k) = sum_S (-1)^|S| p(k - m_S)
    K1[p](k) = sum_S (-1)^|S| m_S p(k - m_S)

where S runs over all subsets of {1..r} and m_S is the sum of the m_i in S.
The second sum is the grading correction needed for total weights.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import prod
from typing import Iterable, TypeVar, Union

from .errors import DomainError
from .exact import GAffinePoly, Poly

P = TypeVar("P", Poly, GAffinePoly)


@dataclass(frozen=True)
class MultiDegree:
    m: tuple[int, ...]

    def __init__(self, m: Iterable[int]):
        m = tuple(m)
        if not m:
            raise DomainError("a complete intersection needs at least one degree")
        for mi in m:
            if not isinstance(mi, int) or mi < 1:
                raise DomainError(f"degrees must be positive integers, got {mi!r}")
        object.__setattr__(self, "m", m)

    @property
    def r(self) -> int:
        return len(self.m)

    @property
    def product(self) -> int:
        return prod(self.m)

    @property
    def has_linear_factor(self) -> bool:
        """True when some m_i = 1; the geometric setting wants every m_i >= 2."""
        return any(mi < 2 for mi in self.m)

    def __str__(self) -> str:
        return ",".join(str(mi) for mi in self.m)


def _degrees(m: Union[MultiDegree, Iterable[int]]) -> tuple[int, ...]:
    return m.m if isinstance(m, MultiDegree) else tuple(m)


def _subsets(ms: tuple[int, ...]):
    """Yield (sign, m_S) for every subset S, all 2^r of them."""
    for s in range(len(ms) + 1):
        sign = -1 if s % 2 else 1
        for chosen in combinations(ms, s):
            yield sign, sum(chosen)


def _koszul(p: P, ms: tuple[int, ...], weighted: bool) -> P:
    ms = tuple(sorted(ms))
    if isinstance(p, GAffinePoly):
        return GAffinePoly(_koszul_poly(p.const, ms, weighted), _koszul_poly(p.g_part, ms, weighted))
    return _koszul_poly(p, ms, weighted)


@lru_cache(maxsize=1 << 14)
def _koszul_poly(p: Poly, ms: tuple[int, ...], weighted: bool) -> Poly:
    # Gather equal shifts first; repeated m_i make many subset sums coincide.
    weights: dict[int, int] = {}
    for sign, total in _subsets(ms):
        w = sign * total if weighted else sign
        if w:
            weights[total] = weights.get(total, 0) + w
    out = Poly()
    for shift in sorted(weights):
        if weights[shift]:
            out = out + p.shift(shift) * weights[shift]
    return out


def koszul_k0(p: P, m: Union[MultiDegree, Iterable[int]]) -> P:
    """sum_S (-1)^|S| p(k - m_S). With no degrees this is the identity."""
    return _koszul(p, _degrees(m), weighted=False)


def koszul_k1(p: P, m: Union[MultiDegree, Iterable[int]]) -> P:
    """sum_S (-1)^|S| m_S p(k - m_S). The empty subset contributes nothing."""
    return _koszul(p, _degrees(m), weighted=True)
