"""Self-verification: closed forms against independent brute-force routes.

Each suite returns a :class:`SuiteResult`; ``run_all`` is what ``kslope
verify`` prints. The grids are the ones the library promises to be exact on.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import comb, factorial
from typing import Callable, Iterator

from .exact import Poly
from .futaki import (
    FibrationSpec,
    a0_closed,
    b0_closed,
    derivative_closed,
    derivative_slope_form,
    expansion_coeffs,
    futaki_affine,
    futaki_at,
    modified_slope,
)
from .koszul import koszul_k0, koszul_k1
from .weights import (
    ABSORPTION_SUMS,
    BundleOnCurve,
    SplitPair,
    absorption_brute,
    absorption_closed,
    trace_proj,
    trace_proj_brute_affine,
)


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures and self.checked > 0

    def check(self, cond: bool, what: str) -> None:
        self.checked += 1
        if not cond:
            self.failures.append(what)


def absorption_suite(closed: Callable = absorption_closed, fmax: int = 4, qmax: int = 4, kmax: int = 30) -> SuiteResult:
    res = SuiteResult("absorption identities")
    for f in range(1, fmax + 1):
        for q in range(1, qmax + 1):
            for k in range(kmax + 1):
                vals = closed(f, q, k)
                for which, v in zip(ABSORPTION_SUMS, vals):
                    b = absorption_brute(f, q, k, which)
                    res.check(v == b, f"{which}(f={f}, q={q}, k={k}): closed {v} != brute {b}")
    return res


def split_pairs(rank_max: int = 3, deg_bound: int = 5) -> Iterator[SplitPair]:
    for f, q in product(range(1, rank_max + 1), repeat=2):
        for df, dq in product(range(-deg_bound, deg_bound + 1), repeat=2):
            yield SplitPair.from_parts(BundleOnCurve(f, df), BundleOnCurve(q, dq))


def trace_suite(kmax: int = 12, genera=(0, 1, 2, 5), rank_max: int = 3, deg_bound: int = 5) -> SuiteResult:
    res = SuiteResult("trace oracle")
    for pair in split_pairs(rank_max, deg_bound):
        tr = trace_proj(pair)
        for k in range(kmax + 1):
            const, gc = trace_proj_brute_affine(pair, k)
            for g in genera:
                got, want = tr(k, g), const + g * gc
                res.check(got == want, f"Tr {pair} k={k} g={g}: {got} != {want}")
    return res


def koszul_cases(nmax: int = 8, rmax: int = 3, mmax: int = 4):
    for n in range(nmax + 1):
        for r in range(1, rmax + 1):
            for ms in product(range(1, mmax + 1), repeat=r):
                yield n, ms


def koszul_suite(nmax: int = 8, rmax: int = 3, mmax: int = 4) -> SuiteResult:
    res = SuiteResult("Koszul leading terms")
    for n, ms in koszul_cases(nmax, rmax, mmax):
        r = len(ms)
        prodm = 1
        for mi in ms:
            prodm *= mi
        p = Poly.monomial(n)
        if r <= n:
            out = koszul_k0(p, ms)
            want = comb(n, r) * factorial(r) * prodm
            res.check(out.degree == n - r and out.leading == want,
                      f"K0 k^{n} m={ms}: got degree {out.degree} lead {out.leading}, want {n - r} / {want}")
        if r - 1 <= n:
            out = koszul_k1(p, ms)
            want = -comb(n, r - 1) * factorial(r) * prodm
            res.check(out.degree == n - r + 1 and out.leading == want,
                      f"K1 k^{n} m={ms}: got degree {out.degree} lead {out.leading}, want {n - r + 1} / {want}")
    return res


def fibration_grid(emax: int = 6, rmax: int = 3, deg_bound: int = 6, mvals=(2, 3)) -> Iterator[FibrationSpec]:
    for e in range(2, emax + 1):
        for r in range(1, rmax + 1):
            for f in range(r + 1, e):
                for ms in product(mvals, repeat=r):
                    for de, df in product(range(-deg_bound, deg_bound + 1), repeat=2):
                        yield FibrationSpec.from_ranks(e, de, f, df, ms)


def closed_form_suite(**grid) -> SuiteResult:
    res = SuiteResult("closed-form b0, a0")
    for spec in fibration_grid(**grid):
        x = expansion_coeffs(spec)
        res.check(x.b0 == b0_closed(spec), f"b0 {spec}: {x.b0} != {b0_closed(spec)}")
        res.check(x.a0 == a0_closed(spec), f"a0 {spec}: {x.a0} != {a0_closed(spec)}")
    return res


def derivative_suite(**grid) -> SuiteResult:
    """F(1) - F(0) through the evaluated pipeline against the closed derivative."""
    res = SuiteResult("genus derivative")
    for spec in fibration_grid(**grid):
        diff = futaki_at(spec, 1) - futaki_at(spec, 0)
        res.check(diff == derivative_closed(spec), f"dF/dg {spec}: {diff} != {derivative_closed(spec)}")
        res.check(diff == futaki_affine(spec)[1], f"affine F1 {spec} disagrees with finite difference")
        gap = modified_slope(spec.E, spec.r) - modified_slope(spec.F, spec.r)
        res.check(_sign(diff) == _sign(gap), f"sign dF/dg {spec}: {diff} vs slope gap {gap}")
    return res


def slope_form_suite(**grid) -> SuiteResult:
    """F1 against (prod m)^2 (mu^r(E) - mu^r(F)) / ((e-r)!(e-r+1)!), no rank factor.

    Not part of ``run_all``: this form is off by (e-r)(f-r) and fails
    wherever the slopes differ.
    """
    res = SuiteResult("genus derivative, slope form")
    for spec in fibration_grid(**grid):
        diff = futaki_at(spec, 1) - futaki_at(spec, 0)
        want = derivative_slope_form(spec)
        res.check(diff == want, f"{spec.E}/{spec.F} m={spec.m}: F1 = {diff}, slope form {want}")
    return res


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def run_all(closed: Callable = absorption_closed) -> list[SuiteResult]:
    return [
        absorption_suite(closed),
        trace_suite(),
        koszul_suite(),
        closed_form_suite(),
        derivative_suite(),
    ]
