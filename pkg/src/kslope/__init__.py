"""Exact Donaldson-Futaki invariants for complete intersections in projective bundles over curves."""

from .errors import DomainError, PipelineMismatch
from .exact import GAffinePoly, Poly, Rational, binom_poly, poly_coeff, poly_integrate, poly_shift
from .futaki import (
    FibrationSpec,
    FutakiReport,
    Verdict,
    expansion_coeffs,
    futaki_affine,
    futaki_report,
    genus_threshold,
    modified_slope,
    slope,
    verdict,
)
from .koszul import MultiDegree, koszul_k0, koszul_k1
from .rt_slope import SlopeInput, mu_c, mu_global, slope_destabilizes
from .weights import BundleOnCurve, SplitPair, h0_proj, trace_proj

__version__ = "0.1.0"
