"""besovlab: numerical laboratory for weighted holomorphic Besov spaces on the disk.

Implements truncated-series operators and pairings, boundary-weighted disk
and tent quadrature, Bekolle weight diagnostics, Besov/Bloch/multiplier
norms, small Hankel operators, and lower-bound estimators for the bilinear
form norms they control, together with ratio-band equivalence reports.
"""

__version__ = "0.1.0"

from .series import (
    TaylorPoly,
    PairingWeightTable,
    monomial_moment,
    monomial_moments,
    pairing,
    one_plus_r_pow,
    weighted_r_derivative,
    fractional_r_derivative,
    multiply,
    power_kernel,
)
from .quadrature import (
    DiskRule,
    QuadResult,
    QuadratureEvalError,
    Tent,
    disk_integral,
    circle_integral,
    tent_integral,
    apply_PNM,
    apply_KN,
    estP_ratio,
)

__all__ = [
    "TaylorPoly",
    "PairingWeightTable",
    "monomial_moment",
    "monomial_moments",
    "pairing",
    "one_plus_r_pow",
    "weighted_r_derivative",
    "fractional_r_derivative",
    "multiply",
    "power_kernel",
    "DiskRule",
    "QuadResult",
    "QuadratureEvalError",
    "Tent",
    "disk_integral",
    "circle_integral",
    "tent_integral",
    "apply_PNM",
    "apply_KN",
    "estP_ratio",
    "__version__",
]
