"""Symbol catalog for experiments: the functions b the bilinear forms act on.

The stock families span the behaviours the equivalence theorems distinguish:
monomials (single-mode), lacunary series (the classical bounded-growth
exemplar with no better regularity), and branch-cut powers (1-z)^{-gamma}
(boundary-singular but still of bounded growth for gamma < 1/2).  Custom
symbols load from a JSON coefficient file.
"""

from __future__ import annotations

import json

import numpy as np
from scipy.special import gammaln

from .series import TaylorPoly

__all__ = [
    "DEFAULT_CAP",
    "monomial_symbol",
    "lacunary_symbol",
    "branch_cut_symbol",
    "kernel_symbol",
    "coeffs_symbol",
    "symbol_from_spec",
    "default_symbol_family",
]

DEFAULT_CAP = 256


def monomial_symbol(k: int) -> TaylorPoly:
    if k < 0:
        raise ValueError(f"monomial degree must be >= 0, got {k}")
    return TaylorPoly.monomial(k)


def lacunary_symbol(depth: int, cap: int = DEFAULT_CAP) -> TaylorPoly:
    """sum_{k=0..depth} z^{2^k}, truncated at cap."""
    if depth < 0:
        raise ValueError(f"depth must be >= 0, got {depth}")
    coeffs = np.zeros(min(cap, 2 ** depth) + 1, dtype=complex)
    for k in range(depth + 1):
        if 2 ** k <= cap:
            coeffs[2 ** k] += 1.0
    return TaylorPoly(coeffs)


def branch_cut_symbol(gamma: float, cap: int = DEFAULT_CAP) -> TaylorPoly:
    """(1 - z)^{-gamma} truncated at cap; coefficients decay like m^{gamma-1}."""
    if not 0 < gamma < 1:
        raise ValueError(f"branch-cut exponent must be in (0, 1), got {gamma}")
    m = np.arange(cap + 1, dtype=float)
    return TaylorPoly(np.exp(gammaln(m + gamma) - gammaln(gamma) - gammaln(m + 1.0)) + 0j)


def kernel_symbol(z0: complex, power: float, cap: int = DEFAULT_CAP) -> TaylorPoly:
    """Truncated point-mass kernel (1 - conj(z0) w)^{-power}."""
    from .series import power_kernel

    return power_kernel(z0, power, cap)


def coeffs_symbol(path) -> TaylorPoly:
    with open(path) as fh:
        data = json.load(fh)
    return TaylorPoly(np.array([complex(re, im) for re, im in data]))


def symbol_from_spec(spec: dict, cap: int = DEFAULT_CAP) -> tuple[str, TaylorPoly]:
    """Build (label, symbol) from a config mapping with a 'kind' key."""
    spec = dict(spec)
    kind = spec.pop("kind")
    if kind == "monomial":
        k = int(spec.pop("k"))
        sym = monomial_symbol(k)
        label = f"z^{k}" if k != 1 else "z"
    elif kind == "lacunary":
        depth = int(spec.pop("depth"))
        sym = lacunary_symbol(depth, cap)
        label = f"lacunary({depth})"
    elif kind == "branch-cut":
        gamma = float(spec.pop("gamma"))
        sym = branch_cut_symbol(gamma, cap)
        label = f"(1-z)^-{gamma:g}"
    elif kind == "kernel":
        z0 = complex(spec.pop("re", 0.0), spec.pop("im", 0.0))
        power = float(spec.pop("power"))
        sym = kernel_symbol(z0, power, cap)
        label = f"kernel({z0:g},{power:g})"
    elif kind == "coeffs":
        path = spec.pop("path")
        sym = coeffs_symbol(path)
        label = f"coeffs({path})"
    elif kind == "zero":
        sym = TaylorPoly.zero(0)
        label = "0"
    else:
        raise ValueError(f"unknown symbol kind {kind!r}")
    if spec:
        raise ValueError(f"unused symbol parameters {sorted(spec)} for kind {kind!r}")
    return label, sym


def default_symbol_family(cap: int = DEFAULT_CAP) -> list:
    """The stock family used by the equivalence experiments."""
    return [
        ("z", monomial_symbol(1)),
        ("z^8", monomial_symbol(8)),
        ("lacunary(8)", lacunary_symbol(8, cap)),
        ("(1-z)^-0.3", branch_cut_symbol(0.3, cap)),
    ]
