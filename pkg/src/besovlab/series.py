"""Truncated Taylor series on the unit disk and coefficient-diagonal operators.

Holomorphic functions enter every computation as truncated power series
f(z) = sum_m f_m z^m.  All differential operators used here act diagonally
on monomials, so they reduce to explicit coefficient multipliers:

    (1+R) z^m            = (1+m) z^m            (R = z d/dz)
    (1 + R/t) ... (1 + R/(t+k-1)) z^m
                         = prod_{j<k} (1 + m/(t+j)) z^m
    fractional order s anchored at base N > 0:
                         = Gamma(N+1) Gamma(N+1+s+m) /
                           (Gamma(N+1+s) Gamma(N+1+m)) z^m

The coefficient pairing of two polynomials against the boundary-power
measure t(1-|z|^2)^{t-1} dnu is likewise diagonal, with monomial moments

    omega_m(t) = Gamma(t+1) m! / Gamma(m+1+t),     omega_m(0) = 1.

All gamma ratios are evaluated as differences of log-gamma and then
exponentiated so that degrees up to 10^4 stay inside double range.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.special import gammaln

__all__ = [
    "TaylorPoly",
    "PairingWeightTable",
    "monomial_moment",
    "monomial_moments",
    "pairing",
    "one_plus_r_pow",
    "weighted_r_derivative",
    "weighted_r_multipliers",
    "fractional_r_derivative",
    "fractional_r_multipliers",
    "multiply",
    "power_kernel",
    "power_kernel_coeffs",
]


@dataclass(frozen=True)
class TaylorPoly:
    """A polynomial sum_{m<=cap} coeffs[m] z^m, coefficients frozen after construction."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex)
        if c.ndim != 1 or c.size == 0:
            raise ValueError("coeffs must be a nonempty 1-d sequence")
        if not np.all(np.isfinite(c.view(float))):
            raise ValueError("coefficients must be finite")
        c = c.copy()
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def degree_cap(self) -> int:
        return self.coeffs.size - 1

    @property
    def degree(self) -> int:
        """Index of the highest nonzero coefficient (-1 for the zero polynomial)."""
        nz = np.nonzero(self.coeffs)[0]
        return int(nz[-1]) if nz.size else -1

    def coeff(self, m: int) -> complex:
        return complex(self.coeffs[m]) if 0 <= m <= self.degree_cap else 0j

    def pad(self, cap: int) -> "TaylorPoly":
        if cap < self.degree_cap:
            return TaylorPoly(self.coeffs[: cap + 1])
        out = np.zeros(cap + 1, dtype=complex)
        out[: self.coeffs.size] = self.coeffs
        return TaylorPoly(out)

    def scale(self, c: complex) -> "TaylorPoly":
        return TaylorPoly(self.coeffs * c)

    def __add__(self, other: "TaylorPoly") -> "TaylorPoly":
        cap = max(self.degree_cap, other.degree_cap)
        out = np.zeros(cap + 1, dtype=complex)
        out[: self.coeffs.size] += self.coeffs
        out[: other.coeffs.size] += other.coeffs
        return TaylorPoly(out)

    def __call__(self, z) -> np.ndarray:
        """Evaluate by Horner's scheme at complex points (scalar or array)."""
        z = np.asarray(z, dtype=complex)
        out = np.zeros_like(z)
        for c in self.coeffs[::-1]:
            out = out * z + c
        return out

    @staticmethod
    def monomial(m: int, value: complex = 1.0) -> "TaylorPoly":
        out = np.zeros(m + 1, dtype=complex)
        out[m] = value
        return TaylorPoly(out)

    @staticmethod
    def zero(cap: int = 0) -> "TaylorPoly":
        return TaylorPoly(np.zeros(cap + 1, dtype=complex))


def monomial_moment(m: int, t: float) -> float:
    """Moment of |z|^{2m} against t(1-|z|^2)^{t-1} dnu; equals 1 on the circle (t=0)."""
    if t < 0:
        raise ValueError(f"t must be >= 0, got {t}")
    if m < 0:
        raise ValueError(f"m must be >= 0, got {m}")
    if t == 0:
        return 1.0
    return float(np.exp(gammaln(t + 1.0) + gammaln(m + 1.0) - gammaln(m + 1.0 + t)))


def monomial_moments(count: int, t: float) -> np.ndarray:
    """Vector [omega_0(t), ..., omega_{count-1}(t)]."""
    if t < 0:
        raise ValueError(f"t must be >= 0, got {t}")
    m = np.arange(count, dtype=float)
    if t == 0:
        return np.ones(count)
    return np.exp(gammaln(t + 1.0) + gammaln(m + 1.0) - gammaln(m + 1.0 + t))


@dataclass(frozen=True)
class PairingWeightTable:
    """Monomial moments omega_m(t) for one value of t, reused across pairings."""

    t: float
    omega: np.ndarray = field(init=False)
    count: int = 257

    def __post_init__(self):
        om = monomial_moments(self.count, self.t)
        om.setflags(write=False)
        object.__setattr__(self, "omega", om)


def pairing(f: TaylorPoly, g: TaylorPoly, t: float) -> complex:
    """Coefficient pairing sum_m f_m conj(g_m) omega_m(t); exact for polynomials.

    For t > 0 this is the integral of f conj(g) against t(1-|z|^2)^{t-1} dnu;
    for t = 0 it is the circle pairing (monomials orthonormal).
    """
    n = min(f.coeffs.size, g.coeffs.size)
    if n == 0:
        return 0j
    om = monomial_moments(n, t)
    return complex(np.sum(f.coeffs[:n] * np.conj(g.coeffs[:n]) * om))


def one_plus_r_pow(f: TaylorPoly, tau: float) -> TaylorPoly:
    """Apply (1+R)^tau: coefficient m is multiplied by (1+m)^tau."""
    m = np.arange(f.coeffs.size, dtype=float)
    return TaylorPoly(f.coeffs * (1.0 + m) ** tau)


def weighted_r_multipliers(count: int, k: int, t: float) -> np.ndarray:
    """Multipliers prod_{j=0}^{k-1} (1 + m/(t+j)) for m = 0..count-1."""
    if t <= 0:
        raise ValueError(f"t must be > 0, got {t}")
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    m = np.arange(count, dtype=float)
    mult = np.ones(count)
    for j in range(k):
        mult *= 1.0 + m / (t + j)
    return mult


def weighted_r_derivative(f: TaylorPoly, k: int, t: float) -> TaylorPoly:
    """Apply the normalized derivative (1+R/(t+k-1))...(1+R/t) of integer order k."""
    return TaylorPoly(f.coeffs * weighted_r_multipliers(f.coeffs.size, k, t))


def fractional_r_multipliers(count: int, s: float, base: float) -> np.ndarray:
    """Diagonal multipliers of the order-s derivative anchored at base N > 0.

    For s >= 0 the monomial multiplier comes from expanding the kernel
    N(1-|w|^2)^{N-1}/(1-z conj(w))^{1+N+s} against monomials:

        c_m(s, N) = Gamma(N+1) Gamma(N+1+s+m) / (Gamma(N+1+s) Gamma(N+1+m)).

    For s < 0 the operator is the inverse of the order |s| one (the kernel
    with raised area power and lowered singularity), whose diagonal form is
    exactly 1/c_m(|s|, N), so composing orders s and -s is the identity.
    """
    if base <= 0:
        raise ValueError(f"base must be > 0, got {base}")
    m = np.arange(count, dtype=float)
    mag = abs(s)
    args = base + 1.0 + mag + m
    if base + 1.0 + mag <= 0 or np.any(args <= 0):
        raise ValueError(
            f"gamma pole: N+1+|s|+m must stay positive (N={base}, s={s})"
        )
    log_c = (
        gammaln(base + 1.0)
        + gammaln(args)
        - gammaln(base + 1.0 + mag)
        - gammaln(base + 1.0 + m)
    )
    return np.exp(log_c if s >= 0 else -log_c)


def fractional_r_derivative(f: TaylorPoly, s: float, base: float) -> TaylorPoly:
    """Apply the fractional derivative of order s anchored at base N > 0.

    Consistent with weighted_r_derivative when s is a positive integer and
    base = t, k = s; composing orders s and -s gives the identity.
    """
    return TaylorPoly(f.coeffs * fractional_r_multipliers(f.coeffs.size, s, base))


def multiply(f: TaylorPoly, g: TaylorPoly, cap: int) -> TaylorPoly:
    """Cauchy product truncated at degree cap (exact when deg f + deg g <= cap)."""
    if cap < 0:
        raise ValueError(f"cap must be >= 0, got {cap}")
    full = np.convolve(f.coeffs, g.coeffs)
    out = np.zeros(cap + 1, dtype=complex)
    take = min(full.size, cap + 1)
    out[:take] = full[:take]
    return TaylorPoly(out)


def power_kernel_coeffs(lam: complex, power: float, cap: int) -> np.ndarray:
    """Taylor coefficients of w -> (1 - conj(lam) w)^{-power} through degree cap.

    Coefficient m is Gamma(m+power)/(Gamma(power) m!) conj(lam)^m, computed in
    log-gamma form.  power = 0 returns the constant 1.
    """
    if power == 0:
        out = np.zeros(cap + 1, dtype=complex)
        out[0] = 1.0
        return out
    if power < 0:
        raise ValueError(f"power must be >= 0, got {power}")
    m = np.arange(cap + 1, dtype=float)
    mag = np.exp(gammaln(m + power) - gammaln(power) - gammaln(m + 1.0))
    lam_c = np.conj(complex(lam))
    return mag * lam_c ** np.arange(cap + 1)


def power_kernel(lam: complex, power: float, cap: int) -> TaylorPoly:
    """Truncation of (1 - conj(lam) w)^{-power} as a TaylorPoly."""
    return TaylorPoly(power_kernel_coeffs(lam, power, cap))
