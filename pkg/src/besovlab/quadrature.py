"""Quadrature on the unit disk, tents, and the circle for boundary-weighted measures.

The measures of interest all look like (1-|z|^2)^{a-1} theta(z) dnu near the
boundary, so the radial rule works in the variable x = |z|^2 and is composite:

  * geometric panels [1-2^{-j}, 1-2^{-j-1}] with Gauss-Legendre nodes, the
    density (1-x)^{a-1} evaluated as a factor (it is smooth inside a panel);
  * a final panel [1-2^{-L}, 1] with Gauss-Jacobi nodes so the endpoint
    behaviour (1-x)^{a-1} is integrated exactly even for a < 1.

Angles use a uniform grid, which is exact for trigonometric polynomials of
degree below the grid size; polynomial integrands are evaluated on the grid
by FFT.  Integrals with a point singularity 1/|w-z|^q (q < 2) are computed in
polar coordinates centred at z, where the area Jacobian cancels the
singularity to rho^{1-q}, which the innermost panel folds into a Jacobi rule.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, NamedTuple

import numpy as np
from scipy.special import roots_jacobi, roots_legendre

__all__ = [
    "QuadratureEvalError",
    "QuadResult",
    "DiskRule",
    "disk_rule",
    "circle_rule",
    "disk_integral",
    "circle_integral",
    "Tent",
    "TentRule",
    "tent_rule",
    "tent_integral",
    "apply_PNM",
    "apply_KN",
    "estP_ratio",
    "centered_polar_nodes",
    "RESOLUTIONS",
]

RESOLUTIONS = {
    "low": dict(levels=8, panel_nodes=8, n_ang=520),
    "default": dict(levels=12, panel_nodes=12, n_ang=1040),
    "high": dict(levels=13, panel_nodes=18, n_ang=2080),
}


class QuadratureEvalError(ValueError):
    """Integrand produced a non-finite value; carries the offending node."""

    def __init__(self, node: complex, value):
        self.node = node
        self.value = value
        super().__init__(f"non-finite integrand value {value!r} at node {node!r}")


class QuadResult(NamedTuple):
    value: complex
    error: float


def _check_finite(values: np.ndarray, nodes: np.ndarray):
    bad = ~np.isfinite(values)
    if bad.ndim > 0 and bad.any():
        idx = np.argwhere(bad)[0]
        raise QuadratureEvalError(complex(nodes[tuple(idx)]), values[tuple(idx)])


def _jacobi_unit(n: int, alpha: float):
    """Nodes/weights for int_0^1 f(u) (1-u)^alpha du, endpoint weight exact."""
    xi, w = roots_jacobi(n, alpha, 0.0)
    return (xi + 1.0) / 2.0, w / 2.0 ** (alpha + 1.0)


def _jacobi_unit_left(n: int, beta: float):
    """Nodes/weights for int_0^1 f(u) u^beta du."""
    xi, w = roots_jacobi(n, 0.0, beta)
    return (xi + 1.0) / 2.0, w / 2.0 ** (beta + 1.0)


def _radial_rule(a: float, levels: int, panel_nodes: int):
    """Composite nodes/weights for int_0^1 f(x) (1-x)^{a-1} dx."""
    if a <= 0:
        raise ValueError(f"boundary exponent a must be > 0, got {a}")
    xs, ws = [], []
    xg, wg = roots_legendre(panel_nodes)
    xg = (xg + 1.0) / 2.0
    wg = wg / 2.0
    breaks = 1.0 - 2.0 ** (-np.arange(levels + 1, dtype=float))
    for lo, hi in zip(breaks[:-1], breaks[1:]):
        x = lo + (hi - lo) * xg
        xs.append(x)
        ws.append((hi - lo) * wg * (1.0 - x) ** (a - 1.0))
    eps = 2.0 ** (-float(levels))
    uj, wj = _jacobi_unit(panel_nodes, a - 1.0)
    xs.append(1.0 - eps + eps * uj)
    ws.append(eps ** a * wj)
    return np.concatenate(xs), np.concatenate(ws)


@dataclass(frozen=True)
class DiskRule:
    """Product rule: radial nodes in x = |z|^2 against (1-x)^{a-1} dx, uniform angles.

    integrate sums w_x[i] * mean_j phi(r_i e^{i theta_j}); the caller supplies
    any normalisation factor (e.g. t for the measure t(1-x)^{t-1} dx).
    """

    a: float
    x: np.ndarray
    w_x: np.ndarray
    n_ang: int

    def __post_init__(self):
        self.x.setflags(write=False)
        self.w_x.setflags(write=False)

    @property
    def r(self) -> np.ndarray:
        return np.sqrt(self.x)

    @property
    def theta(self) -> np.ndarray:
        return 2.0 * np.pi * np.arange(self.n_ang) / self.n_ang

    def nodes(self) -> np.ndarray:
        """Complex grid of shape (n_rad, n_ang)."""
        return self.r[:, None] * np.exp(1j * self.theta)[None, :]

    def eval_poly(self, coeffs: np.ndarray) -> np.ndarray:
        """Values of sum_m c_m z^m on the node grid, via one FFT per radius."""
        coeffs = np.asarray(coeffs, dtype=complex)
        if coeffs.size > self.n_ang:
            raise ValueError(
                f"angular grid ({self.n_ang}) too small for degree {coeffs.size - 1}"
            )
        radial = self.r[:, None] ** np.arange(coeffs.size)[None, :]
        padded = np.zeros((self.x.size, self.n_ang), dtype=complex)
        padded[:, : coeffs.size] = radial * coeffs[None, :]
        return np.fft.ifft(padded, axis=1) * self.n_ang

    def adjoint_poly(self, weighted_values: np.ndarray, count: int) -> np.ndarray:
        """Coefficient functionals sum_{ij} A[i,j] conj(z_ij)^m for m < count."""
        if count > self.n_ang:
            raise ValueError("angular grid too small for requested coefficients")
        rows = np.fft.fft(weighted_values, axis=1)[:, :count]
        radial = self.r[:, None] ** np.arange(count)[None, :]
        return np.sum(rows * radial, axis=0)

    def integrate_values(self, values: np.ndarray) -> complex:
        return complex(np.sum(self.w_x * np.mean(values, axis=1)))

    def node_weights(self) -> np.ndarray:
        """Per-node weights so that sum(W * phi(nodes)) == integrate_values(phi)."""
        return np.repeat(self.w_x[:, None], self.n_ang, axis=1) / self.n_ang


@lru_cache(maxsize=128)
def disk_rule(a: float, levels: int = 12, panel_nodes: int = 12, n_ang: int = 1040) -> DiskRule:
    x, w = _radial_rule(a, levels, panel_nodes)
    return DiskRule(a=a, x=x, w_x=w, n_ang=n_ang)


@lru_cache(maxsize=16)
def circle_rule(n_ang: int = 1040) -> np.ndarray:
    return np.exp(2j * np.pi * np.arange(n_ang) / n_ang)


def circle_integral(phi: Callable, n_ang: int = 1040) -> QuadResult:
    """Mean of phi over the unit circle, with a half-resolution error proxy."""
    nodes = circle_rule(n_ang)
    vals = np.asarray(phi(nodes), dtype=complex)
    _check_finite(vals, nodes)
    value = complex(np.mean(vals))
    coarse = complex(np.mean(vals[::2]))
    return QuadResult(value, abs(value - coarse))


def _resolve(resolution) -> dict:
    if isinstance(resolution, dict):
        return resolution
    try:
        return RESOLUTIONS[resolution]
    except KeyError:
        raise ValueError(f"unknown resolution {resolution!r}") from None


def disk_integral(phi: Callable, t: float, weight: Callable | None = None,
                  resolution="default") -> QuadResult:
    """Integral of phi * weight against t(1-|z|^2)^{t-1} dnu (circle mean at t=0).

    Returns the estimate together with the difference from a coarser paired
    rule, which serves as the quadrature error proxy.
    """
    if t < 0:
        raise ValueError(f"t must be >= 0, got {t}")
    if t == 0:
        if weight is None:
            return circle_integral(phi, _resolve(resolution)["n_ang"])
        return circle_integral(lambda z: np.asarray(phi(z)) * weight(z),
                               _resolve(resolution)["n_ang"])
    params = _resolve(resolution)
    value = _disk_value(phi, t, weight, **params)
    coarse = _disk_value(phi, t, weight,
                         levels=max(4, params["levels"] - 2),
                         panel_nodes=max(4, params["panel_nodes"] // 2),
                         n_ang=max(16, params["n_ang"] // 2))
    return QuadResult(value, abs(value - coarse))


def _disk_value(phi, t, weight, levels, panel_nodes, n_ang) -> complex:
    rule = disk_rule(t, levels, panel_nodes, n_ang)
    nodes = rule.nodes()
    vals = np.asarray(phi(nodes), dtype=complex)
    if vals.shape != nodes.shape:
        vals = np.broadcast_to(vals, nodes.shape)
    _check_finite(vals, nodes)
    if weight is not None:
        vals = vals * weight(nodes)
    return t * rule.integrate_values(vals)


# ---------------------------------------------------------------------------
# Tents
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Tent:
    """Boundary-anchored region {w : |1 - w conj(z)/|z|| < 2(1-|z|^2)}; T_0 is the disk."""

    apex: complex

    def __post_init__(self):
        if abs(self.apex) >= 1:
            raise ValueError(f"apex must satisfy |z| < 1, got {self.apex}")

    def contains(self, w) -> np.ndarray:
        w = np.asarray(w, dtype=complex)
        inside = np.abs(w) < 1.0
        if abs(self.apex) < 1e-14:
            return inside
        zeta = np.conj(self.apex) / abs(self.apex)
        return inside & (np.abs(1.0 - w * zeta) < 2.0 * (1.0 - abs(self.apex) ** 2))


@dataclass(frozen=True)
class TentRule:
    """Masked product rule covering one tent: angular window around arg(apex),
    radial ladder restricted to the tent depth, membership applied exactly."""

    tent: Tent
    nodes_grid: np.ndarray     # (n_rad, n_win) complex
    weights: np.ndarray        # per-node weights including density and window fraction
    mask: np.ndarray           # exact membership of each node

    def integrate(self, phi: Callable, weight: Callable | None = None) -> complex:
        vals = np.asarray(phi(self.nodes_grid), dtype=complex)
        if vals.shape != self.nodes_grid.shape:
            vals = np.broadcast_to(vals, self.nodes_grid.shape)
        _check_finite(np.where(self.mask, vals, 0.0), self.nodes_grid)
        if weight is not None:
            vals = vals * weight(self.nodes_grid)
        return complex(np.sum(self.weights * np.where(self.mask, vals, 0.0)))


def tent_rule(apex: complex, a: float, levels: int = 13, panel_nodes: int = 8,
              n_win: int = 512) -> TentRule:
    """Build a rule for integrals over T_apex against (1-x)^{a-1} dx dtheta/2pi.

    The node pattern depends only on |apex| and is rotated by arg(apex), so
    tent integrals of radial integrands are exactly rotation invariant.
    """
    tent = Tent(apex)
    delta = 2.0 * (1.0 - abs(apex) ** 2)
    if abs(apex) < 1e-14 or delta >= 1.0:
        half_width = np.pi
        x_lo = 0.0
    else:
        half_width = np.arcsin(delta)
        x_lo = (1.0 - delta) ** 2
    # radial ladder from the tent floor to the boundary
    ladder = 1.0 - 2.0 ** (-np.arange(levels + 1, dtype=float))
    breaks = np.concatenate(([x_lo], ladder[ladder > x_lo]))
    xg, wg = roots_legendre(panel_nodes)
    xg = (xg + 1.0) / 2.0
    wg = wg / 2.0
    xs, ws = [], []
    for lo, hi in zip(breaks[:-1], breaks[1:]):
        x = lo + (hi - lo) * xg
        xs.append(x)
        ws.append((hi - lo) * wg * (1.0 - x) ** (a - 1.0))
    eps = 2.0 ** (-float(levels))
    uj, wj = _jacobi_unit(panel_nodes, a - 1.0)
    xs.append(1.0 - eps + eps * uj)
    ws.append(eps ** a * wj)
    x = np.concatenate(xs)
    w_x = np.concatenate(ws)

    arg0 = np.angle(apex) if abs(apex) > 1e-14 else 0.0
    offsets = -half_width + (np.arange(n_win) + 0.5) * (2.0 * half_width / n_win)
    theta = arg0 + offsets
    nodes = np.sqrt(x)[:, None] * np.exp(1j * theta)[None, :]
    ang_factor = (2.0 * half_width) / (2.0 * np.pi * n_win)
    weights = w_x[:, None] * ang_factor * np.ones((1, n_win))
    mask = tent.contains(nodes)
    return TentRule(tent=tent, nodes_grid=nodes, weights=weights, mask=mask)


def tent_integral(phi: Callable, z: complex, t: float,
                  weight: Callable | None = None, levels: int = 13,
                  panel_nodes: int = 8, n_win: int = 512) -> QuadResult:
    """Integral of phi * weight over T_z against t(1-|z|^2)^{t-1} dnu."""
    if t <= 0:
        raise ValueError(f"tent integrals need t > 0, got {t}")
    rule = tent_rule(z, t, levels, panel_nodes, n_win)
    value = t * rule.integrate(phi, weight)
    coarse_rule = tent_rule(z, t, max(4, levels - 2), max(4, panel_nodes // 2),
                            max(32, n_win // 2))
    coarse = t * coarse_rule.integrate(phi, weight)
    return QuadResult(value, abs(value - coarse))


# ---------------------------------------------------------------------------
# Integral kernels
# ---------------------------------------------------------------------------


def apply_PNM(phi: Callable, N: float, M: float, z: complex,
              absolute: bool = False, resolution="default") -> complex:
    """Kernel transform of phi at z: integrate N(1-|w|^2)^{N-1}/(1-z conj(w))^{1+M}.

    N = 0 is the circle variant.  With absolute=True the kernel modulus is used.
    """
    if abs(z) >= 1:
        raise ValueError(f"evaluation point must satisfy |z| < 1, got {z}")
    if N < 0 or M < 0:
        raise ValueError(f"kernel orders must be nonnegative, got N={N}, M={M}")
    params = _resolve(resolution)
    if N == 0:
        nodes = circle_rule(params["n_ang"])
        kern = (1.0 - z * np.conj(nodes)) ** (-(1.0 + M))
        if absolute:
            kern = np.abs(kern)
        vals = np.asarray(phi(nodes), dtype=complex) * kern
        _check_finite(vals, nodes)
        return complex(np.mean(vals))
    rule = disk_rule(N, params["levels"], params["panel_nodes"], params["n_ang"])
    nodes = rule.nodes()
    kern = (1.0 - z * np.conj(nodes)) ** (-(1.0 + M))
    if absolute:
        kern = np.abs(kern)
    vals = np.asarray(phi(nodes), dtype=complex)
    if vals.shape != nodes.shape:
        vals = np.broadcast_to(vals, nodes.shape)
    _check_finite(vals, nodes)
    return N * rule.integrate_values(vals * kern)


def _ray_radius(z: complex, alpha: np.ndarray) -> np.ndarray:
    """Distance from z to the unit circle along direction exp(i alpha)."""
    c = np.real(np.conj(z) * np.exp(1j * alpha))
    return -c + np.sqrt(c * c + 1.0 - abs(z) ** 2)


def centered_polar_nodes(z: complex, rho_power: float = 0.0, n_ang: int = 256,
                         levels: int = 9, panel_nodes: int = 10):
    """Nodes and weights for (1/pi) int int g(w) rho^{rho_power} drho dalpha, w = z + rho e^{i alpha}.

    Returns (w, alpha, weights) flattened.  Geometric panels cluster toward both
    rho = 0 (where the innermost panel folds rho^{rho_power} into a Jacobi rule)
    and the outer boundary rho = R(alpha), where disk-measure factors degenerate.
    """
    if abs(z) >= 1:
        raise ValueError(f"centre must satisfy |z| < 1, got {z}")
    if rho_power <= -1:
        raise ValueError(f"rho_power must be > -1, got {rho_power}")
    alphas = 2.0 * np.pi * (np.arange(n_ang) + 0.5) / n_ang
    R = _ray_radius(z, alphas)
    xg, wg = roots_legendre(panel_nodes)
    xg = (xg + 1.0) / 2.0
    wg = wg / 2.0
    uj, wj = _jacobi_unit_left(panel_nodes, rho_power)

    # panel breakpoints as fractions of R: geometric toward 0 and toward R
    inner = 2.0 ** (-np.arange(levels, 0, -1, dtype=float))      # 2^-levels .. 1/2
    outer = 1.0 - 2.0 ** (-np.arange(2, levels + 1, dtype=float))  # 3/4 .. 1-2^-levels
    fracs = np.concatenate((inner, outer, [1.0]))

    rho_rows = []
    wt_rows = []
    # innermost panel [0, R * 2^-levels] with the rho^power weight folded in
    h0 = fracs[0]
    rho_rows.append(uj * h0)
    wt_rows.append(wj * h0 ** (rho_power + 1.0))
    for lo, hi in zip(fracs[:-1], fracs[1:]):
        rho = lo + (hi - lo) * xg
        rho_rows.append(rho)
        wt_rows.append((hi - lo) * wg * rho ** rho_power)
    rho_frac = np.concatenate(rho_rows)          # fractions of R
    wt_frac = np.concatenate(wt_rows)

    rho = R[None, :] * rho_frac[:, None]
    wts = (R[None, :] ** (rho_power + 1.0)) * wt_frac[:, None]
    wts = wts * (2.0 * np.pi / n_ang) / np.pi
    w = z + rho * np.exp(1j * alphas)[None, :]
    alpha_grid = np.broadcast_to(alphas[None, :], w.shape)
    return w.ravel(), alpha_grid.ravel(), wts.ravel()


def apply_KN(psi: Callable, N: float, z: complex, n_ang: int = 256,
             levels: int = 9, panel_nodes: int = 10) -> complex:
    """Singular transform: integrate psi(w) (1-|w|^2)^N/(1-z conj(w))^N / (z - w).

    The orientation 1/(z-w) is the one for which the weighted reproducing
    identity phi = P^N(phi) + K^N(dbar phi) holds; Stokes' theorem on the disk
    minus a small ball around z fixes the sign (the residue term enters with
    the inner boundary's negative orientation).

    Computed in polar coordinates centred at z; the area element cancels the
    point singularity exactly, leaving a smooth integrand.
    """
    if abs(z) >= 1:
        raise ValueError(f"evaluation point must satisfy |z| < 1, got {z}")
    w, alpha, wts = centered_polar_nodes(z, 0.0, n_ang, levels, panel_nodes)
    vals = np.asarray(psi(w), dtype=complex)
    _check_finite(vals, w)
    aw = np.abs(w) ** 2
    kern = (1.0 - aw) ** N / (1.0 - z * np.conj(w)) ** N
    return complex(-np.sum(wts * vals * kern * np.exp(-1j * alpha)))


def estP_ratio(q: float, N: float, M: float, z_samples,
               n_ang: int = 1024, levels: int = 11, panel_nodes: int = 10):
    """Ratio of the singular kernel integral to its boundary-growth envelope.

    For each z returns (z, integral, envelope, ratio) where the integral is
    int |kernel(w,z)| / |w-z|^q dnu(w) and the envelope is
    1 + (1-|z|^2)^{N-M-q}.  Bounded ratios across boundary-approaching samples
    are the testable content (the constant is not explicit).
    """
    if q >= 2:
        raise ValueError(f"q must be < 2, got {q}")
    if N <= 0:
        raise ValueError(f"N must be > 0, got {N}")
    if M == N - q:
        raise ValueError("M = N - q is the excluded logarithmic case")
    rows = []
    for z in np.atleast_1d(np.asarray(z_samples, dtype=complex)):
        z = complex(z)
        n_ang_z = max(n_ang, int(64.0 / max(1e-3, 1.0 - abs(z))))
        w, _, wts = centered_polar_nodes(z, 1.0 - q, n_ang_z, levels, panel_nodes)
        aw = np.abs(w) ** 2
        integrand = N * (1.0 - aw) ** (N - 1.0) / np.abs(1.0 - z * np.conj(w)) ** (1.0 + M)
        value = float(np.sum(wts * integrand))
        envelope = 1.0 + (1.0 - abs(z) ** 2) ** (N - M - q)
        rows.append((z, value, envelope, value / envelope))
    return rows
