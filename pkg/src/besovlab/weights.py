"""Bekolle-type weights on the disk: catalog, tent-ratio constant, diagnostics.

The catalog is the closed two-parameter family

    theta(z) = (1-|z|^2)^alpha * |1-z|^beta,

which contains the constant weight, the radial powers, and a non-radial
exemplar, and is closed under the conjugate-dual map theta -> theta^{-p'/p}.
For radial powers the tent ratios stay bounded exactly when
alpha in (-t, t(p-1)): the theta-tent mass scales like (1-|z|)^{1+t+alpha}
(finite only for alpha > -t) and the dual-tent mass like
(1-|z|)^{1+t-alpha p'/p} (finite only for alpha < t p/p'), and inside the
band the two ratio factors cancel to a constant.  Outside the band one tent
integral diverges, so the numerical estimate grows without bound as the
quadrature ladder deepens; the estimator ties the ladder depth to the apex
grid parameter J precisely so that this divergence is visible as growth in J
while estimates for admissible weights settle.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .quadrature import apply_PNM, disk_rule, tent_rule

__all__ = [
    "Weight",
    "unit_weight",
    "power_weight",
    "power_cut_weight",
    "weight_from_spec",
    "BekolleEstimate",
    "bekolle_constant",
    "doubling_check",
    "kernel_condition",
    "projection_bound_probe",
    "power_weight_band",
]


@dataclass(frozen=True)
class Weight:
    """Pointwise positive weight (1-|z|^2)^alpha |1-z|^beta with metadata."""

    alpha: float = 0.0
    beta: float = 0.0

    @property
    def label(self) -> str:
        if self.alpha == 0 and self.beta == 0:
            return "unit"
        if self.beta == 0:
            return f"power(alpha={self.alpha:g})"
        return f"power-cut(alpha={self.alpha:g},beta={self.beta:g})"

    @property
    def radial(self) -> bool:
        return self.beta == 0

    def __call__(self, z) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        out = np.ones(z.shape)
        if self.alpha != 0:
            out = out * (1.0 - np.abs(z) ** 2) ** self.alpha
        if self.beta != 0:
            out = out * np.abs(1.0 - z) ** self.beta
        return out

    def radial_profile(self, x) -> np.ndarray:
        """Value as a function of x = |z|^2 (radial weights only)."""
        if not self.radial:
            raise ValueError(f"{self.label} is not radial")
        x = np.asarray(x, dtype=float)
        return (1.0 - x) ** self.alpha if self.alpha != 0 else np.ones_like(x)

    def dual(self, p: float) -> "Weight":
        """The conjugate weight theta^{-p'/p} appearing in dual Besov spaces."""
        if p <= 1:
            raise ValueError(f"p must be > 1, got {p}")
        factor = -1.0 / (p - 1.0)  # -p'/p
        return Weight(alpha=self.alpha * factor, beta=self.beta * factor)


def unit_weight() -> Weight:
    return Weight()


def power_weight(alpha: float) -> Weight:
    return Weight(alpha=alpha)


def power_cut_weight(alpha: float, beta: float) -> Weight:
    return Weight(alpha=alpha, beta=beta)


_CATALOG = {"unit", "power", "power-cut"}


def weight_from_spec(label: str, **params) -> Weight:
    """Catalog lookup by label + parameters (CLI-facing)."""
    if label == "unit":
        if params:
            raise ValueError("unit weight takes no parameters")
        return unit_weight()
    if label == "power":
        return power_weight(float(params.pop("alpha")))
    if label == "power-cut":
        return power_cut_weight(float(params.pop("alpha")), float(params.pop("beta")))
    raise ValueError(f"unknown weight label {label!r}; catalog: {sorted(_CATALOG)}")


def power_weight_band(p: float, t: float) -> tuple[float, float]:
    """Admissible exponent band (-t, t(p-1)) for radial power weights."""
    return (-t, t * (p - 1.0))


@dataclass(frozen=True)
class BekolleEstimate:
    """Grid estimate of the tent-ratio constant; a lower bound for the true sup."""

    p: float
    t: float
    J: int
    constant_estimate: float
    grid: tuple = field(repr=False)  # ((apex, per-apex value), ...)

    def per_apex(self) -> list:
        return list(self.grid)


def _tent_masses(apex: complex, t: float, weights, levels: int,
                 panel_nodes: int, n_win: int) -> list:
    """Masses of several weights over one tent against t(1-x)^{t-1} dnu."""
    rule = tent_rule(apex, t, levels, panel_nodes, n_win)
    nodes = rule.nodes_grid
    base = np.where(rule.mask, rule.weights, 0.0)
    return [float(t * np.sum(base * w(nodes))) for w in weights]


def bekolle_constant(theta: Weight, p: float, t: float, J: int = 10,
                     angles: int = 8, panel_nodes: int = 8,
                     n_win: int = 384) -> BekolleEstimate:
    """Max over the apex grid of (mu(T)/nu(T))^{1/p} (mu'(T)/nu(T))^{1/p'}.

    Apexes sit at radii 1-2^{-j}, j = 0..J (tent at radius 0 is the whole
    disk).  The tent quadrature ladder has depth 2J+2 so each tent on the
    grid keeps at least J+2 interior refinement shells: admissible weights
    then converge in J, while weights with a divergent dual tent mass show
    their divergence as growth in J.
    """
    if p <= 1:
        raise ValueError(f"p must be > 1, got {p}")
    if t <= 0:
        raise ValueError(f"t must be > 0, got {t}")
    pp = p / (p - 1.0)
    dual = theta.dual(p)
    levels = 2 * J + 2
    radii = 1.0 - 2.0 ** (-np.arange(J + 1, dtype=float))
    angle_list = [0.0] if theta.radial else list(2.0 * np.pi * np.arange(angles) / angles)
    grid = []
    for r in radii:
        for ang in angle_list:
            apex = complex(r * np.exp(1j * ang)) if r > 0 else 0j
            mu, mu_dual, nu = _tent_masses(apex, t, (theta, dual, unit_weight()),
                                           levels, panel_nodes, n_win)
            value = (mu / nu) ** (1.0 / p) * (mu_dual / nu) ** (1.0 / pp)
            grid.append((apex, value))
            if r == 0:
                break  # the disk tent does not depend on the angle
    best = max(v for _, v in grid)
    return BekolleEstimate(p=p, t=t, J=J, constant_estimate=best, grid=tuple(grid))


def doubling_check(theta: Weight, p: float, t: float, zeta: complex,
                   r_pairs, bekolle: float | None = None, J: int = 10,
                   tolerance: float = 0.05) -> list:
    """Tent-mass doubling against the power bound along one boundary ray.

    Rows are (r1, r2, mass ratio, bound, ok) with
    bound = B^p ((1-r1)/(1-r2))^{(1+t)p}; ok allows the stated tolerance.
    """
    if abs(abs(zeta) - 1.0) > 1e-12:
        raise ValueError(f"zeta must be unimodular, got {zeta}")
    if bekolle is None:
        bekolle = bekolle_constant(theta, p, t, J=J).constant_estimate
    levels = 2 * J + 2
    rows = []
    for r1, r2 in r_pairs:
        if not (0 < r1 <= r2 < 1):
            raise ValueError(f"need 0 < r1 <= r2 < 1, got ({r1}, {r2})")
        m1, = _tent_masses(complex(r1 * zeta), t, (theta,), levels, 8, 384)
        m2, = _tent_masses(complex(r2 * zeta), t, (theta,), levels, 8, 384)
        ratio = m1 / m2
        bound = bekolle ** p * ((1.0 - r1) / (1.0 - r2)) ** ((1.0 + t) * p)
        rows.append((r1, r2, ratio, bound, ratio <= bound * (1.0 + tolerance)))
    return rows


def kernel_condition(theta: Weight, p: float, t: float, M: float,
                     z_samples, resolution="default") -> tuple[float, list]:
    """Kernel-transform characterisation of the tent condition.

    sup over samples of (1-|z|^2)^M (|K|theta(z))^{1/p} (|K|theta^{-p'/p}(z))^{1/p'}
    where |K| is the modulus kernel of order (t, t+M).  Requires
    M > (1+t)(max(p,p')-1), the range in which the equivalence holds.
    """
    pp = p / (p - 1.0)
    if M <= (1.0 + t) * (max(p, pp) - 1.0):
        raise ValueError(
            f"need M > (1+t)(max(p,p')-1) = {(1.0 + t) * (max(p, pp) - 1.0):g}, got {M}"
        )
    dual = theta.dual(p)
    rows = []
    for z in np.atleast_1d(np.asarray(z_samples, dtype=complex)):
        z = complex(z)
        a = apply_PNM(theta, t, t + M, z, absolute=True, resolution=resolution).real
        b = apply_PNM(dual, t, t + M, z, absolute=True, resolution=resolution).real
        val = (1.0 - abs(z) ** 2) ** M * a ** (1.0 / p) * b ** (1.0 / pp)
        rows.append((z, val))
    return max(v for _, v in rows), rows


def projection_bound_probe(theta: Weight, p: float, t: float,
                           exponents=None, levels: int = 12,
                           panel_nodes: int = 10, n_ang: int = 512) -> tuple[float, list]:
    """Lower bound for the norm of the modulus projection on L^p(theta dnu_t).

    Tests the boundary-peaking family phi_a(w) = (1-|w|^2)^{-a}; the ratios
    ||P+ phi_a|| / ||phi_a|| stay bounded for admissible radial weights and
    grow along the family otherwise.  Radial weights only (the probe exploits
    rotation invariance to reduce to a radial grid).
    """
    if not theta.radial:
        raise ValueError("projection probe supports radial weights only")
    if t <= 0:
        raise ValueError(f"t must be > 0, got {t}")
    if exponents is None:
        a_max = (t + theta.alpha) / p
        exponents = [0.98 * a_max * (1.0 - 2.0 ** (-j)) for j in range(1, 7)]
    rule = disk_rule(t, levels, panel_nodes, n_ang)
    x = rule.x
    r = rule.r
    theta_vals = theta.radial_profile(x)
    # kernel matrix: angular mean of |1 - r_i r_k e^{i phi}|^{-(1+t)}, which has
    # the closed form 2F1(a, a; 1; (r_i r_k)^2) with a = (1+t)/2 (the peak near
    # phi = 0 is far too narrow for a uniform grid when both radii approach 1)
    from scipy.special import hyp2f1

    a_half = (1.0 + t) / 2.0
    K = hyp2f1(a_half, a_half, 1.0, (r[:, None] * r[None, :]) ** 2)
    rows = []
    for a in exponents:
        sample = (1.0 - x) ** (-a)
        proj = t * K @ (rule.w_x * sample)
        num = float(t * np.sum(rule.w_x * theta_vals * np.abs(proj) ** p)) ** (1.0 / p)
        den = float(t * np.sum(rule.w_x * theta_vals * sample ** p)) ** (1.0 / p)
        rows.append((a, num / den))
    return max(v for _, v in rows), rows
