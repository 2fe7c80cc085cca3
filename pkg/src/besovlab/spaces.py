"""Besov, Bloch, and Carleson/multiplier norms for the weighted disk scale.

A space is carried by SpaceParams (p, s, t, weight).  Its norm is

    ||f||^p = integral of |(1+R)^k f|^p (1-|z|^2)^{(k-s)p} theta(z) m_t(dz)

with m_t = t(1-x)^{t-1} dnu for t > 0 and (1-x)^{-1} dnu for t = 0 (the
unweighted convention), and k any nonnegative integer above s; the default
order is the smallest one.  For s < 0 the default order is 0 and the norm is
a plain weighted Lebesgue norm.

Multiplier/Carleson quantities use the smallest POSITIVE integer order above
s instead: for s < 0 the symbol enters through its first-order derivative
(1+R)b, which is what ties the multiplier norm to the Bloch seminorm; an
order-zero convention would test boundedness of multiplication by b itself,
a different (sup-norm flavoured) condition.

For p = 2 and radial weights every norm here is diagonal over monomials,
with explicit weights tau_m in Beta-function form; those are used as exact
oracles and as the fast route inside the estimators.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np
from scipy.special import gammaln

from .quadrature import disk_rule
from .series import TaylorPoly, monomial_moments, multiply, pairing, power_kernel
from .weights import Weight, unit_weight

__all__ = [
    "k_above",
    "k_above_positive",
    "SpaceParams",
    "NormReport",
    "besov_norm",
    "diagonal_space_weights",
    "bloch_norm",
    "TestFamily",
    "test_family",
    "kernel_growth_threshold",
    "kernel_test_pair",
    "cb_norm_estimate",
    "carleson_constant",
    "norm_equivalence_probe",
    "index_shift_probe",
    "embed_B1_probe",
    "holder_duality_probe",
]


def k_above(s: float) -> int:
    """Smallest nonnegative integer strictly above s (0 for negative s)."""
    return max(0, int(np.floor(s)) + 1)


def k_above_positive(s: float) -> int:
    """Smallest positive integer strictly above s (the multiplier order)."""
    return max(1, int(np.floor(s)) + 1)


@dataclass(frozen=True)
class SpaceParams:
    """Identifies the space with integrability p, smoothness s, boundary power t."""

    p: float
    s: float
    t: float
    weight: Weight = field(default_factory=unit_weight)

    def __post_init__(self):
        if self.p <= 1:
            raise ValueError(f"p must be > 1, got {self.p}")
        if self.t < 0:
            raise ValueError(f"t must be >= 0, got {self.t}")
        if self.t == 0 and (self.weight.alpha != 0 or self.weight.beta != 0):
            raise ValueError("t = 0 admits only the unit weight")
        assert abs(1.0 / self.p + 1.0 / self.p_prime - 1.0) < 1e-14

    @property
    def p_prime(self) -> float:
        return self.p / (self.p - 1.0)

    @property
    def k_s(self) -> int:
        return k_above(self.s)

    def dual(self) -> "SpaceParams":
        """The dual space (p', -s, t, theta^{-p'/p}) under the t-pairing."""
        return SpaceParams(self.p_prime, -self.s, self.t, self.weight.dual(self.p))


@dataclass(frozen=True)
class NormReport:
    value: float
    quadrature_error: float
    params: dict

    def __post_init__(self):
        if not np.isfinite(self.value) or self.value < 0:
            raise ValueError(f"norm must be finite and >= 0, got {self.value}")


_RES_NORMS = {
    "low": dict(levels=8, panel_nodes=8, n_ang=528),
    "default": dict(levels=12, panel_nodes=10, n_ang=1040),
    "high": dict(levels=13, panel_nodes=14, n_ang=2080),
}


def _norm_integral(f: TaylorPoly, p: float, s: float, t: float, weight: Weight,
                   k: int, levels: int, panel_nodes: int, n_ang: int) -> float:
    """The defining integral at derivative order k (caller takes the p-th root)."""
    a = t + (k - s) * p if t > 0 else (k - s) * p
    if a <= 0:
        raise ValueError(f"derivative order k={k} must exceed s={s}")
    rule = disk_rule(a, levels, panel_nodes, max(n_ang, 4 * f.coeffs.size))
    mult = (1.0 + np.arange(f.coeffs.size)) ** k
    vals = rule.eval_poly(f.coeffs * mult)
    dens = weight.radial_profile(rule.x)[:, None] if weight.radial else weight(rule.nodes())
    scale = t if t > 0 else 1.0
    integrand = np.abs(vals) ** p * dens
    return float(scale * np.sum(rule.w_x * np.mean(integrand, axis=1)))


def besov_weighted_lp(f: TaylorPoly, p: float, s: float, t: float, weight: Weight,
                      k: int | None = None, resolution="default") -> tuple[float, float]:
    """Norm and error proxy for arbitrary p >= 1 (internal; p=1 allowed here)."""
    if k is None:
        k = k_above(s)
    if k <= s:
        raise ValueError(f"derivative order k={k} must exceed s={s}")
    par = _RES_NORMS[resolution] if isinstance(resolution, str) else resolution
    main = _norm_integral(f, p, s, t, weight, k, **par)
    coarse = _norm_integral(f, p, s, t, weight, k,
                            levels=max(4, par["levels"] - 2),
                            panel_nodes=max(4, par["panel_nodes"] // 2),
                            n_ang=par["n_ang"])
    value = main ** (1.0 / p)
    return value, abs(value - coarse ** (1.0 / p))


def besov_norm(f: TaylorPoly, sp: SpaceParams, k: int | None = None,
               resolution="default") -> NormReport:
    """Quadrature value of the Besov norm (p-th root of the defining integral)."""
    value, err = besov_weighted_lp(f, sp.p, sp.s, sp.t, sp.weight, k, resolution)
    return NormReport(value=value, quadrature_error=err,
                      params={"p": sp.p, "s": sp.s, "t": sp.t,
                              "weight": sp.weight.label,
                              "k": k if k is not None else sp.k_s})


def diagonal_space_weights(sp: SpaceParams, count: int, k: int | None = None) -> np.ndarray:
    """Monomial norms tau_m = ||z^m||^2 for p = 2 and a radial power weight.

    Radial integration in x = |z|^2 gives the Beta-function form

        tau_m = (1+m)^{2k} * c_t * Beta(m+1, T),   T = t + 2(k-s) + alpha,

    with c_t = t for t > 0 and 1 for the t = 0 convention.  This is the exact
    oracle the quadrature route is tested against.
    """
    if sp.p != 2:
        raise ValueError("diagonal weights require p = 2")
    if not sp.weight.radial:
        raise ValueError("diagonal weights require a radial weight")
    if k is None:
        k = sp.k_s
    if k <= sp.s:
        raise ValueError(f"derivative order k={k} must exceed s={sp.s}")
    T = sp.t + 2.0 * (k - sp.s) + sp.weight.alpha
    if T <= 0:
        raise ValueError(f"integrability fails: t + 2(k-s) + alpha = {T} <= 0")
    m = np.arange(count, dtype=float)
    beta = np.exp(gammaln(m + 1.0) + gammaln(T) - gammaln(m + 1.0 + T))
    scale = sp.t if sp.t > 0 else 1.0
    return (1.0 + m) ** (2 * k) * scale * beta


def bloch_norm(b: TaylorPoly, sigma: float, levels: int = 12, n_ang: int = 16) -> float:
    """Grid sup of (1-|z|^2)^{k-sigma} |(1+R)^k b(z)|, k the smallest
    nonnegative integer above sigma (classical Bloch seminorm at sigma = 0)."""
    k = k_above(sigma)
    radii = 1.0 - 2.0 ** (-np.arange(levels + 1, dtype=float))
    angles = np.exp(2j * np.pi * np.arange(n_ang) / n_ang)
    z = radii[:, None] * angles[None, :]
    mult = (1.0 + np.arange(b.coeffs.size)) ** k
    vals = TaylorPoly(b.coeffs * mult)(z)
    return float(np.max((1.0 - np.abs(z) ** 2) ** (k - sigma) * np.abs(vals)))


# ---------------------------------------------------------------------------
# Test families and multiplier norms
# ---------------------------------------------------------------------------


def kernel_growth_threshold(p: float, t: float, s0: float, s1: float) -> float:
    """Exponent floor lambda = (1+t)(max(p,p')-1) + max(0, -s0 p, -s1 p')."""
    pp = p / (p - 1.0)
    return (1.0 + t) * (max(p, pp) - 1.0) + max(0.0, -s0 * p, -s1 * pp)


def kernel_test_pair(z: complex, p: float, t: float, tau: float,
                     cap: int) -> tuple[TaylorPoly, TaylorPoly]:
    """Point-mass kernel pair (truncated): exponents (1+t+tau)/p and (1+t+tau)/p'.

    Their product is the reproducing kernel of exponent 1+t+tau at z, which is
    what turns pairings against it into derivative point evaluations.
    """
    pp = p / (p - 1.0)
    f = power_kernel(z, (1.0 + t + tau) / p, cap)
    g = power_kernel(z, (1.0 + t + tau) / pp, cap)
    return f, g


@dataclass(frozen=True)
class TestFamily:
    """Finite family of trial functions; suprema over it are lower bounds."""

    members: tuple
    labels: tuple

    def __post_init__(self):
        if len(self.members) != len(self.labels):
            raise ValueError("labels and members must align")
        for f in self.members:
            if f.degree < 0:
                raise ValueError("zero members are excluded from ratio families")

    def __len__(self) -> int:
        return len(self.members)

    def extended(self, other: "TestFamily") -> "TestFamily":
        return TestFamily(self.members + other.members, self.labels + other.labels)

    def to_json(self) -> str:
        payload = [
            {"label": lab, "coeffs": [[float(c.real), float(c.imag)] for c in f.coeffs]}
            for lab, f in zip(self.labels, self.members)
        ]
        return json.dumps(payload)

    @staticmethod
    def from_json(text: str) -> "TestFamily":
        payload = json.loads(text)
        members = tuple(
            TaylorPoly(np.array([complex(re, im) for re, im in item["coeffs"]]))
            for item in payload
        )
        return TestFamily(members, tuple(item["label"] for item in payload))


def test_family(sp: SpaceParams, mode: str = "mixed", degree: int = 128,
                count: int = 4, seed: int = 7, apex_levels: int = 6) -> TestFamily:
    """Trial functions for multiplier-norm lower bounds.

    kernels: truncated point-mass kernels over apex radii 1-2^{-j} (tau one
    above the growth threshold for the (s, -s) pair); random: seeded random
    polynomials; mixed: both.
    """
    members, labels = [], []
    if mode not in ("kernels", "random-polys", "mixed"):
        raise ValueError(f"unknown family mode {mode!r}")
    if mode in ("kernels", "mixed"):
        tau = kernel_growth_threshold(sp.p, sp.t, sp.s, -sp.s) + 1.0
        for j in range(apex_levels + 1):
            r = 1.0 - 2.0 ** (-j)
            z = complex(r)
            f, _ = kernel_test_pair(z, sp.p, sp.t, tau, degree)
            members.append(f)
            labels.append(f"kernel(r=1-2^-{j})")
    if mode in ("random-polys", "mixed"):
        rng = np.random.default_rng(seed)
        for i in range(count):
            coeffs = rng.standard_normal(degree + 1) + 1j * rng.standard_normal(degree + 1)
            members.append(TaylorPoly(coeffs))
            labels.append(f"random#{i}(seed={seed})")
    return TestFamily(tuple(members), tuple(labels))


def _multiplier_numerator_order(sp: SpaceParams) -> int:
    return k_above_positive(sp.s)


def cb_norm_estimate(b: TaylorPoly, sp: SpaceParams, family: TestFamily,
                     resolution="default", order: int | None = None) -> float:
    """Family sup of ||f (1+R)^l b||_{B^p_{s-l}} / ||f||_{B^p_s}, l the multiplier order.

    The numerator index s - l is negative, so the numerator is the weighted
    Lebesgue integral of |f (1+R)^l b|^p (1-x)^{(l-s)p} against the space
    measure, evaluated pointwise on the quadrature grid (no coefficient
    truncation of the product).  Reported value is a lower bound of the sup.
    The derivative order l defaults to the smallest positive integer above s
    and may be overridden (the space does not depend on the choice, only the
    comparison constants do).
    """
    if len(family) == 0:
        raise ValueError("family must be nonempty")
    l = _multiplier_numerator_order(sp) if order is None else order
    if l < 1 or l <= sp.s:
        raise ValueError(f"multiplier order must be a positive integer > s, got {l}")
    par = _RES_NORMS[resolution] if isinstance(resolution, str) else resolution
    a = (sp.t if sp.t > 0 else 0.0) + (l - sp.s) * sp.p
    if sp.t == 0:
        a = (l - sp.s) * sp.p
    cap = max(max(f.coeffs.size for f in family.members), b.coeffs.size)
    rule = disk_rule(a, par["levels"], par["panel_nodes"], max(par["n_ang"], 4 * cap))
    mult = (1.0 + np.arange(b.coeffs.size)) ** l
    symbol_vals = rule.eval_poly(b.coeffs * mult)
    dens = (sp.weight.radial_profile(rule.x)[:, None] if sp.weight.radial
            else sp.weight(rule.nodes()))
    scale = sp.t if sp.t > 0 else 1.0
    best = 0.0
    for f in family.members:
        fv = rule.eval_poly(f.coeffs)
        num = scale * np.sum(rule.w_x * np.mean(np.abs(fv * symbol_vals) ** sp.p * dens, axis=1))
        den = besov_norm(f, sp, resolution=resolution).value
        best = max(best, float(num) ** (1.0 / sp.p) / den)
    return best


def carleson_constant(b: TaylorPoly, sp: SpaceParams, family: TestFamily,
                      resolution="default") -> float:
    """Family sup of ||f||_{L^p(mu_b)} / ||f||_{B^p_s} with
    dmu_b = |(1+R)^l b|^p (1-x)^{(l-s)p} dmu_t; the same integral as
    cb_norm_estimate with the factors regrouped (cross-check)."""
    if len(family) == 0:
        raise ValueError("family must be nonempty")
    l = _multiplier_numerator_order(sp)
    par = _RES_NORMS[resolution] if isinstance(resolution, str) else resolution
    a = (sp.t if sp.t > 0 else 0.0) + (l - sp.s) * sp.p
    if sp.t == 0:
        a = (l - sp.s) * sp.p
    cap = max(max(f.coeffs.size for f in family.members), b.coeffs.size)
    rule = disk_rule(a, par["levels"], par["panel_nodes"], max(par["n_ang"], 4 * cap))
    mult = (1.0 + np.arange(b.coeffs.size)) ** l
    carleson_density = np.abs(rule.eval_poly(b.coeffs * mult)) ** sp.p
    dens = (sp.weight.radial_profile(rule.x)[:, None] if sp.weight.radial
            else sp.weight(rule.nodes()))
    scale = sp.t if sp.t > 0 else 1.0
    best = 0.0
    for f in family.members:
        fv = rule.eval_poly(f.coeffs)
        num = scale * np.sum(rule.w_x * np.mean(np.abs(fv) ** sp.p * carleson_density * dens, axis=1))
        den = besov_norm(f, sp, resolution=resolution).value
        best = max(best, float(num) ** (1.0 / sp.p) / den)
    return best


def norm_equivalence_probe(f: TaylorPoly, sp: SpaceParams, k1: int, k2: int,
                           resolution="default") -> float:
    """Ratio of the k1- and k2-order norms (equivalent norms, unknown constant)."""
    n1 = besov_norm(f, sp, k=k1, resolution=resolution).value
    n2 = besov_norm(f, sp, k=k2, resolution=resolution).value
    return n1 / n2


def index_shift_probe(f: TaylorPoly, p: float, s: float, t: float, t0: float,
                      weight: Weight | None = None, resolution="default") -> float:
    """Ratio of the (s, t) norm to the (s + t0/p, t + t0) norm (same space)."""
    if t0 <= 0:
        raise ValueError(f"t0 must be > 0, got {t0}")
    w = weight if weight is not None else unit_weight()
    n1, _ = besov_weighted_lp(f, p, s, t, w, resolution=resolution)
    n2, _ = besov_weighted_lp(f, p, s + t0 / p, t + t0, w, resolution=resolution)
    return n1 / n2


def embed_B1_probe(f: TaylorPoly, sp: SpaceParams, resolution="default") -> float:
    """Ratio ||f||_{B^1_{s-t}} / ||f||_{B^p_s(mu_t)} (embedding into the
    unweighted integrability-one scale; bounded across families)."""
    n1, _ = besov_weighted_lp(f, 1.0, sp.s - sp.t, 0.0, unit_weight(),
                              resolution=resolution)
    n2 = besov_norm(f, sp, resolution=resolution).value
    return n1 / n2


def holder_duality_probe(f: TaylorPoly, g: TaylorPoly, sp: SpaceParams,
                         resolution="default") -> float:
    """|<f, g>_t| over the product of the norm of f and the dual norm of g."""
    den_f = besov_norm(f, sp, resolution=resolution).value
    den_g = besov_norm(g, sp.dual(), resolution=resolution).value
    if den_f == 0 or den_g == 0:
        raise ValueError("zero-norm input in duality probe")
    return abs(pairing(f, g, sp.t)) / (den_f * den_g)
