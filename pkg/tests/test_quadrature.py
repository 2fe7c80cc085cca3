"""Disk, tent, and singular-kernel quadrature tests."""

import numpy as np
import pytest

from besovlab.quadrature import (
    QuadratureEvalError,
    Tent,
    apply_KN,
    apply_PNM,
    centered_polar_nodes,
    circle_integral,
    disk_integral,
    disk_rule,
    estP_ratio,
    tent_integral,
)
from besovlab.series import TaylorPoly, fractional_r_multipliers, power_kernel

ONE = lambda z: np.ones_like(z, dtype=complex)


class TestDiskIntegral:
    def test_normalized_mass(self):
        for t in (0.5, 1.0, 2.0):
            res = disk_integral(ONE, t)
            assert abs(res.value - 1.0) < 1e-10

    def test_second_moment(self):
        res = disk_integral(lambda z: np.abs(z) ** 2, 1.0)
        assert abs(res.value - 0.5) < 1e-8

    def test_angular_symmetry(self):
        res = disk_integral(lambda z: z, 1.3)
        assert abs(res.value) < 1e-10

    def test_rotation_equivariance(self):
        rng = np.random.default_rng(0)
        f = TaylorPoly(rng.standard_normal(33) + 1j * rng.standard_normal(33))
        alpha = np.exp(0.7j)
        base = disk_integral(lambda z: np.abs(f(z)) ** 2, 1.0)
        rotated = disk_integral(lambda z: np.abs(f(alpha * z)) ** 2, 1.0)
        assert abs(base.value - rotated.value) < 1e-10 * abs(base.value)

    def test_circle_route_at_t_zero(self):
        res = disk_integral(lambda z: z * np.conj(z), 0.0)
        assert abs(res.value - 1.0) < 1e-12  # |z|^2 = 1 on the circle

    def test_error_proxy_reported(self):
        res = disk_integral(lambda z: np.abs(z) ** 0.7, 1.0)
        assert res.error >= 0
        assert abs(res.value - 1.0 / (1.0 + 0.35)) < 1e-4  # int x^{0.35} dx-type oracle

    def test_non_finite_integrand_raises(self):
        def bad(z):
            out = np.ones_like(z, dtype=complex)
            out[np.abs(z) > 0.9] = np.nan
            return out

        with pytest.raises(QuadratureEvalError) as info:
            disk_integral(bad, 1.0)
        assert abs(info.value.node) > 0.9

    def test_refinement_doubling_on_precision_integrands(self):
        """Integrands the acceptance suite evaluates at tolerances <= 1e-6."""
        rng = np.random.default_rng(1)
        f = TaylorPoly(rng.standard_normal(65) + 1j * rng.standard_normal(65))
        base = dict(levels=12, panel_nodes=10, n_ang=1040)
        doubled = dict(levels=13, panel_nodes=20, n_ang=2080)
        integrands = [
            (lambda z: np.abs(f(z)) ** 2, 1.0),                    # p = 2 norms
            (lambda z: np.abs(f(z)) ** 3, 3.0),                    # p = 3 norms
            (lambda z: z ** 7 * (1.0 - 0.3 * np.conj(z)) ** -2.5, 1.0),  # kernel transforms
        ]
        for phi, t in integrands:
            v1 = disk_integral(phi, t, resolution=base)
            v2 = disk_integral(phi, t, resolution=doubled)
            assert abs(v1.value - v2.value) <= 1e-6 * max(abs(v2.value), 1e-12)


class TestTents:
    def test_disk_tent(self):
        res = tent_integral(ONE, 0.0, 1.0)
        assert abs(res.value - 1.0) < 1e-10

    def test_membership_matches_inequality(self):
        tent = Tent(0.6 + 0.2j)
        rng = np.random.default_rng(2)
        w = rng.uniform(-1, 1, 200) + 1j * rng.uniform(-1, 1, 200)
        inside = tent.contains(w)
        z = tent.apex
        manual = (np.abs(w) < 1) & (
            np.abs(1.0 - w * np.conj(z) / abs(z)) < 2.0 * (1.0 - abs(z) ** 2))
        assert np.array_equal(inside, manual)

    def test_boundary_scaling_band(self):
        # tent mass against the t = 1 measure scales like (1-|z|^2)^2
        ratios = []
        for r in (0.9, 0.95, 0.99):
            value = tent_integral(ONE, complex(r), 1.0).value.real
            ratios.append(value / (1.0 - r ** 2) ** 2)
        assert max(ratios) / min(ratios) < 1.25
        assert all(1.0 < q < 3.0 for q in ratios)

    def test_rotation_invariance_exact(self):
        v1 = tent_integral(ONE, 0.99j, 1.0).value.real
        v2 = tent_integral(ONE, 0.99, 1.0).value.real
        assert v1 == pytest.approx(v2, abs=1e-15)

    def test_apex_on_boundary_rejected(self):
        with pytest.raises(ValueError):
            Tent(1.0 + 0j)
        with pytest.raises(ValueError):
            tent_integral(ONE, 0.5, 0.0)


class TestKernelTransforms:
    def test_reproduces_holomorphic_monomials(self):
        for m in (0, 3, 9):
            for N in (1.0, 2.0):
                z = 0.4 - 0.25j
                val = apply_PNM(lambda w, m=m: w ** m, N, N, z)
                assert abs(val - z ** m) < 1e-8

    def test_total_mass_at_center(self):
        assert abs(apply_PNM(ONE, 1.5, 0.7, 0.0) - 1.0) < 1e-12

    def test_matches_fractional_multiplier(self):
        z = 0.3
        exact = fractional_r_multipliers(6, 0.5, 1.0)[5] * z ** 5
        val = apply_PNM(lambda w: w ** 5, 1.0, 1.5, z)
        assert abs(val - exact) / abs(exact) < 1e-6

    def test_circle_variant(self):
        # N = 0 integrates over the circle; reproduces polynomial values
        z = 0.35 + 0.1j
        val = apply_PNM(lambda w: w ** 3, 0.0, 0.0, z)
        assert abs(val - z ** 3) < 1e-12

    def test_invalid_arguments(self):
        with pytest.raises(ValueError):
            apply_PNM(ONE, 1.0, 1.0, 1.2)
        with pytest.raises(ValueError):
            apply_PNM(ONE, -1.0, 1.0, 0.3)


class TestSingularTransform:
    def test_zero_input(self):
        assert apply_KN(lambda w: np.zeros_like(w), 1.0, 0.3 + 0.2j) == 0

    def test_reproducing_identity_radial_bump(self):
        phi = lambda w: 1.0 - np.abs(w) ** 2
        dbar = lambda w: -w
        for N in (1.0, 2.0):
            for z in (0.0, 0.4 + 0.1j):
                lhs = complex(phi(np.array([z]))[0])
                rhs = apply_PNM(phi, N, N, complex(z)) + apply_KN(dbar, N, complex(z))
                assert abs(lhs - rhs) < 2e-3

    def test_reproducing_identity_first_moment(self):
        phi = lambda w: (1.0 - np.abs(w) ** 2) * w
        dbar = lambda w: -w ** 2
        z = 0.4 + 0.1j
        lhs = complex(phi(np.array([z]))[0])
        rhs = apply_PNM(phi, 2.0, 2.0, z) + apply_KN(dbar, 2.0, z)
        assert abs(lhs - rhs) < 2e-3

    def test_polar_nodes_cover_disk(self):
        w, _, wts = centered_polar_nodes(0.3 + 0.4j, 1.0)
        assert np.all(np.abs(w) <= 1.0 + 1e-12)
        # with rho_power = 1 the weights integrate the constant to the disk area / pi
        assert abs(np.sum(wts) - 1.0) < 1e-10


class TestEnvelopeRatios:
    def test_center_is_finite(self):
        rows = estP_ratio(1.0, 1.0, 0.5, [0.0])
        assert rows[0][1] > 0 and np.isfinite(rows[0][1])

    def test_boundary_band(self):
        rows = estP_ratio(1.0, 2.0, 2.0, [0.9, 0.99, 0.999])
        ratios = [r[3] for r in rows]
        assert max(ratios) / min(ratios) <= 10

    def test_excluded_cases(self):
        with pytest.raises(ValueError):
            estP_ratio(2.0, 1.0, 0.5, [0.5])
        with pytest.raises(ValueError):
            estP_ratio(1.0, 1.0, 0.0, [0.5])
