"""Besov/Bloch/multiplier norm tests against the diagonal oracles."""

import numpy as np
import pytest

from besovlab.series import TaylorPoly, power_kernel
from besovlab.spaces import TestFamily as TrialFamily
from besovlab.spaces import test_family as make_family
from besovlab.spaces import (
    SpaceParams,
    besov_norm,
    bloch_norm,
    carleson_constant,
    cb_norm_estimate,
    diagonal_space_weights,
    embed_B1_probe,
    holder_duality_probe,
    index_shift_probe,
    k_above,
    k_above_positive,
    kernel_growth_threshold,
    norm_equivalence_probe,
)
from besovlab.symbols import branch_cut_symbol, lacunary_symbol
from besovlab.weights import power_cut_weight, power_weight, unit_weight


def randpoly(rng, degree):
    return TaylorPoly(rng.standard_normal(degree + 1) + 1j * rng.standard_normal(degree + 1))


class TestSpaceParams:
    def test_conjugate_exponent(self):
        sp = SpaceParams(3.0, 0.25, 1.0)
        assert abs(1.0 / sp.p + 1.0 / sp.p_prime - 1.0) < 1e-14

    def test_derivative_orders(self):
        assert k_above(-0.5) == 0
        assert k_above(0.0) == 1
        assert k_above(0.5) == 1
        assert k_above(1.0) == 2
        assert k_above_positive(-0.5) == 1
        assert k_above_positive(0.5) == 1

    def test_unit_weight_forced_on_circle_scale(self):
        with pytest.raises(ValueError):
            SpaceParams(2.0, 0.5, 0.0, power_weight(0.5))
        SpaceParams(2.0, 0.5, 0.0)  # fine

    def test_p_range(self):
        with pytest.raises(ValueError):
            SpaceParams(1.0, 0.5, 1.0)

    def test_dual_space(self):
        sp = SpaceParams(3.0, 0.25, 1.0, power_weight(0.6))
        d = sp.dual()
        assert d.p == pytest.approx(1.5)
        assert d.s == -0.25
        assert d.weight.alpha == pytest.approx(-0.3)


class TestBesovNorm:
    def test_zero_function(self):
        sp = SpaceParams(2.0, 0.5, 1.0)
        assert besov_norm(TaylorPoly.zero(4), sp).value == 0.0

    def test_constant_weight_one(self):
        # squared norm of the constant: int (1-x) dnu_1 = 1/2
        sp = SpaceParams(2.0, 0.5, 1.0)
        nr = besov_norm(TaylorPoly(np.array([1.0 + 0j])), sp, k=1)
        assert abs(nr.value ** 2 - 0.5) < 1e-8

    @pytest.mark.parametrize("weight", [unit_weight(), power_weight(0.5)])
    def test_monomials_match_diagonal_oracle(self, weight):
        sp = SpaceParams(2.0, 0.5, 1.0, weight)
        tau = diagonal_space_weights(sp, 51)
        for m in (0, 1, 7, 23, 50):
            nr = besov_norm(TaylorPoly.monomial(m), sp)
            assert abs(nr.value ** 2 - tau[m]) < 1e-8

    def test_negative_index_is_weighted_lebesgue(self):
        sp = SpaceParams(2.0, -0.5, 1.0)
        assert sp.k_s == 0
        tau = diagonal_space_weights(sp, 4)
        assert tau[0] == pytest.approx(0.5)  # int (1-x) dnu_1
        nr = besov_norm(TaylorPoly.monomial(0), sp)
        assert abs(nr.value ** 2 - 0.5) < 1e-10

    def test_circle_scale_norm(self):
        sp = SpaceParams(2.0, 0.5, 0.0)
        tau = diagonal_space_weights(sp, 9)
        for m in (0, 2, 8):
            nr = besov_norm(TaylorPoly.monomial(m), sp)
            assert abs(nr.value ** 2 - tau[m]) < 1e-8

    def test_homogeneity(self):
        rng = np.random.default_rng(0)
        sp = SpaceParams(2.0, 0.5, 1.0)
        f = randpoly(rng, 12)
        c = 2.3 - 1.1j
        n_scaled = besov_norm(f.scale(c), sp).value
        assert abs(n_scaled - abs(c) * besov_norm(f, sp).value) < 1e-12 * n_scaled

    def test_order_below_smoothness_rejected(self):
        sp = SpaceParams(2.0, 1.5, 1.0)
        with pytest.raises(ValueError):
            besov_norm(TaylorPoly.monomial(1), sp, k=1)

    def test_diagonal_requires_p2_radial(self):
        with pytest.raises(ValueError):
            diagonal_space_weights(SpaceParams(3.0, 0.5, 1.0), 4)
        with pytest.raises(ValueError):
            diagonal_space_weights(
                SpaceParams(2.0, 0.5, 1.0, power_cut_weight(0.1, 0.1)), 4)


class TestBlochNorm:
    def test_constant(self):
        assert bloch_norm(TaylorPoly(np.array([2.5 + 0j])), 0.0) == pytest.approx(2.5)

    def test_identity_at_negative_index(self):
        # k = 0: grid max of (1-r^2) r; calculus max 2/(3 sqrt(3)) bounds it above
        value = bloch_norm(TaylorPoly.monomial(1), -1.0)
        radii = 1.0 - 2.0 ** (-np.arange(13, dtype=float))
        grid_oracle = np.max((1.0 - radii ** 2) * radii)
        assert value == pytest.approx(grid_oracle, rel=1e-12)
        assert value <= 2.0 / (3.0 * np.sqrt(3.0)) + 1e-12

    def test_lacunary_stable_in_depth(self):
        values = [bloch_norm(lacunary_symbol(K, 2 ** K), 0.0) for K in (6, 8, 10)]
        assert max(values) / min(values) < 1.1


class TestFamilies:
    def test_kernel_at_center_is_constant(self):
        sp = SpaceParams(2.0, 0.5, 1.0)
        fam = make_family(sp, "kernels", degree=16, apex_levels=2)
        assert fam.members[0].degree == 0
        assert fam.members[0].coeffs[0] == pytest.approx(1.0)

    def test_kernel_functional_form(self):
        sp = SpaceParams(2.0, 0.5, 1.0)
        tau = kernel_growth_threshold(2.0, 1.0, 0.5, -0.5) + 1.0
        fam = make_family(sp, "kernels", degree=32, apex_levels=4)
        expected = power_kernel(1.0 - 2.0 ** -4, (2.0 + tau) / 2.0, 32)
        assert np.allclose(fam.members[-1].coeffs, expected.coeffs)

    def test_random_family_reproducible(self):
        sp = SpaceParams(2.0, 0.5, 1.0)
        f1 = make_family(sp, "random-polys", degree=16, seed=5)
        f2 = make_family(sp, "random-polys", degree=16, seed=5)
        for a, b in zip(f1.members, f2.members):
            assert np.array_equal(a.coeffs, b.coeffs)

    def test_mixed_concatenates(self):
        sp = SpaceParams(2.0, 0.5, 1.0)
        k = make_family(sp, "kernels", degree=8, apex_levels=3)
        r = make_family(sp, "random-polys", degree=8, count=4)
        m = make_family(sp, "mixed", degree=8, count=4, apex_levels=3)
        assert len(m) == len(k) + len(r)

    def test_serialization_round_trip(self):
        sp = SpaceParams(2.0, 0.5, 1.0)
        fam = make_family(sp, "mixed", degree=8, count=2, apex_levels=2)
        back = TrialFamily.from_json(fam.to_json())
        assert back.labels == fam.labels
        for a, b in zip(fam.members, back.members):
            assert np.array_equal(a.coeffs, b.coeffs)

    def test_zero_members_rejected(self):
        with pytest.raises(ValueError):
            TrialFamily((TaylorPoly.zero(3),), ("zero",))

    def test_unknown_mode(self):
        with pytest.raises(ValueError):
            make_family(SpaceParams(2.0, 0.5, 1.0), "fourier")


class TestMultiplierNorms:
    def test_zero_symbol(self):
        sp = SpaceParams(2.0, 0.5, 1.0)
        fam = make_family(sp, "random-polys", degree=8, count=2)
        assert cb_norm_estimate(TaylorPoly.zero(3), sp, fam) == 0.0

    def test_carleson_equals_multiplier_route(self):
        sp = SpaceParams(2.0, 0.5, 1.0)
        fam = make_family(sp, "mixed", degree=32, count=3, apex_levels=3)
        b = branch_cut_symbol(0.3, 64)
        v1 = cb_norm_estimate(b, sp, fam)
        v2 = carleson_constant(b, sp, fam)
        assert abs(v1 - v2) < 1e-10 * v1

    def test_family_monotonicity(self):
        sp = SpaceParams(2.0, 0.5, 1.0)
        small = make_family(sp, "random-polys", degree=16, count=2)
        large = small.extended(make_family(sp, "kernels", degree=16, apex_levels=3))
        b = TaylorPoly.monomial(1)
        assert cb_norm_estimate(b, sp, large) >= cb_norm_estimate(b, sp, small)

    def test_multiplier_value_stable_under_enrichment(self):
        sp = SpaceParams(2.0, 0.5, 1.0)
        base = make_family(sp, "mixed", degree=128)
        rich = make_family(sp, "mixed", degree=256, count=8, apex_levels=8)
        b = TaylorPoly.monomial(1)
        v1 = cb_norm_estimate(b, sp, base)
        v2 = cb_norm_estimate(b, sp, rich.extended(base))
        assert abs(v2 - v1) / v1 < 0.05

    def test_negative_index_tracks_growth_seminorm(self):
        # below zero smoothness the multiplier norm is a Bloch-type quantity
        sp = SpaceParams(2.0, -0.5, 1.0)
        fam = make_family(sp, "mixed", degree=128)
        symbols = [TaylorPoly.monomial(1), TaylorPoly.monomial(8),
                   lacunary_symbol(8), branch_cut_symbol(0.3)]
        ratios = [cb_norm_estimate(b, sp, fam) / bloch_norm(b, 0.0) for b in symbols]
        assert max(ratios) / min(ratios) <= 10.0

    def test_order_independence_band(self):
        # the space does not depend on the derivative order; constants do
        sp = SpaceParams(2.0, 0.5, 1.0)
        fam = make_family(sp, "mixed", degree=128)
        symbols = [TaylorPoly.monomial(1), TaylorPoly.monomial(8),
                   lacunary_symbol(8), branch_cut_symbol(0.3)]
        ratios = [cb_norm_estimate(b, sp, fam, order=1)
                  / cb_norm_estimate(b, sp, fam, order=2) for b in symbols]
        assert max(ratios) / min(ratios) <= 10.0

    def test_empty_family_rejected(self):
        sp = SpaceParams(2.0, 0.5, 1.0)
        with pytest.raises(ValueError):
            cb_norm_estimate(TaylorPoly.monomial(1), sp,
                             TrialFamily(tuple(), tuple()))


class TestStructureProbes:
    def test_equivalent_orders_band(self):
        rng = np.random.default_rng(1)
        sp = SpaceParams(2.0, 0.5, 1.0)
        ratios = [norm_equivalence_probe(randpoly(rng, 32), sp, 1, 2)
                  for _ in range(20)]
        assert max(ratios) / min(ratios) <= 10.0

    def test_equivalent_orders_monomial_sweep(self):
        sp = SpaceParams(2.0, 0.5, 1.0)
        ratios = [norm_equivalence_probe(TaylorPoly.monomial(m), sp, 1, 2)
                  for m in range(0, 51, 5)]
        assert max(ratios) / min(ratios) <= 10.0

    def test_index_shift_band(self):
        rng = np.random.default_rng(2)
        one = TaylorPoly(np.array([1.0 + 0j]))
        assert 0 < index_shift_probe(one, 2.0, 0.25, 1.0, 1.0) < np.inf
        ratios = [index_shift_probe(randpoly(rng, 32), 2.0, 0.25, 1.0, 1.0)
                  for _ in range(8)]
        ratios += [index_shift_probe(TaylorPoly.monomial(m), 2.0, 0.25, 1.0, 1.0)
                   for m in range(0, 101, 20)]
        assert max(ratios) / min(ratios) <= 10.0

    def test_embedding_band(self):
        rng = np.random.default_rng(3)
        sp = SpaceParams(2.0, 0.5, 1.0)
        ratios = [embed_B1_probe(randpoly(rng, 32), sp) for _ in range(8)]
        ratios += [embed_B1_probe(TaylorPoly.monomial(m), sp)
                   for m in range(0, 101, 20)]
        # the embedding is one-sided: the ratio is bounded above, not below
        assert max(ratios) <= 10.0
        assert all(r > 0 for r in ratios)

    def test_duality_bound_constants(self):
        sp = SpaceParams(2.0, 0.5, 1.0)
        one = TaylorPoly(np.array([1.0 + 0j]))
        # <1,1>_1 = 1, both norms sqrt(1/2): ratio exactly 2
        assert holder_duality_probe(one, one, sp) == pytest.approx(2.0, abs=1e-7)

    def test_duality_orthogonal_pair(self):
        sp = SpaceParams(2.0, 0.5, 0.0)
        assert holder_duality_probe(TaylorPoly.monomial(1),
                                    TaylorPoly.monomial(2), sp) == 0.0

    def test_duality_random_family_bounded(self):
        rng = np.random.default_rng(4)
        sp = SpaceParams(2.0, 0.5, 1.0)
        vals = [holder_duality_probe(randpoly(rng, 24), randpoly(rng, 24), sp)
                for _ in range(10)]
        assert max(vals) <= 10.0

    def test_duality_zero_rejected(self):
        sp = SpaceParams(2.0, 0.5, 1.0)
        with pytest.raises(ValueError):
            holder_duality_probe(TaylorPoly.zero(2), TaylorPoly.monomial(1), sp)
