"""Bilinear-form estimator tests: exact steps, gradients, reports."""

import numpy as np
import pytest

from besovlab.estimators import (
    ConfigurationError,
    GammaEstimate,
    GammaParams,
    bloch_lower_bound,
    bloch_witness_pairs,
    equivalence_report,
    gamma1,
    gamma1_objective,
    gamma2,
    gamma2_objective,
    holder_direction_check,
)
from besovlab.estimators import _QuadratureSide
from besovlab.hankel import hankel_norm_p2
from besovlab.series import TaylorPoly
from besovlab.spaces import SpaceParams
from besovlab.symbols import branch_cut_symbol, lacunary_symbol
from besovlab.weights import power_weight

P2 = GammaParams(2.0, 0.5, -0.5, 1.0)
CHEAP3 = GammaParams(3.0, 1.0 / 3.0, -1.0 / 3.0, 1.0, degree=24, restarts=2,
                     max_sweeps=30)


class TestParams:
    def test_regimes(self):
        assert P2.classify_regime() == "BF"
        assert GammaParams(2.0, -0.5, -0.5, 1.0).classify_regime() == "predualBinf"
        assert GammaParams(2.0, 0.25, -0.75, 1.0).classify_regime() == "BFG"
        assert GammaParams(2.0, 1.5, -0.5, 1.0).classify_regime() == "other"

    def test_cross_index(self):
        p = GammaParams(2.0, 0.25, -0.75, 1.0, pair_t=1.0)
        assert p.s_cross == pytest.approx(0.5)
        assert p.s_sum == pytest.approx(-0.5)
        assert p.pairing_index == 1.0

    def test_invalid(self):
        with pytest.raises(ConfigurationError):
            GammaParams(1.0, 0.5, -0.5, 1.0)
        with pytest.raises(ConfigurationError):
            GammaParams(2.0, 0.5, -0.5, -1.0)


class TestGamma2:
    def test_zero_symbol(self):
        est = gamma2(TaylorPoly.zero(4), P2)
        assert est.value == 0.0

    def test_agrees_with_operator_norm(self):
        b = TaylorPoly.monomial(8)
        est = gamma2(b, P2)
        op = hankel_norm_p2(b.pad(2 * P2.degree), 0.5, 1.0, size=P2.degree)
        assert abs(est.value - op) / op < 1e-9

    def test_value_reproducible_from_witnesses(self):
        b = lacunary_symbol(8)
        est = gamma2(b, P2)
        again = gamma2_objective(b, P2, est.witness_f, est.witness_g)
        assert abs(again - est.value) < 1e-10 * est.value

    def test_homogeneity_with_reused_witnesses(self):
        b = branch_cut_symbol(0.3)
        est = gamma2(b, P2)
        scaled = gamma2_objective(b.scale(3.5), P2, est.witness_f, est.witness_g)
        assert scaled == pytest.approx(3.5 * est.value, rel=1e-12)
        re_opt = gamma2(b.scale(3.5), P2)
        assert re_opt.value == pytest.approx(3.5 * est.value, rel=1e-6)

    def test_restart_monotonicity(self):
        b = branch_cut_symbol(0.3, 48)
        lo = gamma2(b, GammaParams(3.0, 1 / 3, -1 / 3, 1.0, degree=24,
                                   restarts=1, max_sweeps=25))
        hi = gamma2(b, GammaParams(3.0, 1 / 3, -1 / 3, 1.0, degree=24,
                                   restarts=3, max_sweeps=25))
        assert hi.value >= lo.value - 1e-12

    def test_weighted_diagonal_route(self):
        b = TaylorPoly.monomial(8)
        params = GammaParams(2.0, 0.5, -0.5, 1.0, power_weight(0.5))
        est = gamma2(b, params)
        op = hankel_norm_p2(b.pad(2 * params.degree), 0.5, 1.0, power_weight(0.5),
                            size=params.degree)
        assert abs(est.value - op) / op < 1e-9

    def test_serialization_round_trip(self):
        est = gamma2(TaylorPoly.monomial(2), P2)
        back = GammaEstimate.from_json(est.to_json())
        assert back.value == est.value
        assert np.array_equal(back.witness_f.coeffs, est.witness_f.coeffs)


class TestGamma1:
    def test_zero_symbol(self):
        assert gamma1(TaylorPoly.zero(2), P2).value == 0.0

    def test_regime_guard(self):
        with pytest.raises(ConfigurationError):
            gamma1(TaylorPoly.monomial(1), GammaParams(2.0, -0.5, -0.5, 1.0))

    def test_dominates_exact_pairing_on_shared_witnesses(self):
        b = TaylorPoly.monomial(1)
        est2 = gamma2(b, P2)
        o2 = gamma2_objective(b, P2, est2.witness_f, est2.witness_g)
        o1 = gamma1_objective(b, P2, est2.witness_f, est2.witness_g)
        assert o2 <= o1 * 1.05

    def test_stable_under_restarts(self):
        b = TaylorPoly.monomial(1)
        lo = gamma1(b, GammaParams(2.0, 0.5, -0.5, 1.0, degree=48, restarts=2,
                                   max_sweeps=40, seed=3))
        hi = gamma1(b, GammaParams(2.0, 0.5, -0.5, 1.0, degree=48, restarts=5,
                                   max_sweeps=40, seed=3))
        assert abs(hi.value - lo.value) / hi.value < 0.05


class TestGradients:
    def test_quadrature_norm_gradient_matches_finite_differences(self):
        rng = np.random.default_rng(5)
        side = _QuadratureSide(SpaceParams(3.0, 1.0 / 3.0, 1.0), degree=10)
        c = rng.standard_normal(11) + 1j * rng.standard_normal(11)
        _n, grad = side.norm_and_grad(c)
        h = 1e-6
        for idx in (0, 3, 7):
            for direction in (1.0, 1j):
                step = np.zeros(11, dtype=complex)
                step[idx] = direction * h
                fd = (side.norm(c + step) - side.norm(c - step)) / (2 * h)
                # derivative along the real/imag axis is twice the matching
                # component of the conjugate-coordinate gradient
                analytic = 2 * (grad[idx].real if direction == 1.0 else grad[idx].imag)
                assert abs(fd - analytic) < 1e-6 * max(1.0, abs(analytic))

    def test_objective_ascends_from_random_start(self):
        b = branch_cut_symbol(0.3, 48)
        est = gamma2(b, CHEAP3)
        assert est.trace[-1] >= est.trace[0]


class TestBlochLowerBound:
    def test_zero_symbol(self):
        assert bloch_lower_bound(TaylorPoly.zero(3), P2) == 0.0

    def test_center_witness_vanishes_on_high_modes(self):
        # the disk-apex kernel pair is constant; its pairing with z^K is zero
        one = TaylorPoly(np.array([1.0 + 0j]))
        assert gamma2_objective(TaylorPoly.monomial(3), P2, one, one) == 0.0

    def test_grid_refinement_stability(self):
        b = lacunary_symbol(8)
        params = GammaParams(2.0, -0.5, -0.5, 1.0)
        v8 = bloch_lower_bound(b, params, apex_levels=8)
        v10 = bloch_lower_bound(b, params, apex_levels=10)
        assert abs(v10 - v8) / v10 < 0.1

    def test_never_exceeds_full_estimator(self):
        b = lacunary_symbol(8)
        params = GammaParams(2.0, -0.5, -0.5, 1.0)
        pairs = bloch_witness_pairs(params)
        est = gamma2(b, params, extra_seed_pairs=pairs)
        assert bloch_lower_bound(b, params) <= est.value * (1 + 1e-12) + 1e-12


class TestDirectionCheck:
    def test_zero_inputs(self):
        ratio, ok = holder_direction_check(TaylorPoly.zero(2),
                                           TaylorPoly.monomial(1),
                                           TaylorPoly.monomial(1), P2)
        assert ratio == 0.0 and ok

    def test_constants(self):
        one = TaylorPoly(np.array([1.0 + 0j]))
        ratio, ok = holder_direction_check(TaylorPoly.monomial(1), one, one, P2)
        assert ok and ratio <= 11.0

    def test_optimizer_witnesses(self):
        b = branch_cut_symbol(0.3)
        est = gamma2(b, P2)
        ratio, ok = holder_direction_check(b, est.witness_f, est.witness_g, P2)
        assert ok

    def test_regime_guard(self):
        one = TaylorPoly(np.array([1.0 + 0j]))
        with pytest.raises(ConfigurationError):
            holder_direction_check(TaylorPoly.monomial(1), one, one,
                                   GammaParams(2.0, -0.5, -0.5, 1.0))


class TestEquivalenceReport:
    def test_zero_family_skips_ratios(self):
        rep = equivalence_report([("0", TaylorPoly.zero(2))], P2, "BF")
        assert rep.passed
        for col in rep.ratio_columns.values():
            assert col == {}
        assert "skipped" in rep.table()

    def test_regime_validation(self):
        with pytest.raises(ConfigurationError) as err:
            equivalence_report([("z", TaylorPoly.monomial(1))],
                               GammaParams(2.0, 1.5, -1.5, 1.0), "BF")
        assert "0 < s0 < 1" in str(err.value)
        with pytest.raises(ConfigurationError):
            equivalence_report([("z", TaylorPoly.monomial(1))], P2, "predualBinf")
        with pytest.raises(ConfigurationError):
            equivalence_report([("z", TaylorPoly.monomial(1))], P2, "unknown")

    def test_small_bf_run(self):
        params = GammaParams(2.0, 0.5, -0.5, 1.0, degree=48, restarts=2,
                             max_sweeps=40)
        rep = equivalence_report(
            [("z", TaylorPoly.monomial(1)), ("z^4", TaylorPoly.monomial(4))],
            params, "BF")
        assert rep.passed
        assert set(rep.columns) == {"CB", "Gamma1", "Gamma2"}
        for label, ratio in rep.witness_checks.items():
            assert ratio <= 1.05
        text = rep.table()
        assert "PASS" in text

    def test_small_predual_run(self):
        params = GammaParams(2.0, -0.5, -0.5, 1.0, degree=48)
        rep = equivalence_report(
            [("z", TaylorPoly.monomial(1)), ("lac", lacunary_symbol(5, 48))],
            params, "predualBinf", apex_levels=6)
        assert set(rep.columns) == {"Gamma3", "Bloch", "BlochLB"}
        for label, ratio in rep.witness_checks.items():
            assert ratio <= 1.0 + 1e-9

    def test_small_bfg_run(self):
        params = GammaParams(2.0, 0.25, -0.75, 1.0, pair_t=1.0, degree=48,
                             restarts=2)
        rep = equivalence_report([("z", TaylorPoly.monomial(1)),
                                  ("z^4", TaylorPoly.monomial(4))], params, "BFG")
        assert set(rep.columns) == {"CBShifted", "Gamma"}
        assert rep.passed
