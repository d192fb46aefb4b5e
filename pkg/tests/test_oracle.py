"""Oracle module: argmax agreement, quadrature values, simulation, RNG."""

import numpy as np
import pytest

from delob import (
    LegislativeChoice,
    ModelParams,
    RegimeInterpretation,
    SearchBox,
    numeric_best_effort,
    numeric_best_proposal,
    numeric_expected_utilities,
    numeric_optimal_legislation,
    outcome_tilde,
    simulate_paths,
)
from delob import rng
from delob.legislative import expected_utility_congress


def P(**kw):
    defaults = dict(alpha=1.0, beta=1.0, lambda_weight=0.5, shock_bound=1.0,
                    congress_ideal=0.5, agency_ideal=1.0)
    defaults.update(kw)
    return ModelParams(**defaults)


class TestSplitmix:
    def test_known_first_output_for_seed_zero(self):
        # standard splitmix64 test vector
        assert rng.mix64((0 + 0x9E3779B97F4A7C15) & ((1 << 64) - 1)) == 0xE220A8397B1DCDAF
        assert int(rng.random_uint64(0, 1)[0]) == 0xE220A8397B1DCDAF

    def test_vectorized_matches_scalar_walk(self):
        seed = 123456789
        vec = rng.random_uint64(seed, 5)
        mask = (1 << 64) - 1
        for k in range(5):
            state = (seed + (k + 1) * 0x9E3779B97F4A7C15) & mask
            assert int(vec[k]) == rng.mix64(state)

    def test_derived_seeds_differ_by_tag(self):
        assert rng.derive_seed(42, "simulate") != rng.derive_seed(42, "verify")

    def test_unit_draws_in_half_open_interval(self):
        u = rng.random_unit(7, 10_000)
        assert u.min() >= 0.0 and u.max() < 1.0


class TestSearchBox:
    def test_default_box_scales_with_params(self):
        box = SearchBox.for_params(P(shock_bound=2.0, agency_ideal=1.5))
        assert box.p0_min == -3.0 and box.p0_max == 3.0
        assert box.d_max == 4.0
        assert box.coarse_points == 201 and box.refine_rounds == 3

    def test_validation(self):
        with pytest.raises(ValueError):
            SearchBox(1.0, -1.0)
        with pytest.raises(ValueError):
            SearchBox(-1.0, 1.0, d_max=0.0)
        with pytest.raises(ValueError):
            SearchBox(-1.0, 1.0, coarse_points=2)


class TestStageOracles:
    def test_effort_oracle_worked_values(self):
        assert numeric_best_effort(1.0, 0.0, P()) == pytest.approx(0.5, abs=1e-6)
        assert numeric_best_effort(-1.0, 0.0, P()) == 0.0
        assert numeric_best_effort(2.0, 1.0, P(alpha=2.0)) == pytest.approx(1.0, abs=1e-6)

    def test_proposal_oracle_worked_values(self):
        assert numeric_best_proposal(0.0, P(beta=0.0)) == pytest.approx(2.0, abs=1e-6)
        assert numeric_best_proposal(0.0, P()) == pytest.approx(1.0, abs=1e-6)

    def test_proposal_oracle_capture_targets_zero_outcome(self):
        params = P(beta=2.5)
        pa = numeric_best_proposal(0.3, params)
        assert pa == pytest.approx(-0.3, abs=1e-6)

    def test_banded_proposal_search(self):
        params = P(beta=0.0)
        band = LegislativeChoice(0.0, 0.5)
        pa = numeric_best_proposal(
            0.0, params, band=band, mode=RegimeInterpretation.PROPOSAL_BAND
        )
        # unconstrained optimum is 2.0, so the band edge is the argmax
        assert pa == pytest.approx(0.5, abs=1e-6)


class TestNumericExpectedUtilities:
    def test_analytic_pin_congress(self):
        params = P(lambda_weight=1.0)
        welfare = numeric_expected_utilities(LegislativeChoice(0.5, 0.0), params)
        assert welfare.eu_congress_policy == pytest.approx(-1.0 / 3.0, abs=1e-12)

    def test_analytic_pin_group(self):
        welfare = numeric_expected_utilities(LegislativeChoice(0.0, 0.0), P(shock_bound=2.0))
        assert welfare.eu_group == pytest.approx(-(2.0**2) / 3.0, abs=1e-10)

    def test_matches_closed_form(self):
        params = P(alpha=0.7, beta=0.4, congress_ideal=1.2)
        choice = LegislativeChoice(0.4, 0.6)
        welfare = numeric_expected_utilities(choice, params)
        assert welfare.eu_congress_policy == pytest.approx(
            expected_utility_congress(choice, params), abs=1e-9
        )


class TestLegislativeArgmax:
    def test_matches_closed_form_at_aligned_point(self):
        best = numeric_optimal_legislation(P(lambda_weight=1.0))
        assert best.choice.status_quo == pytest.approx(0.5, abs=1e-3)
        assert best.choice.discretion == pytest.approx(1.0, abs=1e-3)

    def test_benchmark_sqrt_form_point(self):
        best = numeric_optimal_legislation(P(beta=0.0, agency_ideal=0.25, lambda_weight=0.0))
        assert best.choice.status_quo == pytest.approx(0.0, abs=1e-3)
        assert best.choice.discretion == pytest.approx(0.6464466, abs=1e-3)

    def test_capture_ties_break_to_smallest_discretion(self):
        # the optimum is a plateau over d >= R; the tie rule reports its
        # smallest-discretion edge (up to the documented tie slack)
        best = numeric_optimal_legislation(P(beta=2.5, lambda_weight=0.0))
        assert best.choice.status_quo == pytest.approx(0.0, abs=1e-3)
        assert best.choice.discretion == pytest.approx(1.0, abs=1e-3)

    def test_refinement_reaches_documented_bracket(self):
        params = P(lambda_weight=0.3)
        box = SearchBox.for_params(params)
        best = numeric_optimal_legislation(params, box=box)
        from delob.legislative import optimal_discretion_foc

        spacing = (box.d_max - box.d_min) * 10.0 ** (-box.refine_rounds) / (
            box.coarse_points - 1
        )
        assert abs(best.choice.discretion - optimal_discretion_foc(params)) <= 10 * spacing


class TestSimulation:
    def test_rejects_zero_draws(self):
        with pytest.raises(ValueError, match="draws"):
            simulate_paths(P(), LegislativeChoice(0.0, 1.0), seed=1, draws=0)

    def test_shocks_stay_in_support(self):
        sample = simulate_paths(P(shock_bound=2.5), LegislativeChoice(0.0, 1.0), 3, 5_000)
        assert np.all(np.abs(sample.shocks) <= 2.5)

    def test_deterministic_bit_for_bit(self):
        a = simulate_paths(P(), LegislativeChoice(0.2, 0.7), 99, 2_000)
        b = simulate_paths(P(), LegislativeChoice(0.2, 0.7), 99, 2_000)
        assert np.array_equal(a.shocks, b.shocks)
        assert np.array_equal(a.outcome_values, b.outcome_values)
        c = simulate_paths(P(), LegislativeChoice(0.2, 0.7), 100, 2_000)
        assert not np.array_equal(a.shocks, c.shocks)

    def test_interior_band_pins_every_outcome(self):
        params = P()
        xt = outcome_tilde(params)
        choice = LegislativeChoice(xt, 1.25 * params.shock_bound)
        sample = simulate_paths(params, choice, 5, 10_000)
        assert np.max(np.abs(sample.outcome_values - xt)) <= 1e-12

    def test_capture_means_zero_effort_everywhere(self):
        params = P(beta=2.5)
        sample = simulate_paths(params, LegislativeChoice(0.0, 0.5), 6, 5_000)
        assert np.all(sample.efforts == 0.0)

    def test_outcome_view_is_consistent(self):
        sample = simulate_paths(P(), LegislativeChoice(0.3, 0.4), 8, 50)
        assert len(sample.outcomes) == 50
        stage = sample.outcomes[7]
        assert stage.outcome == stage.enacted_policy + stage.shock
        assert stage.lobby_cost == P().alpha * stage.effort**2
        sliced = sample.outcomes[0:3]
        assert len(sliced) == 3

    def test_monte_carlo_mean_matches_expected_utility(self):
        params = P(lambda_weight=0.6, congress_ideal=0.8)
        choice = LegislativeChoice(0.3, 0.5)
        sample = simulate_paths(params, choice, 21, 1_000_000)
        values = sample.congress_payoffs
        mean = float(values.mean())
        se = float(values.std(ddof=1)) / np.sqrt(values.size)
        expected = expected_utility_congress(choice, params)
        assert abs(mean - expected) <= 3.0 * se

    def test_proposal_band_mode_runs(self):
        params = P()
        sample = simulate_paths(
            params, LegislativeChoice(0.0, 0.25), 12, 1_000,
            mode=RegimeInterpretation.PROPOSAL_BAND,
        )
        assert np.all(np.abs(sample.proposals - 0.0) <= 0.25 + 1e-12)
