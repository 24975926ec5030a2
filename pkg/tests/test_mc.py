"""Sampling distributions, discrete choice, usage nest, market simulator."""

from __future__ import annotations

import dataclasses
import math
import random

import numpy as np
import pytest
from scipy.integrate import quad
from scipy.special import gamma as gamma_fn
from scipy.stats import invweibull

from ossecon import (
    DegenerateMarketError,
    MarketSimSettings,
    ModelParams,
    RngSpec,
    Scenario,
    frechet_scale,
    sample_frechet,
    sample_pareto,
    simulate_market,
    simulate_package_choice,
    simulate_usage_nest,
    solve_baseline,
    solve_scenario,
    zeta_for_share,
)
from _support import draw_valid_params

N = 1_000_000


class TestRngSpec:
    def test_identical_spec_identical_draws(self):
        a = sample_frechet(3.0, 1000, RngSpec(seed=7, stream_id=2))
        b = sample_frechet(3.0, 1000, RngSpec(seed=7, stream_id=2))
        assert np.array_equal(a, b)

    def test_streams_are_distinct(self):
        a = sample_frechet(3.0, 1000, RngSpec(seed=7, stream_id=0))
        b = sample_frechet(3.0, 1000, RngSpec(seed=7, stream_id=1))
        assert not np.array_equal(a, b)

    def test_seeds_are_distinct(self):
        a = sample_pareto(3.0, 1000, RngSpec(seed=1))
        b = sample_pareto(3.0, 1000, RngSpec(seed=2))
        assert not np.array_equal(a, b)

    @pytest.mark.parametrize("bad", [{"seed": -1}, {"seed": 1.5}, {"seed": 0, "stream_id": -2}])
    def test_validation(self, bad):
        with pytest.raises(ValueError):
            RngSpec(**bad)


class TestFrechetSampler:
    def test_scale_normalizes_the_mean(self):
        assert frechet_scale(3.0) == pytest.approx(1.0 / gamma_fn(2.0 / 3.0), rel=1e-12)
        with pytest.raises(ValueError):
            frechet_scale(1.0)

    def test_unit_mean_for_shape_three(self):
        x = sample_frechet(3.0, N, RngSpec(seed=10))
        se = x.std(ddof=1) / math.sqrt(N)
        assert abs(x.mean() - 1.0) <= max(6.0 * se, 1e-12)
        assert abs(x.mean() - 1.0) <= 0.005

    def test_cdf_at_the_scale(self):
        c = frechet_scale(3.0)
        x = sample_frechet(3.0, N, RngSpec(seed=11))
        frac = float(np.mean(x <= c))
        assert abs(frac - math.exp(-1.0)) <= 0.002

    def test_median_for_heavy_shape(self):
        # shape 1.5 has infinite variance, so test the analytic median
        # rather than the mean.
        c = frechet_scale(1.5)
        x = sample_frechet(1.5, N, RngSpec(seed=12))
        med_analytic = c * math.log(2.0) ** (-2.0 / 3.0)
        assert float(np.median(x)) == pytest.approx(med_analytic, rel=0.005)

    def test_quantiles_match_scipy(self):
        # Independent parameterization: invweibull(c=shape) scaled by the
        # same normalizer.
        shape = 2.5
        c = frechet_scale(shape)
        x = sample_frechet(shape, N, RngSpec(seed=13))
        for p in (0.1, 0.5, 0.9):
            want = invweibull.ppf(p, shape, scale=c)
            assert float(np.quantile(x, p)) == pytest.approx(want, rel=0.01)

    def test_invalid_inputs(self):
        with pytest.raises(ValueError):
            sample_frechet(0.9, 10, RngSpec(seed=0))
        with pytest.raises(ValueError):
            sample_frechet(3.0, 0, RngSpec(seed=0))


class TestParetoSampler:
    def test_survival_at_two(self):
        q = sample_pareto(3.0, N, RngSpec(seed=20))
        assert abs(float(np.mean(q > 2.0)) - 0.125) <= 0.001

    def test_mean(self):
        q = sample_pareto(3.0, N, RngSpec(seed=21))
        assert float(q.mean()) == pytest.approx(1.5, abs=0.01)

    def test_truncated_power_moment_ties_to_aggregation(self):
        # Mean of q**sigma over the whole support is gamma/(gamma-sigma),
        # the sigma-th power of the aggregation constant.
        q = sample_pareto(3.0, N, RngSpec(seed=22))
        assert float(np.mean(q**1.5)) == pytest.approx(2.0, rel=0.02)

    def test_support_starts_at_one(self):
        q = sample_pareto(2.0, 10_000, RngSpec(seed=23))
        assert float(q.min()) >= 1.0

    def test_invalid_inputs(self):
        with pytest.raises(ValueError):
            sample_pareto(-1.0, 10, RngSpec(seed=0))


class TestPackageChoice:
    def test_uniform_qualities_uniform_choice(self):
        res = simulate_package_choice([1.0, 1.0, 1.0, 1.0], 2.0, 1.0, N, RngSpec(seed=30))
        assert sum(res.frequencies) == pytest.approx(1.0, abs=1e-12)
        for f, se in zip(res.frequencies, res.standard_errors):
            assert abs(f - 0.25) <= 6.0 * se

    def test_two_package_probability(self):
        p2 = 2.0**1.5 / (1.0 + 2.0**1.5)
        res = simulate_package_choice([1.0, 2.0], 1.5, 1.0, N, RngSpec(seed=31))
        assert abs(res.frequencies[1] - p2) <= 6.0 * res.standard_errors[1]
        assert res.frequencies[1] == pytest.approx(0.738826, abs=0.005)

    def test_two_package_probability_against_quadrature(self):
        # Second oracle with no closed form: P(pick 2) integrates the
        # density of the first shock against the CDF of the second at the
        # quality-adjusted threshold.
        sigma, c = 1.5, frechet_scale(1.5)

        def integrand(x):
            dens = (
                (sigma / c)
                * (x / c) ** (-1.0 - sigma)
                * math.exp(-((x / c) ** -sigma))
            )
            cdf_at = math.exp(-((x / (2.0 * c)) ** -sigma))
            return dens * cdf_at

        p1, _ = quad(integrand, 0.0, math.inf)
        res = simulate_package_choice([1.0, 2.0], sigma, 1.0, N, RngSpec(seed=31))
        assert res.frequencies[0] == pytest.approx(p1, abs=6.0 * res.standard_errors[0])
        assert p1 == pytest.approx(1.0 - 2.0**1.5 / (1.0 + 2.0**1.5), rel=1e-8)

    def test_mean_max_utility(self):
        res = simulate_package_choice([1.0, 2.0], 3.0, 1.0, N, RngSpec(seed=32))
        assert res.mean_max_utility == pytest.approx(9.0 ** (1.0 / 3.0), rel=0.01)

    def test_u_scales_utilities_not_frequencies(self):
        a = simulate_package_choice([1.0, 2.0], 3.0, 1.0, 100_000, RngSpec(seed=33))
        b = simulate_package_choice([1.0, 2.0], 3.0, 2.0, 100_000, RngSpec(seed=33))
        assert a.frequencies == b.frequencies
        assert b.mean_max_utility == pytest.approx(2.0 * a.mean_max_utility, rel=1e-12)

    def test_random_quality_vectors_match_power_shares(self):
        rng = random.Random(34)
        for trial in range(5):
            k = rng.randint(2, 6)
            qualities = [1.0 + 3.0 * rng.random() for _ in range(k)]
            sigma = rng.uniform(1.2, 3.5)
            res = simulate_package_choice(
                qualities, sigma, 1.0, 200_000, RngSpec(seed=35, stream_id=trial)
            )
            total = sum(q**sigma for q in qualities)
            for q, f, se in zip(qualities, res.frequencies, res.standard_errors):
                assert abs(f - q**sigma / total) <= 6.0 * max(se, 1e-4)

    def test_quantile_keys(self):
        res = simulate_package_choice([1.0], 2.0, 1000, 1000, RngSpec(seed=36))
        assert set(res.quantiles) == {0.1, 0.5, 0.9}
        assert res.quantiles[0.1] <= res.quantiles[0.5] <= res.quantiles[0.9]

    def test_invalid_inputs(self):
        with pytest.raises(ValueError):
            simulate_package_choice([], 2.0, 1.0, 10, RngSpec(seed=0))
        with pytest.raises(ValueError):
            simulate_package_choice([0.5, 2.0], 2.0, 1.0, 10, RngSpec(seed=0))
        with pytest.raises(ValueError):
            simulate_package_choice([1.0], 2.0, 0.0, 10, RngSpec(seed=0))


class TestUsageNest:
    def test_even_split_at_unit_productivity(self):
        v_hat, _ = simulate_usage_nest(1.0, 3.5, N, RngSpec(seed=40))
        assert abs(v_hat - 0.5) <= 0.003

    def test_zero_productivity_never_chosen(self):
        v_hat, mean_hat = simulate_usage_nest(0.0, 3.0, 10_000, RngSpec(seed=41))
        assert v_hat == 0.0
        assert mean_hat > 0.0

    def test_seventy_percent_point_and_mean(self):
        zeta = (7.0 / 3.0) ** (1.0 / 3.0)
        v_hat, mean_hat = simulate_usage_nest(zeta, 3.0, N, RngSpec(seed=42))
        assert abs(v_hat - 0.7) <= 0.003
        assert mean_hat == pytest.approx((10.0 / 3.0) ** (1.0 / 3.0), rel=0.01)
        assert mean_hat == pytest.approx(1.49380, rel=0.01)

    def test_share_matches_formula_across_random_nests(self):
        rng = random.Random(43)
        for trial in range(8):
            zeta = rng.uniform(0.2, 3.0)
            theta = rng.uniform(1.5, 5.0)
            v_hat, _ = simulate_usage_nest(
                zeta, theta, 200_000, RngSpec(seed=44, stream_id=trial)
            )
            want = zeta**theta / (1.0 + zeta**theta)
            se = math.sqrt(want * (1.0 - want) / 200_000)
            assert abs(v_hat - want) <= 6.0 * max(se, 1e-4)

    def test_deterministic(self):
        a = simulate_usage_nest(1.3, 3.0, 50_000, RngSpec(seed=45))
        b = simulate_usage_nest(1.3, 3.0, 50_000, RngSpec(seed=45))
        assert a == b


class TestMarketSimSettings:
    @pytest.mark.parametrize(
        "overrides",
        [
            {"residual_tol": 0.0},
            {"max_iter": 0},
            {"damping": 0.0},
            {"damping": 1.5},
            {"pool_chunk": 0},
            {"m_start": 0.0},
        ],
    )
    def test_validation(self, overrides):
        with pytest.raises(ValueError):
            MarketSimSettings(**overrides)


class TestMarketSimulation:
    def test_baseline_defaults_match_closed_form(self):
        p = ModelParams()
        closed = solve_baseline(p)
        sim = simulate_market(p, Scenario.BASELINE, N, N, rng=RngSpec(seed=42))
        assert abs(sim.m_hat / closed.m - 1.0) <= 0.02
        # The defaults put the cutoff on the support, so every started
        # project is shared.
        assert abs(sim.ms_share_hat - 1.0) <= 0.02
        assert sim.q0_hat >= 1.0
        assert sim.residual <= MarketSimSettings().residual_tol

    def test_long_run_interior_calibration(self):
        # tau = 1.5 keeps the long-run cutoff above the support at
        # v = 0.7, the regime the simulator's sharing rule models.
        p = dataclasses.replace(
            ModelParams(), tau=1.5, zeta=zeta_for_share(0.7, 3.0)
        )
        closed = solve_scenario(p, Scenario.LONG_RUN, v=0.7)
        assert closed.interior
        sim = simulate_market(p, Scenario.LONG_RUN, N, N, rng=RngSpec(seed=42))
        assert abs(sim.m_hat / closed.m - 1.0) <= 0.02
        assert sim.q0_hat == pytest.approx(closed.q0, rel=0.02)
        assert sim.ms_share_hat == pytest.approx(closed.q0**-p.gamma, rel=0.05)

    def test_short_run_interior_calibration(self):
        p = dataclasses.replace(
            ModelParams(), tau=1.5, zeta=zeta_for_share(0.5, 3.0)
        )
        closed = solve_scenario(p, Scenario.SHORT_RUN, v=0.5)
        sim = simulate_market(p, Scenario.SHORT_RUN, 200_000, 200_000, rng=RngSpec(seed=43))
        assert abs(sim.m_hat / closed.m - 1.0) <= 0.02

    def test_deterministic(self):
        p = ModelParams()
        a = simulate_market(p, Scenario.BASELINE, 10_000, 100_000, rng=RngSpec(seed=44))
        b = simulate_market(p, Scenario.BASELINE, 10_000, 100_000, rng=RngSpec(seed=44))
        assert a == b

    def test_prohibitive_sharing_cost_degenerates(self):
        p = dataclasses.replace(ModelParams(), tau=1e6)
        with pytest.raises(DegenerateMarketError):
            simulate_market(p, Scenario.BASELINE, 1000, 10_000, rng=RngSpec(seed=45))

    def test_custom_scenario_requires_business_model(self):
        with pytest.raises(ValueError):
            simulate_market(
                dataclasses.replace(ModelParams(), zeta=1.0),
                Scenario.CUSTOM_BUSINESS_MODEL,
                1000,
                10_000,
                rng=RngSpec(seed=46),
            )

    def test_invalid_scales_rejected(self):
        with pytest.raises(ValueError):
            simulate_market(ModelParams(), Scenario.BASELINE, 0, 1000)
        with pytest.raises(ValueError):
            simulate_market(ModelParams(), Scenario.BASELINE, 1000, 0)
