import math

import numpy as np
import pytest

from guesswork import (
    BernoulliIID,
    Deterministic,
    MarkovTwoState,
    SourceDistribution,
    compare_channels,
    growth_rates,
    rate_function_curves,
    subordinated_rate_dual,
    subordinated_rate_inf,
    subordinated_scgf,
)

UNIFORM2 = SourceDistribution.uniform(2)
SKEW2 = SourceDistribution((0.8, 0.2))
LOG2 = math.log(2.0)


class TestSubordinatedScgf:
    def test_zero_at_zero(self):
        for noise in (BernoulliIID(0.3), Deterministic(0.5), MarkovTwoState(0.1, 0.4)):
            assert abs(subordinated_scgf(SKEW2, noise, 0.0)) < 1e-14

    def test_composition_values(self):
        got = subordinated_scgf(UNIFORM2, BernoulliIID(0.1), 1.0)
        assert got == pytest.approx(math.log(1.1), abs=1e-12)
        got = subordinated_scgf(UNIFORM2, Deterministic(0.14), 1.0)
        assert got == pytest.approx(0.14 * LOG2, abs=1e-12)

    def test_convex_nondecreasing(self):
        alphas = np.linspace(-3.0, 3.0, 41)
        for noise in (BernoulliIID(0.3), MarkovTwoState(0.1, 0.4)):
            vals = np.array([subordinated_scgf(SKEW2, noise, a) for a in alphas])
            assert (np.diff(vals) > -1e-12).all()
            assert (np.diff(vals, 2) > -1e-9).all()

    def test_full_erasure_reduces_to_plain_scgf(self):
        for alpha in np.linspace(-2.0, 3.0, 11):
            composed = subordinated_scgf(SKEW2, Deterministic(1.0), alpha)
            assert composed == pytest.approx(SKEW2.guesswork_scgf(alpha), abs=1e-9)


class TestRateInf:
    def test_vanishes_where_both_terms_vanish(self):
        for mu in (0.3, 0.5, 1.0):
            got = subordinated_rate_inf(UNIFORM2, Deterministic(mu), mu * LOG2)
            assert abs(got) < 1e-9

    def test_negative_argument(self):
        assert subordinated_rate_inf(UNIFORM2, BernoulliIID(0.3), -0.01) == math.inf

    def test_zero_argument_against_grid_oracle(self):
        # brute-force minimization over y with step 1e-5
        p = 0.5
        ys = np.arange(1e-5, 1.0, 1e-5)
        rates = ys * np.log(ys / p) + (1.0 - ys) * np.log((1.0 - ys) / (1.0 - p))
        oracle = min(
            float(np.min(ys * LOG2 + rates)),
            -math.log1p(-p),  # y = 0 convention at x = 0
            LOG2 - math.log(p),  # y = 1 endpoint
        )
        got = subordinated_rate_inf(UNIFORM2, BernoulliIID(p), 0.0)
        assert got == pytest.approx(oracle, abs=1e-6)

    def test_no_erasure_channel(self):
        assert subordinated_rate_inf(UNIFORM2, BernoulliIID(0.0), 0.0) == 0.0
        assert subordinated_rate_inf(UNIFORM2, BernoulliIID(0.0), 0.2) == math.inf

    def test_beyond_deterministic_reach(self):
        # with half the characters erased, log-guesswork beyond 0.5*log2
        # is unreachable
        got = subordinated_rate_inf(UNIFORM2, Deterministic(0.5), 0.6 * LOG2)
        assert got == math.inf

    def test_convex_on_effective_domain(self):
        xs = np.linspace(0.0, 0.95 * LOG2, 30)
        vals = np.array([subordinated_rate_inf(UNIFORM2, BernoulliIID(0.3), x) for x in xs])
        assert np.isfinite(vals).all()
        assert (np.diff(vals, 2) > -1e-7).all()


class TestRateDual:
    def test_full_erasure_recovers_plain_rate(self):
        for x in np.linspace(0.0, LOG2, 9):
            got = subordinated_rate_dual(UNIFORM2, Deterministic(1.0), x)
            assert got == pytest.approx(LOG2 - x, abs=1e-9)

    def test_vanishes_at_mean_log_growth(self):
        rates = growth_rates(UNIFORM2, BernoulliIID(0.5))
        got = subordinated_rate_dual(UNIFORM2, BernoulliIID(0.5), rates.mean_log_growth)
        assert abs(got) < 1e-8

    def test_no_noise_no_guessing(self):
        assert abs(subordinated_rate_dual(UNIFORM2, Deterministic(0.0), 0.0)) < 1e-12

    def test_negative_argument(self):
        assert subordinated_rate_dual(UNIFORM2, MarkovTwoState(0.1, 0.4), -0.01) == math.inf


class TestRouteAgreement:
    @pytest.mark.parametrize(
        "src,noise",
        [
            (UNIFORM2, BernoulliIID(0.3)),
            (SKEW2, Deterministic(0.5)),
            (UNIFORM2, MarkovTwoState(0.1, 0.4)),
        ],
    )
    def test_routes_agree_on_a_grid(self, src, noise):
        xs = np.linspace(0.0, src.log_support_size, 17)
        inf_curve, dual_curve = rate_function_curves(src, noise, xs)
        for a, b in zip(inf_curve.ys, dual_curve.ys):
            if math.isinf(a) or math.isinf(b):
                assert math.isinf(a) == math.isinf(b)
            else:
                assert abs(a - b) < 1e-6


class TestGrowthRates:
    def test_bernoulli_example(self):
        rates = growth_rates(UNIFORM2, BernoulliIID(0.1))
        assert rates.mean_log_growth == pytest.approx(0.1 * LOG2, abs=1e-9)
        assert rates.log_mean_growth == pytest.approx(math.log(1.1), abs=1e-9)

    def test_deterministic_channel_equalizes_for_uniform_sources(self):
        rates = growth_rates(UNIFORM2, Deterministic(0.14))
        assert rates.mean_log_growth == pytest.approx(rates.log_mean_growth, abs=1e-12)
        assert rates.mean_log_growth == pytest.approx(0.14 * LOG2, abs=1e-9)

    def test_degenerate_source(self):
        rates = growth_rates(SourceDistribution((1.0,)), BernoulliIID(0.4))
        assert rates.mean_log_growth == 0.0
        assert abs(rates.log_mean_growth) < 1e-14

    def test_jensen_ordering(self):
        rng = np.random.default_rng(11)
        for _ in range(20):
            w = rng.uniform(0.05, 1.0, size=int(rng.integers(2, 5)))
            src = SourceDistribution(tuple(w / w.sum()))
            p = float(rng.uniform(0.05, 0.95))
            rates = growth_rates(src, BernoulliIID(p))
            assert rates.mean_log_growth <= rates.log_mean_growth + 1e-12
            # strict for hidden randomness in the noise and a live source
            assert rates.log_mean_growth - rates.mean_log_growth > 1e-9


class TestCompareChannels:
    def test_noisier_but_easier_inside_the_window(self):
        report = compare_channels(UNIFORM2, Deterministic(0.12), BernoulliIID(0.1))
        assert report.noisier_channel_easier is True

    def test_flag_clears_above_the_window(self):
        report = compare_channels(UNIFORM2, Deterministic(0.2), BernoulliIID(0.1))
        assert report.noisier_channel_easier is False

    def test_identical_channels(self):
        report = compare_channels(UNIFORM2, BernoulliIID(0.3), BernoulliIID(0.3))
        assert report.noisier_channel_easier is False
        assert report.mean_log_diff == 0.0
        assert report.log_mean_diff == 0.0

    def test_orientation_symmetry(self):
        a = compare_channels(UNIFORM2, Deterministic(0.12), BernoulliIID(0.1))
        b = compare_channels(UNIFORM2, BernoulliIID(0.1), Deterministic(0.12))
        assert a.noisier_channel_easier == b.noisier_channel_easier
        assert a.log_mean_diff == pytest.approx(-b.log_mean_diff, abs=1e-15)
