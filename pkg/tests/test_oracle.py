import itertools
import math

import numpy as np
import pytest

from guesswork import (
    BernoulliIID,
    Deterministic,
    EnumerationSizeError,
    MarkovTwoState,
    SourceDistribution,
    exact_guesswork_moment,
    exact_mean_log_guesswork,
    exact_subordinated_moment,
    guesswork_distribution,
    rank_bruteforce,
    rank_typeclass,
    simulate_attack,
)
from guesswork.oracle import _sum_log_range

UNIFORM2 = SourceDistribution.uniform(2)
SKEW2 = SourceDistribution((0.75, 0.25))


class TestDistribution:
    def test_offsets_partition_and_mass_sums_to_one(self):
        for probs, k in [((0.5, 0.5), 8), ((0.75, 0.25), 6), ((0.5, 0.3, 0.2), 5)]:
            src = SourceDistribution(probs)
            dist = guesswork_distribution(src, k)
            assert dist.total_words == src.support_size**k
            offsets = [c.rank_offset for c in dist.classes]
            sizes = [c.word_count for c in dist.classes]
            assert offsets[0] == 0
            assert all(o2 == o1 + s for o1, s, o2 in zip(offsets, sizes, offsets[1:]))

    def test_uniform_merges_into_one_stratum(self):
        dist = guesswork_distribution(UNIFORM2, 6)
        assert len(dist.strata) == 1

    def test_pmf_lookup(self):
        dist = guesswork_distribution(SKEW2, 2)
        # word probabilities 0.5625, 0.1875, 0.1875, 0.0625 by rank
        assert dist.pmf_at_rank(1) == pytest.approx(0.5625, abs=1e-12)
        assert dist.pmf_at_rank(3) == pytest.approx(0.1875, abs=1e-12)
        assert dist.pmf_at_rank(4) == pytest.approx(0.0625, abs=1e-12)
        with pytest.raises(ValueError):
            dist.pmf_at_rank(5)


class TestRankBruteforce:
    def test_uniform_rank_is_lexicographic_index(self):
        for i, word in enumerate(itertools.product(range(2), repeat=3)):
            assert rank_bruteforce(UNIFORM2, word) == i + 1

    def test_skewed_pairs(self):
        assert rank_bruteforce(SKEW2, (0, 0)) == 1
        assert rank_bruteforce(SKEW2, (0, 1)) == 2
        assert rank_bruteforce(SKEW2, (1, 0)) == 3
        assert rank_bruteforce(SKEW2, (1, 1)) == 4

    def test_enumeration_guard(self):
        with pytest.raises(EnumerationSizeError):
            rank_bruteforce(UNIFORM2, tuple([0] * 25))

    def test_rejects_bad_characters(self):
        with pytest.raises(ValueError):
            rank_bruteforce(UNIFORM2, (0, 2))


class TestRankTypeclass:
    def test_spec_pairs(self):
        assert rank_typeclass(SKEW2, (0, 1)) == 2
        assert rank_typeclass(UNIFORM2, tuple([0] * 20)) == 1
        assert rank_typeclass(UNIFORM2, ()) == 1

    def test_matches_bruteforce_on_three_letter_source(self):
        src = SourceDistribution((0.5, 0.3, 0.2))
        for word in itertools.product(range(3), repeat=4):
            assert rank_typeclass(src, word) == rank_bruteforce(src, word)

    @pytest.mark.parametrize(
        "probs,kmax",
        [((0.5, 0.5), 6), ((0.7, 0.3), 6), ((0.5, 0.25, 0.25), 4), (tuple([1 / 3] * 3), 4)],
    )
    def test_bijective_onto_rank_range(self, probs, kmax):
        src = SourceDistribution(probs)
        m = src.support_size
        for k in range(1, kmax + 1):
            ranks = sorted(rank_typeclass(src, w) for w in itertools.product(range(m), repeat=k))
            assert ranks == list(range(1, m**k + 1))

    def test_uniform_rank_at_scale(self):
        # one stratum, so the rank is the base-m reading of the word plus 1
        word = tuple(int(b) for b in format(123456789, "032b"))
        assert rank_typeclass(UNIFORM2, word) == 123456789 + 1


class TestExactMoment:
    def test_uniform_mean_rank(self):
        # E[G] = (m^k + 1)/2 for uniform sources
        assert exact_guesswork_moment(UNIFORM2, 3, 1.0) == pytest.approx(math.log(4.5), abs=1e-12)

    def test_skewed_mean_rank(self):
        assert exact_guesswork_moment(SKEW2, 2, 1.0) == pytest.approx(math.log(1.75), abs=1e-12)

    def test_empty_word_and_zeroth_moment(self):
        assert exact_guesswork_moment(UNIFORM2, 0, 3.7) == 0.0
        assert abs(exact_guesswork_moment(SKEW2, 5, 0.0)) < 1e-12

    def test_tie_break_invariance(self):
        src = SourceDistribution((0.5, 0.25, 0.25))
        for alpha in (1.0, 1.7, -0.5):
            lex = exact_guesswork_moment(src, 4, alpha)
            rev = exact_guesswork_moment(src, 4, alpha, _tie_break="revlex")
            assert abs(lex - rev) < 1e-12

    def test_second_moment_closed_form(self):
        # uniform: E[G^2] = (m^k+1)(2 m^k+1)/6
        mk = 2**4
        expected = math.log((mk + 1) * (2 * mk + 1) / 6)
        assert exact_guesswork_moment(UNIFORM2, 4, 2.0) == pytest.approx(expected, abs=1e-12)

    def test_fractional_moment_against_direct_sum(self):
        alpha = 0.6
        direct = math.log(sum((j + 1) ** alpha for j in range(2**6)) / 2**6)
        assert exact_guesswork_moment(UNIFORM2, 6, alpha) == pytest.approx(direct, abs=1e-10)

    def test_scaled_moment_converges_to_scgf(self):
        limit = UNIFORM2.guesswork_scgf(1.0)
        gaps = [
            abs(exact_guesswork_moment(UNIFORM2, k, 1.0) / k - limit) for k in (4, 8, 12, 16, 20)
        ]
        assert all(b < a for a, b in zip(gaps, gaps[1:]))


class TestSubordinatedMoment:
    @pytest.mark.parametrize("p", [0.1, 0.3, 0.5])
    @pytest.mark.parametrize("k", [5, 17, 30])
    def test_bernoulli_closed_form(self, p, k):
        expected = math.log(((1.0 + p) ** k + 1.0) / 2.0)
        got = exact_subordinated_moment(UNIFORM2, BernoulliIID(p), k, 1.0)
        assert got == pytest.approx(expected, rel=1e-9)

    def test_full_erasure_reduces_to_plain_moment(self):
        for alpha in (0.5, 1.0, 2.0):
            full = exact_subordinated_moment(SKEW2, Deterministic(1.0), 8, alpha)
            plain = exact_guesswork_moment(SKEW2, 8, alpha)
            assert full == pytest.approx(plain, abs=1e-12)

    def test_no_erasures_means_no_guessing(self):
        assert exact_subordinated_moment(SKEW2, BernoulliIID(0.0), 12, 1.0) == 0.0

    def test_rejects_zero_length(self):
        with pytest.raises(ValueError):
            exact_subordinated_moment(UNIFORM2, BernoulliIID(0.5), 0, 1.0)


class TestMeanLogGuesswork:
    def test_full_erasure_uniform_oracle(self):
        # direct summation over all 2^10 equiprobable ranks
        expected = math.fsum(math.log(j) for j in range(1, 1025)) / (10 * 1024)
        got = exact_mean_log_guesswork(UNIFORM2, Deterministic(1.0), 10)
        assert got == pytest.approx(expected, abs=1e-12)

    def test_no_erasures(self):
        assert exact_mean_log_guesswork(SKEW2, BernoulliIID(0.0), 9) == 0.0

    def test_increases_toward_half_log_two(self):
        limit = 0.5 * math.log(2.0)
        values = [
            exact_mean_log_guesswork(UNIFORM2, BernoulliIID(0.5), k) for k in (8, 12, 16, 20)
        ]
        assert all(b > a for a, b in zip(values, values[1:]))
        gaps = [limit - v for v in values]
        assert all(b < a for a, b in zip(gaps, gaps[1:]))
        assert all(g > 0 for g in gaps)

    def test_log_range_sum_closed_form_matches_direct(self):
        for offset, count in [(0, 5000), (100, 5000), (12345, 4097)]:
            direct = math.fsum(math.log(j) for j in range(offset + 1, offset + count + 1))
            assert _sum_log_range(offset, count) == pytest.approx(direct, rel=1e-12)


class TestSimulateAttack:
    def test_same_seed_same_report(self):
        a = simulate_attack(UNIFORM2, BernoulliIID(0.5), 16, 200, seed=42)
        b = simulate_attack(UNIFORM2, BernoulliIID(0.5), 16, 200, seed=42)
        assert a == b
        c = simulate_attack(UNIFORM2, BernoulliIID(0.5), 16, 200, seed=43)
        assert c != a

    def test_no_erasures_pins_log_guesswork_to_zero(self):
        report = simulate_attack(UNIFORM2, BernoulliIID(0.0), 8, 50, seed=1)
        assert all(v == 0.0 for v in report.log_guesswork)
        assert report.mean_erasure_fraction == 0.0

    def test_mean_within_three_standard_errors_of_exact(self):
        k, trials = 16, 2000
        report = simulate_attack(UNIFORM2, BernoulliIID(0.5), k, trials, seed=0)
        exact = exact_mean_log_guesswork(UNIFORM2, BernoulliIID(0.5), k)
        se = math.sqrt(report.var_log_guesswork_rate / trials)
        assert abs(report.mean_log_guesswork_rate - exact) < 3.0 * se

    def test_markov_channel_runs(self):
        report = simulate_attack(SKEW2, MarkovTwoState(0.1, 0.4), 12, 100, seed=5)
        assert 0.0 <= report.mean_erasure_fraction <= 1.0
        lo, hi = report.ci95_log_guesswork_rate
        assert lo <= report.mean_log_guesswork_rate <= hi

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            simulate_attack(UNIFORM2, BernoulliIID(0.5), 0, 10)
        with pytest.raises(ValueError):
            simulate_attack(UNIFORM2, BernoulliIID(0.5), 8, 0)


class TestOracleEquivalence:
    @pytest.mark.parametrize("probs", [(0.5, 0.5), (0.7, 0.3)])
    def test_binary_sources(self, probs):
        src = SourceDistribution(probs)
        for k in range(1, 7):
            for word in itertools.product(range(2), repeat=k):
                assert rank_typeclass(src, word) == rank_bruteforce(src, word)

    @pytest.mark.parametrize("probs", [(0.5, 0.3, 0.2), (0.5, 0.25, 0.25)])
    def test_ternary_sources(self, probs):
        src = SourceDistribution(probs)
        for k in range(1, 5):
            for word in itertools.product(range(3), repeat=k):
                assert rank_typeclass(src, word) == rank_bruteforce(src, word)
