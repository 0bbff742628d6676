"""Exact finite-length guesswork.

Ground truth for everything the asymptotic machinery predicts.  Words
over the source's support alphabet are ranked most-probable-first; for
an i.i.d. source the probability of a word depends only on its
character counts, so the whole distribution of the rank is carried by
type classes (count vectors) instead of the m**k individual words.

Ranks are 1-based.  Ties across equal-probability classes are broken
lexicographically over the merged stratum; the empty word has rank 1
(the listener still submits one verification when nothing was erased).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np

from .noise import NoiseModel
from .numerics import log_sum_exp
from .source import SourceDistribution

#: Brute-force enumeration refuses more than this many words.
BRUTE_FORCE_LIMIT = 2**24
#: Rank-run power sums without a closed form refuse longer runs.
GENERAL_MOMENT_LIMIT = 2**25
#: Classes whose log word probabilities differ by no more than this from
#: the stratum leader merge into one equal-probability stratum.
TIE_TOL = 1e-12
#: Rank runs up to this long sum log j directly; longer runs use
#: log-gamma differences (identical quantity, no summation).
_DIRECT_SUM_LIMIT = 4096

Word = tuple[int, ...]


class EnumerationSizeError(ValueError):
    """A computation would enumerate more than its guard allows."""


@dataclass(frozen=True)
class TypeClass:
    """All words sharing one character-count vector."""

    counts: tuple[int, ...]
    log_word_prob: float
    word_count: int
    rank_offset: int  # this class occupies ranks rank_offset+1 .. rank_offset+word_count


@dataclass(frozen=True)
class GuessworkDistribution:
    """Exact law of the rank of a length-k word, stored per type class.

    ``classes`` are sorted by descending word probability; ``strata``
    are (start, stop) index ranges of classes merged as equiprobable.
    Rank offsets partition 1..m**k.
    """

    k: int
    classes: tuple[TypeClass, ...]
    strata: tuple[tuple[int, int], ...]
    _class_index: dict = field(repr=False, compare=False)
    _stratum_of: tuple[int, ...] = field(repr=False, compare=False)

    @property
    def total_words(self) -> int:
        last = self.classes[-1]
        return last.rank_offset + last.word_count

    def class_at_rank(self, n: int) -> TypeClass:
        """The type class whose rank block contains ``n``."""
        if not 1 <= n <= self.total_words:
            raise ValueError(f"rank {n} outside 1..{self.total_words}")
        lo, hi = 0, len(self.classes) - 1
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if self.classes[mid].rank_offset < n:
                lo = mid
            else:
                hi = mid - 1
        return self.classes[lo]

    def log_pmf_at_rank(self, n: int) -> float:
        return self.class_at_rank(n).log_word_prob

    def pmf_at_rank(self, n: int) -> float:
        return math.exp(self.log_pmf_at_rank(n))


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _multinomial(counts: Sequence[int]) -> int:
    total = sum(counts)
    out = math.factorial(total)
    for c in counts:
        out //= math.factorial(c)
    return out


def guesswork_distribution(
    src: SourceDistribution, k: int, tie_break: str = "lex"
) -> GuessworkDistribution:
    """Build the exact rank distribution for length ``k``.

    ``tie_break`` orders the class blocks inside a merged stratum; the
    reversed order exists to demonstrate that moments are tie-break
    invariant, and changes nothing else.
    """
    if k < 0:
        raise ValueError("word length must be nonnegative")
    if tie_break not in ("lex", "revlex"):
        raise ValueError(f"unknown tie break {tie_break!r}")
    logs = src._log_probs
    m = src.support_size
    raw = []
    for counts in _compositions(k, m):
        lp = sum(counts[i] * logs[i] for i in range(m))
        raw.append((counts, lp, _multinomial(counts)))
    raw.sort(key=lambda t: (-t[1], t[0]))

    # group classes into equal-probability strata against each leader
    strata_members: list[list[tuple]] = []
    for entry in raw:
        if strata_members and strata_members[-1][0][1] - entry[1] <= TIE_TOL:
            strata_members[-1].append(entry)
        else:
            strata_members.append([entry])

    classes: list[TypeClass] = []
    strata: list[tuple[int, int]] = []
    stratum_of: list[int] = []
    offset = 0
    for si, members in enumerate(strata_members):
        if tie_break == "revlex":
            members = members[::-1]
        start = len(classes)
        for counts, lp, count in members:
            classes.append(TypeClass(counts, lp, count, offset))
            stratum_of.append(si)
            offset += count
        strata.append((start, len(classes)))

    if offset != m**k:
        raise AssertionError(f"rank offsets cover {offset} words, expected {m**k}")
    mass = math.fsum(cls.word_count * math.exp(cls.log_word_prob) for cls in classes)
    if abs(mass - 1.0) > 1e-10:
        raise AssertionError(f"class probabilities sum to {mass!r}")

    return GuessworkDistribution(
        k=k,
        classes=tuple(classes),
        strata=tuple(strata),
        _class_index={cls.counts: i for i, cls in enumerate(classes)},
        _stratum_of=tuple(stratum_of),
    )


@lru_cache(maxsize=512)
def _distribution_cached(src: SourceDistribution, k: int) -> GuessworkDistribution:
    return guesswork_distribution(src, k)


def _validate_word(src: SourceDistribution, word: Sequence[int]) -> Word:
    w = tuple(int(c) for c in word)
    m = src.support_size
    if any(c < 0 or c >= m for c in w):
        raise ValueError(f"word characters must lie in [0, {m}), got {w}")
    return w


def rank_typeclass(src: SourceDistribution, word: Sequence[int]) -> int:
    """Optimal-order rank of ``word``, in time polynomial in its length.

    Ranks of all strictly-more-probable strata are skipped by their
    total word counts; the position inside the word's own stratum is the
    number of lexicographically smaller words across the stratum's type
    classes, counted with multinomial coefficients.
    """
    w = _validate_word(src, word)
    k = len(w)
    if k == 0:
        return 1
    dist = _distribution_cached(src, k)
    m = src.support_size
    counts = [0] * m
    for c in w:
        counts[c] += 1
    idx = dist._class_index[tuple(counts)]
    start, stop = dist.strata[dist._stratum_of[idx]]
    members = dist.classes[start:stop]
    offset = min(cls.rank_offset for cls in members)

    position = 0
    used = [0] * m
    fact = math.factorial
    for i, char in enumerate(w):
        remaining = k - i - 1
        for c in range(char):
            used[c] += 1
            for cls in members:
                need = cls.counts
                total = fact(remaining)
                ok = True
                for j in range(m):
                    left = need[j] - used[j]
                    if left < 0:
                        ok = False
                        break
                    total //= fact(left)
                if ok:
                    position += total
            used[c] -= 1
        used[char] += 1
    return offset + position + 1


def rank_bruteforce(src: SourceDistribution, word: Sequence[int]) -> int:
    """Rank by enumerating and sorting every word (independent oracle).

    Guards at BRUTE_FORCE_LIMIT words.  Uses the same published tie
    semantics as the type-class route (merge within TIE_TOL of the
    stratum leader, lexicographic inside) but shares none of its
    machinery.
    """
    w = _validate_word(src, word)
    ranks = _bruteforce_ranks(src, len(w))
    return ranks[w]


@lru_cache(maxsize=8)
def _bruteforce_ranks(src: SourceDistribution, k: int) -> dict:
    import itertools

    m = src.support_size
    if m**k > BRUTE_FORCE_LIMIT:
        raise EnumerationSizeError(
            f"{m}**{k} words exceed the enumeration guard of {BRUTE_FORCE_LIMIT}"
        )
    logs = src._log_probs
    scored = []
    for word in itertools.product(range(m), repeat=k):
        tally = [0] * m
        for c in word:
            tally[c] += 1
        lp = sum(tally[i] * logs[i] for i in range(m))
        scored.append((lp, word))
    scored.sort(key=lambda t: (-t[0], t[1]))

    ranks: dict = {}
    rank = 1
    i = 0
    while i < len(scored):
        leader = scored[i][0]
        j = i
        while j < len(scored) and leader - scored[j][0] <= TIE_TOL:
            j += 1
        for word in sorted(t[1] for t in scored[i:j]):
            ranks[word] = rank
            rank += 1
        i = j
    return ranks


def _sum_log_range(offset: int, count: int) -> float:
    """sum of log j over j = offset+1 .. offset+count."""
    if count <= _DIRECT_SUM_LIMIT:
        return math.fsum(math.log(j) for j in range(offset + 1, offset + count + 1))
    return math.lgamma(float(offset + count + 1)) - math.lgamma(float(offset + 1))


def _log_rank_power_sum(offset: int, count: int, alpha: float) -> float:
    """log of sum of j**alpha over j = offset+1 .. offset+count.

    Integer alpha in {0, 1, 2} uses exact closed forms (the counts can
    be astronomically large); other orders sum directly in the log
    domain and refuse runs beyond GENERAL_MOMENT_LIMIT.
    """
    if alpha == 0.0:
        return math.log(count)
    if alpha == 1.0:
        return math.log(count * (2 * offset + count + 1) // 2)
    if alpha == 2.0:
        def cubes(n: int) -> int:
            return n * (n + 1) * (2 * n + 1) // 6

        return math.log(cubes(offset + count) - cubes(offset))
    if count > GENERAL_MOMENT_LIMIT:
        raise EnumerationSizeError(
            f"rank-run of {count} words has no closed form for alpha={alpha}; "
            f"guard is {GENERAL_MOMENT_LIMIT}"
        )
    logs = alpha * np.log(np.arange(offset + 1, offset + count + 1, dtype=np.float64))
    peak = logs.max()
    return float(peak + np.log(np.exp(logs - peak).sum()))


def exact_guesswork_moment(
    src: SourceDistribution, k: int, alpha: float, *, _tie_break: str = "lex"
) -> float:
    """log E[G**alpha] for a length-k word, exactly, in the log domain.

    Within one class of c equiprobable words at ranks r+1..r+c the
    contribution is word_prob * sum(j**alpha); classes accumulate by
    log-sum-exp because E[G] grows exponentially in k.
    """
    if k < 0:
        raise ValueError("word length must be nonnegative")
    alpha = float(alpha)
    if not math.isfinite(alpha):
        raise ValueError("moment order must be finite")
    if k == 0:
        return 0.0
    if _tie_break == "lex":
        dist = _distribution_cached(src, k)
    else:
        dist = guesswork_distribution(src, k, _tie_break)
    terms = [
        cls.log_word_prob + _log_rank_power_sum(cls.rank_offset, cls.word_count, alpha)
        for cls in dist.classes
    ]
    return log_sum_exp(terms)


def exact_subordinated_moment(
    src: SourceDistribution, noise: NoiseModel, k: int, alpha: float
) -> float:
    """log E[G(erased substring)**alpha] at string length ``k``, exactly."""
    if k < 1:
        raise ValueError(f"string length must be at least 1, got {k}")
    count_pmf = noise.erasure_count_pmf(k)
    terms = [
        math.log(p) + exact_guesswork_moment(src, n, alpha)
        for n, p in enumerate(count_pmf.pmf)
        if p > 0.0
    ]
    return log_sum_exp(terms)


def _mean_log_rank(src: SourceDistribution, n: int) -> float:
    """E[log G] for a length-n word."""
    if n == 0:
        return 0.0
    dist = _distribution_cached(src, n)
    return math.fsum(
        math.exp(cls.log_word_prob) * _sum_log_range(cls.rank_offset, cls.word_count)
        for cls in dist.classes
    )


def exact_mean_log_guesswork(src: SourceDistribution, noise: NoiseModel, k: int) -> float:
    """(1/k) E[log G(erased substring)] at string length ``k``, exactly."""
    if k < 1:
        raise ValueError(f"string length must be at least 1, got {k}")
    count_pmf = noise.erasure_count_pmf(k)
    total = math.fsum(
        p * _mean_log_rank(src, n) for n, p in enumerate(count_pmf.pmf) if p > 0.0
    )
    return total / k


@dataclass(frozen=True)
class SimulationReport:
    """Monte-Carlo attack samples and their summary statistics.

    ``log_guesswork`` holds log G per trial, ``erasure_counts`` the
    erased-character counts; rates are per character.  Confidence
    intervals are 95% normal intervals on the means.
    """

    k: int
    trials: int
    seed: int
    log_guesswork: tuple[float, ...]
    erasure_counts: tuple[int, ...]
    mean_log_guesswork_rate: float
    var_log_guesswork_rate: float
    ci95_log_guesswork_rate: tuple[float, float]
    mean_erasure_fraction: float
    var_erasure_fraction: float
    ci95_erasure_fraction: tuple[float, float]


def _summary(samples: np.ndarray) -> tuple[float, float, tuple[float, float]]:
    mean = float(samples.mean())
    var = float(samples.var(ddof=1)) if len(samples) > 1 else 0.0
    half = 1.959963984540054 * math.sqrt(var / len(samples))
    return mean, var, (mean - half, mean + half)


def simulate_attack(
    src: SourceDistribution, noise: NoiseModel, k: int, trials: int, seed: int = 0
) -> SimulationReport:
    """Sample the attack: draw a word and a pattern, rank the erased part.

    Each trial uses its own stream spawned from (seed, trial index), so
    the report is bit-identical for a given (seed, trials) no matter how
    trials would be partitioned across workers.
    """
    if k < 1:
        raise ValueError(f"string length must be at least 1, got {k}")
    if trials < 1:
        raise ValueError(f"need at least one trial, got {trials}")
    cum = np.cumsum(np.asarray(src.support))
    m = src.support_size
    children = np.random.SeedSequence(seed).spawn(trials)
    log_g = np.empty(trials)
    erased = np.empty(trials, dtype=np.int64)
    for t in range(trials):
        rng = np.random.default_rng(children[t])
        word = np.minimum(np.searchsorted(cum, rng.random(k), side="right"), m - 1)
        pattern = noise.sample_erasure_pattern(k, rng)
        sub = tuple(int(c) for c in word[pattern.astype(bool)])
        log_g[t] = math.log(rank_typeclass(src, sub))
        erased[t] = len(sub)
    lg_mean, lg_var, lg_ci = _summary(log_g / k)
    er_mean, er_var, er_ci = _summary(erased / k)
    return SimulationReport(
        k=k,
        trials=trials,
        seed=seed,
        log_guesswork=tuple(float(v) for v in log_g),
        erasure_counts=tuple(int(v) for v in erased),
        mean_log_guesswork_rate=lg_mean,
        var_log_guesswork_rate=lg_var,
        ci95_log_guesswork_rate=lg_ci,
        mean_erasure_fraction=er_mean,
        var_erasure_fraction=er_var,
        ci95_erasure_fraction=er_ci,
    )
