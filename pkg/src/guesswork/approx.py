"""Rate-function approximation to the guesswork pmf.

The large-deviations principle suggests the direct pointwise
approximation  P(G = n) ~ (1/n) exp(-k * rate((1/k) log n)),  exact for
uniform sources and correct to exponential order elsewhere.  The
subordinated variant plugs in the composed rate function.  The
comparison report quantifies the gap against the exact type-class law.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .noise import NoiseModel
from .oracle import BRUTE_FORCE_LIMIT, EnumerationSizeError, _distribution_cached
from .source import SourceDistribution
from .subordination import subordinated_rate_inf

#: The comparison grid stays inside this fraction of the rate-function
#: domain: at the extreme ranks the per-rank pmf differs from the
#: neighborhood mass the LDP tracks by a factor exponential in k, which
#: says nothing about the approximation elsewhere.
_INTERIOR_FRACTION = 0.9
_GRID_POINTS = 64


def _check_rank(src: SourceDistribution, k: int, n: int) -> int:
    if k < 1:
        raise ValueError(f"word length must be at least 1, got {k}")
    n = int(n)
    if not 1 <= n <= src.support_size**k:
        raise ValueError(f"rank {n} outside 1..{src.support_size}**{k}")
    return n


def approx_pmf(src: SourceDistribution, k: int, n: int) -> float:
    """Rate-function approximation to P(G = n) for length-k words."""
    n = _check_rank(src, k, n)
    log_n = math.log(n)
    rate = src.guesswork_rate_function(log_n / k)
    if math.isinf(rate):
        return 0.0
    return math.exp(-(log_n + k * rate))


def approx_subordinated_pmf(
    src: SourceDistribution, noise: NoiseModel, k: int, n: int
) -> float:
    """Same approximation with the subordinated rate function."""
    n = _check_rank(src, k, n)
    log_n = math.log(n)
    rate = subordinated_rate_inf(src, noise, log_n / k)
    if math.isinf(rate):
        return 0.0
    return math.exp(-(log_n + k * rate))


@dataclass(frozen=True)
class ApproxComparison:
    """Exact vs approximate pmf on a log-spaced grid of ranks.

    ``max_abs_log_ratio`` is max over the grid of |log(approx/exact)|.
    The grid covers ranks n with (1/k) log n up to _INTERIOR_FRACTION of
    log(support size), the interior where the LDP speaks.
    """

    k: int
    max_abs_log_ratio: float
    grid: tuple[tuple[int, float, float], ...]  # (rank, exact, approx)


def compare_exact_vs_approx(src: SourceDistribution, k: int) -> ApproxComparison:
    m = src.support_size
    if m**k > BRUTE_FORCE_LIMIT:
        raise EnumerationSizeError(
            f"{m}**{k} words exceed the comparison guard of {BRUTE_FORCE_LIMIT}"
        )
    dist = _distribution_cached(src, k)
    top = max(1, int(math.exp(_INTERIOR_FRACTION * k * src.log_support_size)))
    ranks = sorted({int(round(v)) for v in np.geomspace(1, top, _GRID_POINTS)})
    rows = []
    worst = 0.0
    for n in ranks:
        log_exact = dist.log_pmf_at_rank(n)
        log_n = math.log(n)
        log_approx = -(log_n + k * src.guesswork_rate_function(log_n / k))
        worst = max(worst, abs(log_approx - log_exact))
        rows.append((n, math.exp(log_exact), math.exp(log_approx)))
    return ApproxComparison(k=k, max_abs_log_ratio=worst, grid=tuple(rows))
