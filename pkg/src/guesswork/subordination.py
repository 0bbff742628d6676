"""Guesswork subordinated by the erasure process.

The listener only guesses the erased substring, whose random length
turns the erasure process into a subordinator for the guesswork.  The
composed sCGF is the noise sCGF evaluated at the guesswork sCGF; its
rate function is computed by two independent routes that must agree:

* ``subordinated_rate_inf``  -- the inf over erasure fractions y of
  ``y * source_rate(x/y) + noise_rate(y)``;
* ``subordinated_rate_dual`` -- the numeric Legendre-Fenchel conjugate
  of the composed sCGF.

Also here: the two growth rates (mean-log and log-mean) and the
two-channel comparison report behind the "noisier on average but easier
to guess" phenomenon.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from .noise import NoiseModel
from .numerics import CurveGrid, legendre_conjugate, maximize_concave_1d
from .source import SourceDistribution

#: The inner minimization keeps clear of y = 0, which has its own
#: convention (see subordinated_rate_inf).
_Y_FLOOR = 1e-12
#: Forgive float roundoff when x/y grazes the source rate-function
#: domain edge from above.
_EDGE_SLACK = 1e-10


def subordinated_scgf(src: SourceDistribution, noise: NoiseModel, alpha: float) -> float:
    """Scaled CGF of the per-character log-guesswork of the erased substring."""
    return noise.scgf(src.guesswork_scgf(alpha))


def subordinated_rate_dual(src: SourceDistribution, noise: NoiseModel, x: float) -> float:
    """Rate function via the conjugate of the composed sCGF."""
    x = float(x)
    if math.isnan(x):
        raise ValueError("rate function argument is NaN")
    if x < 0.0:
        return math.inf
    return legendre_conjugate(
        lambda alpha: subordinated_scgf(src, noise, alpha), x, domain=(-math.inf, math.inf)
    )


def subordinated_rate_inf(src: SourceDistribution, noise: NoiseModel, x: float) -> float:
    """Rate function via the inf-formula over erasure fractions.

    Minimizes ``y * source_rate(x/y) + noise_rate(y)`` over y in [0, 1].
    The y = 0 term follows the contraction argument: zero characters
    erased pins log-guesswork to 0, so the term is ``noise_rate(0)`` at
    x = 0 and +inf for x > 0.  The objective is jointly convex, so a
    golden-section pass over the finite part of [y_floor, 1] plus the
    candidate points {y floor, mean rate, 1} finds the infimum; noise
    rates that are +inf almost everywhere (deterministic channels)
    are covered by the candidates alone.
    """
    x = float(x)
    if math.isnan(x):
        raise ValueError("rate function argument is NaN")
    if x < 0.0:
        return math.inf
    log_m = src.log_support_size

    def term(y: float) -> float:
        z = x / y
        if z > log_m and z <= log_m * (1.0 + _EDGE_SLACK) + 1e-300:
            z = log_m  # roundoff from y = x/log_m landing 1 ulp outside
        r = src.guesswork_rate_function(z)
        if math.isinf(r):
            return math.inf
        nr = noise.rate_function(y)
        if math.isinf(nr):
            return math.inf
        return y * r + nr

    best = math.inf
    if x == 0.0:
        best = noise.rate_function(0.0)
        lo = _Y_FLOOR
    elif log_m == 0.0:  # degenerate source: only x = 0 is reachable
        return best
    else:
        lo = max(_Y_FLOOR, x / log_m)
    if lo > 1.0:
        return best

    candidates = [lo, 1.0]
    mean_rate = noise.mean_erasure_rate()
    if lo <= mean_rate <= 1.0:
        candidates.append(mean_rate)
    for y in candidates:
        best = min(best, term(y))
    # Convexity + finiteness at both ends imply finiteness across the
    # bracket, which maximize_concave_1d requires.
    if lo < 1.0 and math.isfinite(term(lo)) and math.isfinite(term(1.0)):
        _, neg_min = maximize_concave_1d(lambda y: -term(y), lo, 1.0)
        best = min(best, -neg_min)
    return best


def rate_function_curves(
    src: SourceDistribution, noise: NoiseModel, xs: Iterable[float]
) -> tuple[CurveGrid, CurveGrid]:
    """Sample both rate-function routes on a common grid."""
    xs = tuple(float(x) for x in xs)
    inf_ys = tuple(subordinated_rate_inf(src, noise, x) for x in xs)
    dual_ys = tuple(subordinated_rate_dual(src, noise, x) for x in xs)
    return CurveGrid(xs, inf_ys), CurveGrid(xs, dual_ys)


@dataclass(frozen=True)
class GrowthRates:
    """Per-character growth rates of the subordinated guesswork.

    ``mean_log_growth`` drives E[log G] (mean erasure rate times Shannon
    entropy); ``log_mean_growth`` drives log E[G] (noise sCGF at the
    order-1/2 Renyi entropy).  Jensen's inequality orders them.
    """

    mean_log_growth: float
    log_mean_growth: float

    def __post_init__(self) -> None:
        if self.mean_log_growth < -1e-12:
            raise ValueError(f"mean-log growth must be nonnegative, got {self.mean_log_growth}")
        if self.mean_log_growth > self.log_mean_growth + 1e-12:
            raise ValueError(
                f"Jensen ordering violated: {self.mean_log_growth} > {self.log_mean_growth}"
            )


def growth_rates(src: SourceDistribution, noise: NoiseModel) -> GrowthRates:
    """Both growth rates, cross-checked against the composed sCGF slope at 0."""
    mean_log = noise.mean_erasure_rate() * src.shannon_entropy()
    log_mean = noise.scgf(src.guesswork_scgf(1.0))
    h = 1e-5
    slope = (subordinated_scgf(src, noise, h) - subordinated_scgf(src, noise, -h)) / (2.0 * h)
    if abs(slope - mean_log) > 1e-6:
        raise ArithmeticError(
            f"composed sCGF slope {slope} at 0 disagrees with mean-log rate {mean_log}"
        )
    return GrowthRates(mean_log, log_mean)


@dataclass(frozen=True)
class ChannelComparison:
    """Growth rates of two channels over one source, with their ordering.

    ``noisier_channel_easier`` is set when the channel with the strictly
    higher mean erasure rate has the strictly lower log-mean growth,
    i.e. more noise on average yet easier average guessing.
    """

    rates_a: GrowthRates
    rates_b: GrowthRates
    mean_rate_a: float
    mean_rate_b: float
    mean_log_diff: float
    log_mean_diff: float
    noisier_channel_easier: bool


def compare_channels(
    src: SourceDistribution, a: NoiseModel, b: NoiseModel
) -> ChannelComparison:
    ra, rb = growth_rates(src, a), growth_rates(src, b)
    mu_a, mu_b = a.mean_erasure_rate(), b.mean_erasure_rate()
    if mu_a > mu_b:
        flag = ra.log_mean_growth < rb.log_mean_growth
    elif mu_b > mu_a:
        flag = rb.log_mean_growth < ra.log_mean_growth
    else:
        flag = False
    return ChannelComparison(
        rates_a=ra,
        rates_b=rb,
        mean_rate_a=mu_a,
        mean_rate_b=mu_b,
        mean_log_diff=ra.mean_log_growth - rb.mean_log_growth,
        log_mean_diff=ra.log_mean_growth - rb.log_mean_growth,
        noisier_channel_easier=flag,
    )
