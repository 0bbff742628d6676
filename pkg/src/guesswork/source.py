"""I.i.d. character sources.

A :class:`SourceDistribution` owns the character probabilities and the
quantities that drive everything else: Renyi and Shannon entropies, the
scaled cumulant generating function of the log-guesswork process, and
its Legendre-Fenchel conjugate (the large-deviations rate function).
All values are in nats; any unit conversion happens at the CLI boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .numerics import legendre_conjugate, log_sum_exp

#: Orders this close to 1 use the Shannon limit, avoiding 0/0 cancellation.
SHANNON_ORDER_WINDOW = 1e-6
PROB_SUM_TOL = 1e-12


@dataclass(frozen=True)
class SourceDistribution:
    """Character distribution of an i.i.d. string source.

    Zero-probability characters are dropped from the support at
    construction; entropies and rank computations only ever see the
    support, so the effective alphabet size is ``support_size``.
    """

    probs: tuple[float, ...]

    def __post_init__(self) -> None:
        probs = tuple(float(p) for p in self.probs)
        object.__setattr__(self, "probs", probs)
        if not probs:
            raise ValueError("a source needs at least one character")
        if any(p < 0.0 or math.isnan(p) for p in probs):
            raise ValueError(f"negative or NaN probability in {probs}")
        total = math.fsum(probs)
        if abs(total - 1.0) > PROB_SUM_TOL:
            raise ValueError(f"probabilities sum to {total!r}, expected 1")

    @classmethod
    def uniform(cls, m: int) -> "SourceDistribution":
        if m < 1:
            raise ValueError("alphabet size must be at least 1")
        return cls(tuple(1.0 / m for _ in range(m)))

    @cached_property
    def support(self) -> tuple[float, ...]:
        return tuple(p for p in self.probs if p > 0.0)

    @cached_property
    def support_size(self) -> int:
        return len(self.support)

    @cached_property
    def log_support_size(self) -> float:
        return math.log(self.support_size)

    @cached_property
    def _log_probs(self) -> tuple[float, ...]:
        return tuple(math.log(p) for p in self.support)

    @cached_property
    def max_prob(self) -> float:
        return max(self.support)

    def renyi_entropy(self, alpha: float) -> float:
        """Renyi entropy of order ``alpha`` in nats, over the support.

        Accepts ``alpha`` in [0, inf].  The log-moment is accumulated in
        the log domain so very large orders cannot underflow.
        """
        alpha = float(alpha)
        if math.isnan(alpha) or alpha < 0.0:
            raise ValueError(f"entropy order must be in [0, inf], got {alpha}")
        if math.isinf(alpha):
            return -math.log(self.max_prob)
        if abs(alpha - 1.0) < SHANNON_ORDER_WINDOW:
            return self.shannon_entropy()
        log_moment = log_sum_exp(alpha * lp for lp in self._log_probs)
        return log_moment / (1.0 - alpha)

    def shannon_entropy(self) -> float:
        return -math.fsum(p * lp for p, lp in zip(self.support, self._log_probs))

    def guesswork_scgf(self, alpha: float) -> float:
        """Scaled CGF of the per-character log-guesswork, in nats.

        Equals ``alpha * R(1/(1+alpha))`` above the kink at -1 and is
        constant at minus the min-entropy below it, hence finite for
        every real ``alpha``.
        """
        alpha = float(alpha)
        if not math.isfinite(alpha):
            raise ValueError(f"scgf argument must be finite, got {alpha}")
        if alpha <= -1.0:
            return math.log(self.max_prob)
        if alpha == 0.0:
            return 0.0
        return alpha * self.renyi_entropy(1.0 / (1.0 + alpha))

    def guesswork_rate_function(self, x: float) -> float:
        """Legendre-Fenchel conjugate of :meth:`guesswork_scgf` at ``x``.

        +inf off ``[0, log(support_size)]`` (ranks are between 1 and
        support_size**k); inside, the supremum over alpha is computed
        numerically on ``[-1, inf)`` -- the sCGF is affine below -1, so
        for x >= 0 nothing beyond -1 can do better.
        """
        x = float(x)
        if math.isnan(x):
            raise ValueError("rate function argument is NaN")
        if x < 0.0 or x > self.log_support_size:
            return math.inf
        return legendre_conjugate(self.guesswork_scgf, x, domain=(-1.0, math.inf))


@dataclass(frozen=True)
class ScgfBranchPoint:
    """One sampled point (alpha, value) of the guesswork sCGF."""

    alpha: float
    value: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.value):
            raise ValueError("the guesswork sCGF is finite for every real alpha")


def scgf_curve(src: SourceDistribution, alphas: Iterable[float]) -> list[ScgfBranchPoint]:
    return [ScgfBranchPoint(a, src.guesswork_scgf(a)) for a in alphas]


def parse_probs(text: str | Sequence[float]) -> SourceDistribution:
    """Build a source from a comma-separated probability list.

    Sums within 1e-9 of 1 are accepted and renormalized to satisfy the
    stricter construction invariant; anything further off is rejected.
    """
    if isinstance(text, str):
        try:
            values = [float(tok) for tok in text.split(",") if tok.strip()]
        except ValueError as exc:
            raise ValueError(f"cannot parse probabilities from {text!r}: {exc}") from None
    else:
        values = [float(v) for v in text]
    if not values:
        raise ValueError("empty probability list")
    if any(v < 0.0 for v in values):
        raise ValueError(f"negative probability in {values}")
    total = math.fsum(values)
    if abs(total - 1.0) > 1e-9:
        raise ValueError(f"probabilities sum to {total!r}, expected 1 within 1e-9")
    return SourceDistribution(tuple(v / total for v in values))
