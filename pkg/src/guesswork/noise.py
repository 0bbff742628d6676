"""Erasure channel models.

Three channels: a deterministic fraction of erasures, i.i.d. Bernoulli
erasures, and a bursty two-state Markov chain (state 1 = no erasure,
state 2 = erasure, started from its stationary distribution).  Each
model owns its scaled CGF, rate function, mean erasure rate, the exact
law of the erasure count at finite length, and a pattern sampler.

Channel spec strings, as used by the CLI: ``det:0.14``, ``bern:0.10``,
``markov:0.1,0.4``.
"""

from __future__ import annotations

import abc
import math
from dataclasses import dataclass

import numpy as np

from .numerics import _perron_2x2, legendre_conjugate

PMF_SUM_TOL = 1e-10


@dataclass(frozen=True)
class ErasureCountPmf:
    """Exact law of the erasure count for a length-k string."""

    k: int
    pmf: tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "pmf", tuple(float(p) for p in self.pmf))
        if self.k < 1:
            raise ValueError("string length must be at least 1")
        if len(self.pmf) != self.k + 1:
            raise ValueError(f"pmf must have {self.k + 1} entries, got {len(self.pmf)}")
        if any(p < 0.0 for p in self.pmf):
            raise ValueError("pmf entries must be nonnegative")
        total = math.fsum(self.pmf)
        if abs(total - 1.0) > PMF_SUM_TOL:
            raise ValueError(f"pmf sums to {total!r}, expected 1")

    def mean(self) -> float:
        return math.fsum(n * p for n, p in enumerate(self.pmf))


class NoiseModel(abc.ABC):
    """Common surface of the erasure channel models."""

    @abc.abstractmethod
    def scgf(self, beta: float) -> float:
        """Scaled CGF of the erasure fraction at ``beta`` (0 at beta=0)."""

    @abc.abstractmethod
    def rate_function(self, y: float) -> float:
        """Legendre-Fenchel conjugate of :meth:`scgf`; +inf off [0, 1]."""

    @abc.abstractmethod
    def mean_erasure_rate(self) -> float:
        """Long-run erased fraction; equals the sCGF derivative at 0."""

    @abc.abstractmethod
    def erasure_count_pmf(self, k: int) -> ErasureCountPmf:
        """Exact distribution of the erasure count over ``k`` characters."""

    @abc.abstractmethod
    def sample_erasure_pattern(self, k: int, rng: np.random.Generator) -> np.ndarray:
        """Per-position erasure indicators (0/1 array of length ``k``)."""

    def _check_k(self, k: int) -> int:
        k = int(k)
        if k < 1:
            raise ValueError(f"string length must be at least 1, got {k}")
        return k


def _floor_fraction(mu: float, k: int) -> int:
    # floor(mu*k) with a nudge so exact products like 0.3*10 do not land
    # one below the integer they represent.
    return min(k, int(math.floor(mu * k + 1e-9)))


@dataclass(frozen=True)
class Deterministic(NoiseModel):
    """Exactly a fraction ``mu`` of characters erased.

    At finite length the first floor(mu*k) positions are erased; for an
    i.i.d. source only the count matters to guesswork, not the
    positions.
    """

    mu: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "mu", float(self.mu))
        if not 0.0 <= self.mu <= 1.0:
            raise ValueError(f"erased fraction must be in [0, 1], got {self.mu}")

    def scgf(self, beta: float) -> float:
        return self.mu * float(beta)

    def rate_function(self, y: float) -> float:
        y = float(y)
        if y < 0.0 or y > 1.0:
            return math.inf
        return 0.0 if y == self.mu else math.inf

    def mean_erasure_rate(self) -> float:
        return self.mu

    def erasure_count_pmf(self, k: int) -> ErasureCountPmf:
        k = self._check_k(k)
        pmf = [0.0] * (k + 1)
        pmf[_floor_fraction(self.mu, k)] = 1.0
        return ErasureCountPmf(k, tuple(pmf))

    def sample_erasure_pattern(self, k: int, rng: np.random.Generator) -> np.ndarray:
        k = self._check_k(k)
        pattern = np.zeros(k, dtype=np.int8)
        pattern[: _floor_fraction(self.mu, k)] = 1
        return pattern


@dataclass(frozen=True)
class BernoulliIID(NoiseModel):
    """Each character independently erased with probability ``p``."""

    p: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "p", float(self.p))
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"erasure probability must be in [0, 1], got {self.p}")

    def scgf(self, beta: float) -> float:
        beta = float(beta)
        if self.p == 0.0:
            return 0.0
        if self.p == 1.0:
            return beta
        if beta > 30.0:  # log(1-p+p*e^b) = b + log(p + (1-p)e^-b), overflow-safe
            return beta + math.log(self.p + (1.0 - self.p) * math.exp(-beta))
        return math.log1p(self.p * math.expm1(beta))

    def rate_function(self, y: float) -> float:
        y = float(y)
        p = self.p
        if y < 0.0 or y > 1.0:
            return math.inf
        if p == 0.0:
            return 0.0 if y == 0.0 else math.inf
        if p == 1.0:
            return 0.0 if y == 1.0 else math.inf
        if y == 0.0:  # 0*log 0 := 0 at both endpoints
            return -math.log1p(-p)
        if y == 1.0:
            return -math.log(p)
        return y * math.log(y / p) + (1.0 - y) * math.log((1.0 - y) / (1.0 - p))

    def mean_erasure_rate(self) -> float:
        return self.p

    def erasure_count_pmf(self, k: int) -> ErasureCountPmf:
        k = self._check_k(k)
        p = self.p
        pmf = tuple(math.comb(k, n) * p**n * (1.0 - p) ** (k - n) for n in range(k + 1))
        return ErasureCountPmf(k, pmf)

    def sample_erasure_pattern(self, k: int, rng: np.random.Generator) -> np.ndarray:
        k = self._check_k(k)
        return (rng.random(k) < self.p).astype(np.int8)


@dataclass(frozen=True)
class MarkovTwoState(NoiseModel):
    """Bursty erasures from an irreducible two-state chain.

    ``a`` is the no-erasure -> erasure transition probability, ``b`` the
    reverse; both strictly inside (0, 1).  The chain starts from its
    stationary distribution, which makes the mean erasure rate exact at
    every finite length.
    """

    a: float
    b: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", float(self.a))
        object.__setattr__(self, "b", float(self.b))
        if not (0.0 < self.a < 1.0 and 0.0 < self.b < 1.0):
            raise ValueError(
                f"transition probabilities must lie strictly in (0, 1), got a={self.a}, b={self.b}"
            )

    def scgf(self, beta: float) -> float:
        """Log Perron eigenvalue of the tilted transition matrix.

        The tilt multiplies the erasure-state column by e^beta.  For
        beta > 0 the factor e^beta is pulled out analytically so the
        matrix entries stay bounded; for very negative beta the tilted
        column underflows to zero and the formula degrades gracefully to
        the correct limit log(1-a), so no irreducibility check is
        applied here (the public perron operation keeps it).
        """
        beta = float(beta)
        a, b = self.a, self.b
        if beta <= 0.0:
            e = math.exp(beta)
            return math.log(_perron_2x2(1.0 - a, a * e, b, (1.0 - b) * e))
        e = math.exp(-beta)
        return beta + math.log(_perron_2x2((1.0 - a) * e, a, b * e, 1.0 - b))

    def rate_function(self, y: float) -> float:
        y = float(y)
        if y < 0.0 or y > 1.0:
            return math.inf
        return legendre_conjugate(self.scgf, y, domain=(-math.inf, math.inf))

    def mean_erasure_rate(self) -> float:
        return self.a / (self.a + self.b)

    def erasure_count_pmf(self, k: int) -> ErasureCountPmf:
        k = self._check_k(k)
        a, b = self.a, self.b
        pi_erase = a / (a + b)
        # dp[state, n]: chain in `state` at the current character with n
        # erasures so far; a character is erased iff its state is 1.
        dp = np.zeros((2, k + 1))
        dp[0, 0] = 1.0 - pi_erase
        dp[1, 1] = pi_erase
        for _ in range(k - 1):
            stay = dp[0] * (1.0 - a) + dp[1] * b
            move = dp[0] * a + dp[1] * (1.0 - b)
            nxt = np.zeros_like(dp)
            nxt[0] = stay
            nxt[1, 1:] = move[:-1]
            dp = nxt
        return ErasureCountPmf(k, tuple(dp.sum(axis=0)))

    def sample_erasure_pattern(self, k: int, rng: np.random.Generator) -> np.ndarray:
        k = self._check_k(k)
        a, b = self.a, self.b
        pattern = np.zeros(k, dtype=np.int8)
        state = 1 if rng.random() < a / (a + b) else 0
        for i in range(k):
            pattern[i] = state
            if state == 0:
                state = 1 if rng.random() < a else 0
            else:
                state = 0 if rng.random() < b else 1
        return pattern


def parse_channel(spec: str) -> NoiseModel:
    """Parse a channel spec string: det:<mu> | bern:<p> | markov:<a>,<b>."""
    kind, sep, args = spec.partition(":")
    if not sep:
        raise ValueError(f"channel spec {spec!r} is missing ':'")
    try:
        if kind == "det":
            return Deterministic(float(args))
        if kind == "bern":
            return BernoulliIID(float(args))
        if kind == "markov":
            a_text, b_text = args.split(",")
            return MarkovTwoState(float(a_text), float(b_text))
    except ValueError as exc:
        raise ValueError(f"bad channel spec {spec!r}: {exc}") from None
    raise ValueError(f"unknown channel kind {kind!r} in {spec!r} (expected det, bern, or markov)")
