"""Shared 1-D numeric kernels.

Everything downstream (rate functions, conjugates, Markov sCGFs, exact
moments) reduces to four primitives: golden-section maximization of a
concave function, numeric Legendre-Fenchel conjugation with bracket
growth, the Perron eigenvalue of a 2x2 nonnegative matrix, and stable
log-sum-exp accumulation.  All routines are pure and thread-safe.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
_INV_PHI_SQ = (3.0 - math.sqrt(5.0)) / 2.0

#: Expanding conjugate brackets stop growing here.
BRACKET_CAP = 1.0e6
#: Secant slope at a capped bracket edge at or above this means the
#: conjugate objective is still climbing, i.e. the supremum is +inf.
FLAT_SLOPE = 1.0e-9
#: Default absolute tolerance on the argument of 1-D optimizations.
OPT_TOL = 1.0e-10


@dataclass(frozen=True)
class CurveGrid:
    """A sampled function: strictly increasing xs with matching ys.

    ys may contain ``math.inf`` as an out-of-domain sentinel.
    """

    xs: tuple[float, ...]
    ys: tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "xs", tuple(float(x) for x in self.xs))
        object.__setattr__(self, "ys", tuple(float(y) for y in self.ys))
        if len(self.xs) != len(self.ys):
            raise ValueError("xs and ys must have equal length")
        if len(self.xs) < 2:
            raise ValueError("a curve grid needs at least two points")
        if any(b <= a for a, b in zip(self.xs, self.xs[1:])):
            raise ValueError("xs must be strictly increasing")

    def __len__(self) -> int:
        return len(self.xs)


def maximize_concave_1d(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float = OPT_TOL,
) -> tuple[float, float]:
    """Golden-section maximization of a concave ``f`` on ``[lo, hi]``.

    Returns ``(argmax, max)`` with the argmax located to within ``tol``.
    The best value ever evaluated (endpoints included) is returned, so a
    boundary maximum loses nothing to the final bracket width.  A
    non-finite value at an interior evaluation point raises ValueError:
    a proper concave objective is finite on the interior of its domain,
    so that signals a caller bug.
    """
    if not (math.isfinite(lo) and math.isfinite(hi)) or lo >= hi:
        raise ValueError(f"need a finite bracket with lo < hi, got [{lo}, {hi}]")
    if tol <= 0.0:
        raise ValueError("tol must be positive")

    def interior(x: float) -> float:
        y = f(x)
        if not math.isfinite(y):
            raise ValueError(f"objective is {y} at {x}, inside the bracket")
        return y

    best_x, best_y = lo, f(lo)
    y_hi = f(hi)
    if math.isnan(best_y) or math.isnan(y_hi):
        raise ValueError("objective is NaN at a bracket endpoint")
    if y_hi > best_y:
        best_x, best_y = hi, y_hi

    a, b = lo, hi
    width = b - a
    c = a + _INV_PHI_SQ * width
    d = a + _INV_PHI * width
    yc, yd = interior(c), interior(d)
    for x, y in ((c, yc), (d, yd)):
        if y > best_y:
            best_x, best_y = x, y
    while width > tol:
        if yc >= yd:
            b, d, yd = d, c, yc
            width = b - a
            c = a + _INV_PHI_SQ * width
            yc = interior(c)
            if yc > best_y:
                best_x, best_y = c, yc
        else:
            a, c, yc = c, d, yd
            width = b - a
            d = a + _INV_PHI * width
            yd = interior(d)
            if yd > best_y:
                best_x, best_y = d, yd
    return best_x, best_y


def _grow_right(g: Callable[[float], float], anchor: float) -> float | None:
    """Double a right bracket edge until g stops climbing.

    Returns the edge, or None if g is still climbing at BRACKET_CAP with
    secant slope >= FLAT_SLOPE (supremum +inf).
    """
    edge = max(1.0, anchor + 1.0) if math.isfinite(anchor) else 1.0
    while True:
        step = max(1e-6 * abs(edge), 1e-8)
        slope = (g(edge) - g(edge - step)) / step
        if slope <= 0.0:
            return edge
        if edge >= BRACKET_CAP:
            return None if slope >= FLAT_SLOPE else edge
        edge = min(2.0 * edge, BRACKET_CAP)


def _grow_left(g: Callable[[float], float], anchor: float) -> float | None:
    edge = min(-1.0, anchor - 1.0) if math.isfinite(anchor) else -1.0
    while True:
        step = max(1e-6 * abs(edge), 1e-8)
        slope = (g(edge) - g(edge + step)) / step
        if slope <= 0.0:
            return edge
        if edge <= -BRACKET_CAP:
            return None if slope >= FLAT_SLOPE else edge
        edge = max(2.0 * edge, -BRACKET_CAP)


def legendre_conjugate(
    f: Callable[[float], float],
    x: float,
    domain: tuple[float, float] = (-math.inf, math.inf),
    tol: float = OPT_TOL,
) -> float:
    """sup over the domain of ``x*t - f(t)`` for convex ``f``.

    Finite domain ends are used as-is.  An infinite end is replaced by a
    geometrically grown bracket; if the objective is still climbing at
    slope >= FLAT_SLOPE once the bracket reaches BRACKET_CAP, the
    supremum is reported as +inf (the conjugate is outside its effective
    domain).  Values of ``x`` within ~FLAT_SLOPE of the limiting slope
    of ``f`` resolve to the bracket-edge value instead.
    """
    lo, hi = domain
    if lo >= hi:
        raise ValueError("empty conjugation domain")

    def g(t: float) -> float:
        return x * t - f(t)

    if math.isinf(hi):
        grown = _grow_right(g, lo)
        if grown is None:
            return math.inf
        hi = grown
    if math.isinf(lo):
        grown = _grow_left(g, hi)
        if grown is None:
            return math.inf
        lo = grown
    if hi <= lo:  # degenerate after growth; single-point domain
        return g(lo)
    return maximize_concave_1d(g, lo, hi, tol)[1]


def _perron_2x2(m11: float, m12: float, m21: float, m22: float) -> float:
    # Cancellation-safe discriminant: (m11-m22)^2 + 4*m12*m21 instead of
    # tr^2 - 4*det, which cancels badly for near-equal eigenvalues.
    trace = m11 + m22
    disc = (m11 - m22) ** 2 + 4.0 * m12 * m21
    return 0.5 * (trace + math.sqrt(disc))


def perron_eigenvalue_2x2(matrix) -> float:
    """Largest eigenvalue of an irreducible nonnegative 2x2 matrix.

    ``matrix`` is any 2x2 nested sequence.  Raises ValueError when an
    entry is negative or an off-diagonal is zero (reducible).
    """
    (m11, m12), (m21, m22) = matrix
    entries = (float(m11), float(m12), float(m21), float(m22))
    if any(e < 0.0 or math.isnan(e) for e in entries):
        raise ValueError(f"matrix entries must be nonnegative, got {entries}")
    m11, m12, m21, m22 = entries
    if m12 <= 0.0 or m21 <= 0.0:
        raise ValueError("matrix is reducible: off-diagonal entries must be positive")
    return _perron_2x2(m11, m12, m21, m22)


def log_sum_exp(values: Iterable[float]) -> float:
    """log(sum(exp(v))) with max-shifting; empty input gives -inf."""
    vals = [v for v in values if v != -math.inf]
    if not vals:
        return -math.inf
    peak = max(vals)
    if math.isinf(peak):
        return peak
    return peak + math.log(math.fsum(math.exp(v - peak) for v in vals))
