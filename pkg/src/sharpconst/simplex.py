"""Points of the open unit simplex and the objective g.

g(x) = n^2 (1 - n^n prod x) / (n^2 / sum(1/x) - n^n prod x)

is the largest lambda for which the reciprocal-sum inequality holds at x.
Both numerator and denominator vanish to second order at the centroid,
so the array kernels below rewrite everything in terms of the centered
relative deviations d_i = x_i / mean(x) - 1 before subtracting.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .bestconst import pn_value
from .errors import (
    AtCentroid,
    BadSum,
    DegenerateDirection,
    NonPositiveDenominator,
    NotInterior,
    NotPositive,
    OutOfRange,
    ResolutionTooSmall,
)

CENTROID_EPS = 1e-9
MIN_COORD = 1e-12
SUM_TOL = 1e-12
BAD_SUM_TOL = 1e-6


@dataclass(frozen=True)
class SimplexPoint:
    n: int
    coords: tuple[float, ...]

    @property
    def is_centroid(self) -> bool:
        return max(abs(c - 1.0 / self.n) for c in self.coords) <= CENTROID_EPS

    def as_array(self) -> np.ndarray:
        return np.asarray(self.coords, dtype=float)


def make_point(coords: Iterable[float]) -> SimplexPoint:
    xs = [float(c) for c in coords]
    if len(xs) < 2:
        raise ValueError("a simplex point needs at least 2 coordinates")
    if not all(math.isfinite(c) for c in xs):
        raise ValueError(f"non-finite coordinate in {xs}")
    if min(xs) <= 0:
        raise NotInterior(f"coordinates must be positive, got {xs}")
    s = math.fsum(xs)
    if abs(s - 1) > BAD_SUM_TOL:
        raise BadSum(f"coordinates sum to {s!r}, expected 1")
    xs = [c / s for c in xs]
    if min(xs) < MIN_COORD:
        raise NotInterior(f"coordinate {min(xs)!r} is below {MIN_COORD}")
    return SimplexPoint(len(xs), tuple(xs))


def as_rows(points) -> np.ndarray:
    """Stack SimplexPoints, tuples or an array into a 2-D float array."""
    if isinstance(points, np.ndarray):
        arr = points
    elif isinstance(points, SimplexPoint):
        arr = points.as_array()
    else:
        arr = np.array([p.coords if isinstance(p, SimplexPoint) else p for p in points], dtype=float)
    return np.atleast_2d(np.asarray(arr, dtype=float))


# --- sampling ----------------------------------------------------------------


def sample_array(n: int, count: int, seed: int = 0, start: int = 0) -> np.ndarray:
    """Rows ``start .. start+count-1`` of the uniform simplex stream for ``seed``.

    Each row consumes exactly n doubles of a Philox stream, drawn as
    exponentials by inverse transform and normalized by their sum. Row i
    is therefore a function of (seed, n, i) alone; any slice of the
    stream can be regenerated independently.
    """
    if n < 2 or count < 1:
        raise ValueError(f"need n >= 2 and count >= 1, got n={n}, count={count}")
    bg = np.random.Philox(key=seed)
    skip = start * n
    # Philox yields 4 words per counter step
    bg.advance(skip // 4)
    gen = np.random.Generator(bg)
    if skip % 4:
        gen.random(skip % 4)
    u = gen.random((count, n))
    e = -np.log1p(-u)
    return e / e.sum(axis=1, keepdims=True)


def sample_random(n: int, count: int, seed: int = 0) -> list[SimplexPoint]:
    return [SimplexPoint(n, tuple(row)) for row in sample_array(n, count, seed).tolist()]


def grid_array(n: int, m: int) -> np.ndarray:
    """Integer compositions (k_1..k_n) of m into positive parts, lexicographic."""
    if m < n:
        raise ResolutionTooSmall(f"grid resolution m={m} is smaller than n={n}")
    bars = np.array(list(itertools.combinations(range(1, m), n - 1)), dtype=np.int64)
    bars = bars.reshape(-1, n - 1)
    edges = np.hstack([np.zeros((len(bars), 1), np.int64), bars, np.full((len(bars), 1), m, np.int64)])
    return np.diff(edges, axis=1)


def grid_points(n: int, m: int) -> list[SimplexPoint]:
    return [SimplexPoint(n, tuple(row)) for row in (grid_array(n, m) / m).tolist()]


# --- the objective -----------------------------------------------------------


def _deviations(x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    s = x.sum(axis=1)
    d = x / (s / x.shape[1])[:, None] - 1.0
    d -= d.mean(axis=1, keepdims=True)
    return s, d


def _gap_terms(d: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(1 - prod(1+d), sum(1/(1+d)) - n) for centered deviations d, both >= 0.

    Written so that the first-order terms cancel analytically.
    """
    prod_gap = -np.expm1(np.log1p(d).sum(axis=1))
    recip_gap = (d * d / (1.0 + d)).sum(axis=1) - d.sum(axis=1)
    return prod_gap, recip_gap


def g_array(x: np.ndarray) -> np.ndarray:
    """Vectorized g over rows of x (rows need not be normalized)."""
    x = as_rows(x)
    n = x.shape[1]
    _, d = _deviations(x)
    a, c = _gap_terms(d)
    # numerator n^2 a, denominator n/(n+c) - (1 - a) = a - c/(n+c)
    den = a - c / (n + c)
    with np.errstate(divide="ignore", invalid="ignore"):
        return n * n * a / den


def g_denominator_array(x: np.ndarray) -> np.ndarray:
    x = as_rows(x)
    n = x.shape[1]
    _, d = _deviations(x)
    a, c = _gap_terms(d)
    return a - c / (n + c)


def eval_g(p: SimplexPoint) -> float:
    if p.is_centroid:
        raise AtCentroid(f"g is not evaluated within {CENTROID_EPS} of the centroid; its limit is n^3/(n-2)")
    den = g_denominator_array(p.as_array())[0]
    if not den > 0:
        raise NonPositiveDenominator(f"denominator of g is {den!r} at {p.coords}")
    return float(g_array(p.as_array())[0])


def reduced_point(n: int, t: float) -> SimplexPoint:
    x = t / n
    return SimplexPoint(n, (x,) * (n - 1) + (1 - (n - 1) * x,))


def eval_g_reduced(n: int, t: float) -> float:
    if not 0 < t <= 1:
        raise OutOfRange(f"t must lie in (0, 1], got {t!r}")
    return n * n / (1 - (n - 1) / pn_value(n, t))


def eval_g_reduced_array(n: int, t: np.ndarray) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    if np.any(t <= 0) or np.any(t > 1):
        raise OutOfRange("t must lie in (0, 1]")
    return n * n / (1 - (n - 1) / pn_value(n, t))


def consistency_reduced_vs_full(n: int, t: float) -> float:
    """Relative gap between the full and the reduced evaluation of g."""
    full = eval_g(reduced_point(n, t))
    red = eval_g_reduced(n, t)
    return abs(full - red) / abs(red)


def lemma1_ratio(n: int, x: float, gammas: Sequence[float], t: float) -> float:
    """(sum x_i - n^2/sum(1/x_i)) / ((sum x_i)^n - n^n prod x_i) at x_i = x + gamma_i t.

    Tends to 2/(n^n x^(n-1)) as t -> 0.
    """
    g = np.asarray(gammas, dtype=float)
    if g.shape != (n,):
        raise ValueError(f"expected {n} direction components, got {g.shape}")
    if np.all(g == g[0]):
        raise DegenerateDirection("all gamma_i are equal; the denominator vanishes identically")
    xs = x + g * t
    if np.any(xs <= 0):
        raise NotPositive(f"x + gamma*t must be positive, got {xs}")
    s, d = _deviations(xs[None, :])
    a, c = _gap_terms(d)
    s = s[0]
    # numerator s*c/(n+c), denominator s^n * a
    return float(c[0] / (n + c[0]) / (s ** (n - 1) * a[0]))


def lemma1_limit(n: int, x: float) -> float:
    return 2.0 / (n**n * x ** (n - 1))
