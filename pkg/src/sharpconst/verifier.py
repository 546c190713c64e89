"""Verification campaigns for the reciprocal-sum inequalities.

Every campaign evaluates a margin (left side minus right side, oriented so
that a valid inequality gives a nonnegative number) over a batch of points
and reduces it to a :class:`VerificationReport`. Margins are divided by
``max(1, |rhs|)`` unless a function says otherwise, and a report is
VIOLATED only when the worst normalized margin is below ``-MARGIN_TOL``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from decimal import Decimal
from typing import Any, Sequence

import numpy as np

from .errors import CrossCheckFailed, NonPositiveDenominator, NotPositive, OutOfRange, ResolutionTooSmall
from .simplex import (
    CENTROID_EPS,
    SimplexPoint,
    as_rows,
    eval_g_reduced_array,
    g_array,
    grid_array,
)

MARGIN_TOL = 1e-9
REDUCED_SCAN_POINTS = 1000
IDENTITY_RTOL = 1e-10


class Verdict(str, enum.Enum):
    HOLDS = "HOLDS"
    VIOLATED = "VIOLATED"
    INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class VerificationReport:
    inequality_id: str
    n: int
    parameter: float | None
    samples_tested: int
    min_margin: float
    argmin_witness: Any
    verdict: Verdict


@dataclass(frozen=True)
class OracleResult:
    n: int
    grid_resolution: int
    min_value: float
    argmin: SimplexPoint
    near_reduced_family: bool


def summarize(inequality_id, n, parameter, margins, rows, replay=None) -> VerificationReport:
    margins = np.asarray(margins, dtype=float)
    if margins.size == 0:
        raise ValueError("no samples to verify")
    if np.any(np.isnan(margins)):
        bad = int(np.argmax(np.isnan(margins)))
        return VerificationReport(inequality_id, n, parameter, margins.size, float("nan"),
                                  _witness(rows, bad, n), Verdict.INCONCLUSIVE)
    i = int(np.argmin(margins))
    worst = float(margins[i])
    witness = _witness(rows, i, n)
    if worst < -MARGIN_TOL:
        if replay is not None:
            again = replay(witness)
            if not again < -MARGIN_TOL:
                raise CrossCheckFailed(f"witness margin {worst!r} does not replay (got {again!r})")
        verdict = Verdict.VIOLATED
    else:
        verdict = Verdict.HOLDS
    return VerificationReport(inequality_id, n, parameter, int(margins.size), worst, witness, verdict)


def _witness(rows, i, n):
    if isinstance(rows, np.ndarray):
        return SimplexPoint(n, tuple(float(v) for v in rows[i]))
    return rows[i]


def _log_prod(x: np.ndarray) -> np.ndarray:
    return np.log(x).sum(axis=1)


def _normalized_rows(points) -> np.ndarray:
    x = as_rows(points)
    if np.any(x <= 0):
        raise NotPositive("all coordinates must be positive")
    return x / x.sum(axis=1, keepdims=True)


# --- main inequality: sum 1/x >= lam / (1 + n^(n-2) (lam - n^2) prod x) ---------


def _f_rhs_array(n: int, lam: float, x: np.ndarray) -> np.ndarray:
    den = 1 + (lam - n * n) * np.exp((n - 2) * math.log(n) + _log_prod(x))
    if np.any(den <= 0):
        raise NonPositiveDenominator("1 + n^(n-2)(lambda - n^2) prod x <= 0")
    return lam / den


def f_rhs(n: int, lam: float, p: SimplexPoint) -> float:
    if not lam > 0:
        raise ValueError(f"lambda must be positive, got {lam!r}")
    return float(_f_rhs_array(n, lam, as_rows(p))[0])


def ineq1_margins(n: int, lam: float, x: np.ndarray) -> np.ndarray:
    rhs = _f_rhs_array(n, lam, x)
    lhs = (1.0 / x).sum(axis=1)
    return (lhs - rhs) / np.maximum(1.0, np.abs(rhs))


def reduced_family_rows(n: int, t: np.ndarray) -> np.ndarray:
    """Rows (t/n, ..., t/n, 1 - (n-1)t/n), renormalized so they sum to 1."""
    t = np.asarray(t, dtype=float)
    x = np.repeat((t / n)[:, None], n, axis=1)
    x[:, -1] = 1 - (n - 1) * t / n
    return x / x.sum(axis=1, keepdims=True)


def reduced_scan_grid(points: int = REDUCED_SCAN_POINTS) -> np.ndarray:
    return np.arange(1, points + 1) / points


def check_ineq1(n: int, lam: float, points, include_reduced_scan: bool = False) -> VerificationReport:
    """The main inequality at ``points``, optionally plus a dense scan of the reduced family.

    Sampled points use the direct margin sum(1/x) - f_rhs. The reduced scan
    compares g against lambda instead, (g - lambda)/max(1, lambda), which has
    the same sign but is not damped near the centroid; this puts the witness
    of a too-large lambda at the extremal point rather than wherever the
    direct margin happens to be largest in absolute terms.
    """
    if not lam > 0:
        raise ValueError(f"lambda must be positive, got {lam!r}")
    blocks, margins = [], []
    if points is not None and len(points):
        x = _normalized_rows(points)
        blocks.append(x)
        margins.append(ineq1_margins(n, lam, x))
    if include_reduced_scan:
        t = reduced_scan_grid()
        x = reduced_family_rows(n, t)
        blocks.append(x)
        if n >= 3:
            margins.append((eval_g_reduced_array(n, t) - lam) / max(1.0, lam))
        else:
            margins.append(ineq1_margins(n, lam, x))
    return summarize("ineq1", n, lam, np.concatenate(margins), np.vstack(blocks),
                     replay=lambda w: ineq1_margins(n, lam, as_rows(w))[0])


def sym_poly_residual(n: int, lam: float, xs: Sequence[float]) -> float:
    """s1^n s_{n-1} + n^(n-2)(lambda - n^2) s_{n-1} s_n - lambda s1^(n-1) s_n, division free."""
    xs = [float(v) for v in xs]
    if len(xs) != n:
        raise ValueError(f"expected {n} values, got {len(xs)}")
    prefix = [1.0]
    for v in xs:
        prefix.append(prefix[-1] * v)
    suffix = [1.0]
    for v in reversed(xs):
        suffix.append(suffix[-1] * v)
    suffix.reverse()
    s1 = math.fsum(xs)
    s_nm1 = math.fsum(prefix[i] * suffix[i + 1] for i in range(n))
    s_n = prefix[-1]
    return s1**n * s_nm1 + n ** (n - 2) * (lam - n * n) * s_nm1 * s_n - lam * s1 ** (n - 1) * s_n


def brute_force_min_g(n: int, m: int) -> OracleResult:
    """Minimize g over every interior grid point with denominators m."""
    if n not in (3, 4, 5):
        raise ValueError(f"the grid oracle is limited to n in {{3, 4, 5}}, got {n}")
    if m < 4 * n:
        raise ResolutionTooSmall(f"grid resolution m={m} is below 4n={4 * n}")
    x = grid_array(n, m) / m
    keep = np.abs(x - 1.0 / n).max(axis=1) > CENTROID_EPS
    x = x[keep]
    if len(x) == 0:
        raise ResolutionTooSmall("no grid points besides the centroid")
    g = g_array(x)
    i = int(np.argmin(g))
    best = np.sort(x[i])
    near = bool(best[n - 2] - best[0] <= 1.0 / m + 1e-12)
    return OracleResult(n, m, float(g[i]), SimplexPoint(n, tuple(float(v) for v in x[i])), near)


# --- upper companions: sum 1/x <= nu + (n^2 - nu) / (n^n prod x) and
#     sum 1/x <= 1 / (n^(n-2) prod x) ------------------------------------------


def nu_best(n: int) -> float:
    return n * n - n**n / (n - 1) ** (n - 1)


def ineq4_margins(n: int, nu: float, x: np.ndarray) -> np.ndarray:
    inv_p = np.exp(-(n * math.log(n) + _log_prod(x)))
    rhs = nu + (n * n - nu) * inv_p
    lhs = (1.0 / x).sum(axis=1)
    return (rhs - lhs) / np.maximum(1.0, np.abs(rhs))


def opposite_family_rows(n: int) -> np.ndarray:
    """One small coordinate x, the other n-1 equal to (1-x)/(n-1).

    x runs over the uniform grid t/n plus a log-spaced sweep toward the
    boundary, where the sharpness of nu_n shows up.
    """
    xs = np.concatenate([reduced_scan_grid() / n, np.geomspace(1e-10, 1e-3, 200)])
    x = np.repeat(((1 - xs) / (n - 1))[:, None], n, axis=1)
    x[:, 0] = xs
    return x / x.sum(axis=1, keepdims=True)


def check_ineq4(n: int, nu: float, points, include_reduced_scan: bool = False) -> VerificationReport:
    blocks = []
    if points is not None and len(points):
        blocks.append(_normalized_rows(points))
    if include_reduced_scan:
        blocks.append(opposite_family_rows(n))
    x = np.vstack(blocks)
    return summarize("ineq4", n, nu, ineq4_margins(n, nu, x), x,
                   replay=lambda w: ineq4_margins(n, nu, as_rows(w))[0])


def ineq5_margins(n: int, x: np.ndarray) -> np.ndarray:
    rhs = np.exp(-((n - 2) * math.log(n) + _log_prod(x)))
    lhs = (1.0 / x).sum(axis=1)
    return (rhs - lhs) / np.maximum(1.0, np.abs(rhs))


def check_ineq5(n: int, points) -> VerificationReport:
    x = _normalized_rows(points)
    return summarize("ineq5", n, None, ineq5_margins(n, x), x,
                   replay=lambda w: ineq5_margins(n, as_rows(w))[0])


def appendix_polynomial(n: int, x: float) -> float:
    """(nx - 1)^2 ((n-2)(nx)^(n-3) + ... + 2(nx) + 1)."""
    u = n * x
    acc = 0.0
    for j in range(n - 2, 0, -1):
        acc = acc * u + j
    return (u - 1) ** 2 * acc


def appendix_sides_gap(n: int, x: float) -> float:
    """Right side minus left side of the parameter-free upper companion on the family (x, (1-x)/(n-1), ...)."""
    return ((n - 1) ** (n - 1) / (n ** (n - 2) * x * (1 - x) ** (n - 1))
            - 1 / x - (n - 1) ** 2 / (1 - x))


def appendix_reduced_residual(n: int, x: float) -> float:
    """The same gap in reduced polynomial form; cross-checked in sign against the raw sides."""
    if not 0 < x <= 1 / n:
        raise OutOfRange(f"x must lie in (0, 1/n], got {x!r}")
    res = appendix_polynomial(n, x)
    gap = appendix_sides_gap(n, x)
    scale = (n - 1) ** (n - 1) / (n ** (n - 2) * x * (1 - x) ** (n - 1))
    # both vanish only at x = 1/n; elsewhere they are positive together
    if abs(gap) > 1e-12 * scale and (res > 0) != (gap > 0):
        raise CrossCheckFailed(f"sign mismatch at n={n}, x={x}: residual {res}, sides gap {gap}")
    return res


# --- means --------------------------------------------------------------------


def _logs(xs) -> list[float]:
    out = []
    for v in xs:
        if isinstance(v, Decimal):
            if v <= 0:
                raise NotPositive(f"value {v} is not positive")
            out.append(float(v.ln()))
        else:
            v = float(v)
            if not v > 0:
                raise NotPositive(f"value {v} is not positive")
            out.append(math.log(v))
    return out


def _logsumexp(v: np.ndarray, axis=-1) -> np.ndarray:
    top = v.max(axis=axis, keepdims=True)
    return (top + np.log(np.exp(v - top).sum(axis=axis, keepdims=True))).squeeze(axis)


def log_means(logx: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """log A, log H, log G for rows of log-coordinates."""
    logx = np.atleast_2d(logx)
    n = logx.shape[1]
    log_a = _logsumexp(logx) - math.log(n)
    log_h = math.log(n) - _logsumexp(-logx)
    log_g = logx.mean(axis=1)
    return log_a, log_h, log_g


def means(xs: Sequence[float]) -> tuple[float, float, float]:
    logx = np.array(_logs(xs))
    la, lh, lg = (float(v[0]) for v in log_means(logx))
    a, h, g = math.exp(la), math.exp(lh), math.exp(lg)
    if not (a >= g * (1 - 1e-12) and g >= h * (1 - 1e-12)):
        raise CrossCheckFailed(f"mean chain A >= G >= H fails: {a}, {g}, {h}")
    return a, h, g


def ahg_margins(l: float, logx: np.ndarray) -> np.ndarray:
    """A^l H / G^(l+1) - 1 per row; scale free because both sides have degree l+1."""
    la, lh, lg = log_means(logx)
    return np.expm1(l * la + lh - (l + 1) * lg)


def ahg_margin(l: float, xs) -> float:
    return float(ahg_margins(l, np.array(_logs(xs)))[0])


def _ahg_family_logs(n: int, k: int) -> np.ndarray:
    row = np.zeros(n)
    row[-1] = -k * math.log(10)
    return row


def check_ahg(n: int, l: float, points=None) -> VerificationReport:
    """A^l H >= G^(l+1) on ``points`` when l >= n-1, else a counterexample hunt.

    For l < n-1 the family (1, ..., 1, x), x = 10^-k, is swept over
    k = 1..12 and, if that is not yet enough, over k = 24, 48, ... in log
    space. Witness coordinates are Decimals so that x below the float
    range stays exact.
    """
    if l >= n - 1:
        x = _normalized_rows(points)
        margins = ahg_margins(l, np.log(x))
        return summarize("ahg", n, l, margins, x, replay=lambda w: ahg_margin(l, w.coords))

    ks = list(range(1, 13))
    k = 12
    while k < 2**17:
        k *= 2
        ks.append(k)
    rows, margins = [], []
    for k in ks:
        m = float(ahg_margins(l, _ahg_family_logs(n, k)[None, :])[0])
        rows.append((Decimal(1),) * (n - 1) + (Decimal(f"1E-{k}"),))
        margins.append(m)
        if m < -MARGIN_TOL:
            break
    return summarize("ahg", n, l, margins, rows, replay=lambda w: ahg_margin(l, w))


# --- single-variable forms and identities ---------------------------------------------


def check_lower_bound_form(n: int, s: float) -> float:
    """n^2 (1 - s^n) / (s (1 - s^(n-1))) - n^3/(n-1), via geometric sums."""
    if not 0 < s < 1:
        raise OutOfRange(f"s must lie in (0, 1), got {s!r}")
    top = sum(s**k for k in range(n))
    bottom = sum(s**k for k in range(n - 1))
    return n * n * top / (s * bottom) - n**3 / (n - 1)


def _identity_check(lhs, rhs, scale, label):
    bad = np.abs(np.asarray(lhs) - np.asarray(rhs)) > IDENTITY_RTOL * np.maximum(1.0, np.asarray(scale))
    if np.any(bad):
        raise CrossCheckFailed(f"{label}: sides differ beyond {IDENTITY_RTOL} relative")


def sos_identity_n3(x1, x2, x3):
    """(s1^3 s2 + 48 s2 s3 - 25 s1^2 s3, its cyclic sum-of-squares form).

    Works elementwise on arrays. The tolerance scale is the size of the
    expanded terms, not of the (possibly tiny) difference.
    """
    s1 = x1 + x2 + x3
    s2 = x1 * x2 + x2 * x3 + x3 * x1
    s3 = x1 * x2 * x3
    terms = (s1**3 * s2, 48 * s2 * s3, 25 * s1**2 * s3)
    lhs = terms[0] + terms[1] - terms[2]
    rhs = (x1 * (x2 - x3) ** 2 * (3 * x1 - x2 - x3) ** 2
           + x2 * (x1 - x3) ** 2 * (3 * x2 - x1 - x3) ** 2
           + x3 * (x2 - x1) ** 2 * (3 * x3 - x2 - x1) ** 2)
    _identity_check(lhs, rhs, sum(abs(t) for t in terms), "n=3 SOS identity")
    return lhs, rhs


def quintic_form(v, a, b, c):
    """v^2 S3(a^5) - v(v+2) S6(a^4 b) + 2v S6(a^3 b^2) + (v+2)^2 S3(a^3 bc) - 4(v+1) S3(a b^2 c^2).

    S3 is the cyclic sum of 3 images, S6 the sum over all 6 permutations.
    Returns (value, sum of absolute term sizes).
    """
    s5 = a**5 + b**5 + c**5
    s41 = a**4 * (b + c) + b**4 * (a + c) + c**4 * (a + b)
    s32 = a**3 * (b * b + c * c) + b**3 * (a * a + c * c) + c**3 * (a * a + b * b)
    s311 = a * b * c * (a * a + b * b + c * c)
    s122 = a * b * c * (b * c + c * a + a * b)
    terms = (v * v * s5, v * (v + 2) * s41, 2 * v * s32, (v + 2) ** 2 * s311, 4 * (v + 1) * s122)
    value = terms[0] - terms[1] + terms[2] + terms[3] - terms[4]
    return value, sum(abs(t) for t in terms)


def sos_identity_quintic(v, x1, x2, x3):
    a, b, c = x2 + x3, x1 + x3, x1 + x2
    lhs, scale = quintic_form(v, a, b, c)
    rhs = (4 * x1 * (x2 - x3) ** 2 * (v * x1 - x2 - x3) ** 2
           + 4 * x2 * (x1 - x3) ** 2 * (v * x2 - x1 - x3) ** 2
           + 4 * x3 * (x2 - x1) ** 2 * (v * x3 - x2 - x1) ** 2)
    _identity_check(lhs, rhs, scale, f"quintic SOS identity (v={v})")
    return lhs, rhs
