"""The best constant lambda_n and its bounds.

Along the family x_1 = ... = x_{n-1} = t/n, x_n = 1 - (n-1)t/n the
objective reduces to ``n^2 / (1 - (n-1)/p_n(t))`` with

    p_n(t) = ((n-1) - (n-2)t) * (1 + 2t + ... + (n-1)t^(n-2)).

lambda_n is that expression at the unique critical point t_n of p_n in
(0, 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .errors import BadOrder, DescartesViolation, Unsupported
from .polyroot import Polynomial, RootBracket, bisect_unique_root, eval_horner, sign_changes

DEFAULT_TOL = 1e-14


def _check_order(n: int) -> None:
    if int(n) != n or n < 3:
        raise BadOrder(f"n must be an integer >= 3, got {n!r}")


def build_pn(n: int) -> Polynomial:
    _check_order(n)
    inner = [k + 1 for k in range(n - 1)]  # 1 + 2t + ... + (n-1)t^(n-2)
    out = [0] * n
    for k, c in enumerate(inner):
        out[k] += (n - 1) * c
        out[k + 1] -= (n - 2) * c
    return Polynomial(out)


def build_pn_prime(n: int) -> Polynomial:
    """p'_n from its closed-form coefficients k(n+k-1), k = 1..n-2."""
    _check_order(n)
    coeffs = [k * (n + k - 1) for k in range(1, n - 1)]
    coeffs.append(-(n - 2) * (n - 1) ** 2)
    return Polynomial(coeffs)


def pn_value(n: int, t):
    """p_n(t) in factored form; nonnegative on [0, 1] by construction."""
    acc = n - 1
    for k in range(n - 2, 0, -1):
        acc = acc * t + k
    return ((n - 1) - (n - 2) * t) * acc


def lambda_from_p(n: int, p_value: float) -> float:
    return n**2 / (1 - (n - 1) / p_value)


def solve_tn(n: int, tol: float = DEFAULT_TOL) -> RootBracket:
    dp = build_pn_prime(n)
    changes = sign_changes(dp)
    if changes != 1:
        raise DescartesViolation(f"p'_{n} has {changes} coefficient sign changes, expected 1")
    return bisect_unique_root(dp, 0.0, 1.0, tol)


@dataclass(frozen=True)
class BestConstantResult:
    n: int
    t_n: float
    t_bracket: RootBracket
    p_at_tn: float
    lambda_n: float
    lower_bound: float
    upper_bound: float
    improved_upper: float
    tol: float


def compute_lambda(n: int, tol: float = DEFAULT_TOL) -> BestConstantResult:
    bracket = solve_tn(n, tol)
    t_n = bracket.root_estimate
    p_at = pn_value(n, t_n)
    lower, upper = bounds_simple(n)
    return BestConstantResult(
        n=n,
        t_n=t_n,
        t_bracket=bracket,
        p_at_tn=p_at,
        lambda_n=lambda_from_p(n, p_at),
        lower_bound=lower,
        upper_bound=upper,
        improved_upper=improved_upper(n),
        tol=tol,
    )


def bounds_simple(n: int) -> tuple[float, float]:
    _check_order(n)
    return n**3 / (n - 1), n**3 / (n - 2)


def improved_upper(n: int) -> float:
    """Upper bound from the test point x_i = 1/(n+1), x_n = 2/(n+1)."""
    _check_order(n)
    # (n/(n+1))^n underflows nothing but loses digits for huge n; use exp/log1p
    r_n = math.exp(-n * math.log1p(1 / n))
    r_n2 = math.exp(-(n - 2) * math.log1p(1 / n))
    return (n + 1) ** 2 * (0.5 - r_n) / ((n + 1) / (2 * n - 1) - r_n2)


def tn_floor_check(n: int) -> tuple[float, bool, float]:
    """Return (p'_n(n/(n+1)), p'_n(n/(n+1)) >= -1e-12, bracketed factor).

    Both quantities are evaluated in exact rational arithmetic and only
    then rounded, so the n = 3 factor is exactly zero.
    """
    _check_order(n)
    q = Fraction(n, n + 1)
    value = eval_horner(build_pn_prime(n), q)
    factor = (1 + Fraction(1, n)) ** n - Fraction(8, 3) + Fraction(1, n) - Fraction(1, 3 * n * n)
    return float(value), value >= Fraction(-1, 10**12), float(factor)


# --- radical closed forms, n = 3..6 -----------------------------------------

_DPS = 40


def t5_closed_form() -> mpmath.mpf:
    with mpmath.workdps(_DPS):
        theta = mpmath.cbrt(8119 + 48 * mpmath.sqrt(22535))
        return (theta + 7 + 241 / theta) / 48


def t6_closed_form() -> mpmath.mpf:
    with mpmath.workdps(_DPS):
        psi = mpmath.cbrt(1473 + mpmath.sqrt(13712905))
        phi = mpmath.sqrt(-50 * psi + 481 + 11300 / psi)
        return (9 + phi + mpmath.sqrt(50 * psi + 962 - 11300 / psi + 47258 / phi)) / 100


def t4_closed_form() -> mpmath.mpf:
    with mpmath.workdps(_DPS):
        return (5 + mpmath.sqrt(97)) / 18


def lambda4_closed_form() -> mpmath.mpf:
    with mpmath.workdps(_DPS):
        return (582 * mpmath.sqrt(97) - 2054) / 121


def lambda5_alpha_form() -> mpmath.mpf:
    """The earlier conjectured expression for lambda_5 in terms of alpha."""
    with mpmath.workdps(_DPS):
        r = mpmath.sqrt(22535)
        alpha = mpmath.cbrt(8119 + 48 * r)
        return (
            (12933567 - 93093 * r) / 4135801 * alpha
            + (17887113 + 560211 * r) / 996728041 * alpha**2
            - mpmath.mpf(288017) / 17161
        )


def n5_equality_point() -> tuple[mpmath.mpf, mpmath.mpf]:
    """(x, 1 - 4x): the repeated and the large coordinate of the n = 5 extremal point."""
    with mpmath.workdps(_DPS):
        alpha = mpmath.cbrt(8119 + 48 * mpmath.sqrt(22535))
        x = alpha / 240 + 241 / (240 * alpha) + mpmath.mpf(7) / 240
        return x, 1 - 4 * x


def _lambda_at(n: int, t) -> mpmath.mpf:
    with mpmath.workdps(_DPS):
        return n**2 / (1 - (n - 1) / pn_value(n, mpmath.mpf(t)))


def closed_form_reference(n: int) -> float:
    if n == 3:
        return 25.0
    if n == 4:
        return float(lambda4_closed_form())
    if n == 5:
        return float(_lambda_at(5, t5_closed_form()))
    if n == 6:
        return float(_lambda_at(6, t6_closed_form()))
    raise Unsupported(f"no radical closed form for n={n}; supported: 3, 4, 5, 6")
