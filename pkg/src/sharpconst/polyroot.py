"""Dense univariate polynomials and certified bisection.

Coefficients are stored in ascending order, so ``coeffs[k]`` multiplies
``t**k``. Integer coefficients are kept as Python ints, which makes
coefficient comparisons exact; evaluation works for ints, floats and
``fractions.Fraction`` alike.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import NonFinite, NoSignChange


def _normalize(coeffs: Sequence) -> tuple:
    c = list(coeffs)
    # only exact zeros are dropped, Descartes counts depend on structural signs
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    if not c:
        c = [0]
    return tuple(c)


@dataclass(frozen=True)
class Polynomial:
    coeffs: tuple

    def __init__(self, coeffs: Sequence):
        object.__setattr__(self, "coeffs", _normalize(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return self.coeffs == (0,)

    def __call__(self, t):
        return eval_horner(self, t)

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Polynomial({list(self.coeffs)!r})"


@dataclass(frozen=True)
class RootBracket:
    """Bracket around a sign change of a polynomial.

    A zero-width bracket (``lo == hi``) means the midpoint evaluated to
    exactly zero; both signs are then 0.
    """

    lo: float
    hi: float
    root_estimate: float
    width: float
    iterations: int
    sign_lo: int
    sign_hi: int


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def eval_horner(p: Polynomial, t):
    acc = p.coeffs[-1]
    for c in reversed(p.coeffs[:-1]):
        acc = acc * t + c
    return acc


def derivative(p: Polynomial) -> Polynomial:
    if p.degree == 0:
        return Polynomial([0])
    return Polynomial([k * c for k, c in enumerate(p.coeffs) if k > 0])


def antiderivative(p: Polynomial, constant=0) -> Polynomial:
    """Formal integral with the given constant term.

    Coefficients become Fractions when they do not divide evenly, so the
    round trip through :func:`derivative` is exact for rational input.
    """
    from fractions import Fraction

    out = [constant]
    for k, c in enumerate(p.coeffs):
        q = Fraction(c) / (k + 1) if not isinstance(c, float) else c / (k + 1)
        if isinstance(q, Fraction) and q.denominator == 1:
            q = q.numerator
        out.append(q)
    return Polynomial(out)


def sign_changes(p: Polynomial) -> int:
    signs = [_sign(c) for c in p.coeffs if c != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def bisect_unique_root(p: Polynomial, lo: float, hi: float, tol: float) -> RootBracket:
    """Bisect ``p`` on ``[lo, hi]`` until the bracket is no wider than ``tol``.

    Pure bisection: every step re-evaluates the sign at the midpoint, so
    the returned bracket always straddles a sign change. If the interval
    can no longer be split in floating point the loop stops early with the
    tightest representable bracket.
    """
    if not tol > 0:
        raise ValueError(f"tol must be positive, got {tol!r}")
    lo, hi = float(lo), float(hi)
    if lo > hi:
        lo, hi = hi, lo
    f_lo, f_hi = float(eval_horner(p, lo)), float(eval_horner(p, hi))
    if not (math.isfinite(f_lo) and math.isfinite(f_hi)):
        raise NonFinite(f"non-finite endpoint value: p({lo})={f_lo}, p({hi})={f_hi}")
    s_lo, s_hi = _sign(f_lo), _sign(f_hi)
    if s_lo * s_hi >= 0:
        raise NoSignChange(f"p({lo})={f_lo} and p({hi})={f_hi} do not have opposite signs")

    iterations = 0
    while hi - lo > tol:
        mid = lo + (hi - lo) / 2
        if mid <= lo or mid >= hi:
            break
        iterations += 1
        f_mid = float(eval_horner(p, mid))
        if not math.isfinite(f_mid):
            raise NonFinite(f"p({mid}) = {f_mid}")
        s_mid = _sign(f_mid)
        if s_mid == 0:
            return RootBracket(mid, mid, mid, 0.0, iterations, 0, 0)
        if s_mid == s_lo:
            lo = mid
        else:
            hi = mid
    return RootBracket(lo, hi, lo + (hi - lo) / 2, hi - lo, iterations, s_lo, s_hi)


def max_bisection_iterations(lo: float, hi: float, tol: float) -> int:
    return math.ceil(math.log2((hi - lo) / tol)) + 1
