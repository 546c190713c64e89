from fractions import Fraction

import mpmath
import pytest
import sympy

from sharpconst import bestconst
from sharpconst.bestconst import (
    bounds_simple,
    build_pn,
    build_pn_prime,
    closed_form_reference,
    compute_lambda,
    improved_upper,
    pn_value,
    solve_tn,
    tn_floor_check,
)
from sharpconst.errors import BadOrder, Unsupported
from sharpconst.polyroot import Polynomial, derivative, eval_horner, sign_changes
from sharpconst.simplex import eval_g_reduced

t = sympy.symbols("t")


def sympy_pn(n):
    expr = ((n - 1) - (n - 2) * t) * sum(k * t ** (k - 1) for k in range(1, n))
    return [int(c) for c in reversed(sympy.Poly(sympy.expand(expr), t).all_coeffs())]


@pytest.mark.parametrize("n, expected", [(3, [2, 3, -2]), (4, [3, 4, 5, -6])])
def test_build_pn_small(n, expected):
    assert build_pn(n) == Polynomial(expected)


@pytest.mark.parametrize("n", [3, 4, 5, 6, 9, 17])
def test_build_pn_matches_symbolic_expansion(n):
    assert list(build_pn(n).coeffs) == sympy_pn(n)
    assert build_pn(n).degree == n - 1


@pytest.mark.parametrize("n, expected", [(3, [3, -4]), (5, [5, 12, 21, -48]), (6, [6, 14, 24, 36, -100])])
def test_build_pn_prime_small(n, expected):
    assert build_pn_prime(n) == Polynomial(expected)


@pytest.mark.parametrize("n", range(3, 30))
def test_pn_prime_endpoint_values(n):
    dp = build_pn_prime(n)
    assert eval_horner(dp, 0) == n
    assert eval_horner(dp, 1) == Fraction(-n * (n - 1) * (n - 2), 6)


def test_bad_order():
    for fn in (build_pn, build_pn_prime, bounds_simple, improved_upper, tn_floor_check):
        with pytest.raises(BadOrder):
            fn(2)
    with pytest.raises(BadOrder):
        compute_lambda(2)


def test_pn_factored_equals_expanded():
    for n in (3, 5, 8, 20):
        for tv in (0.0, 0.3, 0.77, 1.0):
            assert pn_value(n, tv) == pytest.approx(eval_horner(build_pn(n), tv), rel=1e-13)
        assert pn_value(n, 1) == n * (n - 1) // 2


def test_solve_tn_closed_forms():
    assert solve_tn(3).root_estimate == 0.75
    assert solve_tn(4).root_estimate == pytest.approx(float(bestconst.t4_closed_form()), abs=1e-13)
    assert solve_tn(5).root_estimate == pytest.approx(0.8654450, abs=1e-6)
    assert solve_tn(5).root_estimate == pytest.approx(float(bestconst.t5_closed_form()), abs=1e-13)


def test_closed_form_roots_are_roots():
    with mpmath.workdps(40):
        t5 = bestconst.t5_closed_form()
        t6 = bestconst.t6_closed_form()
        assert abs(5 + 12 * t5 + 21 * t5**2 - 48 * t5**3) < mpmath.mpf(10) ** -30
        assert abs(6 + 14 * t6 + 24 * t6**2 + 36 * t6**3 - 100 * t6**4) < mpmath.mpf(10) ** -30


def test_compute_lambda_values():
    assert compute_lambda(3).lambda_n == pytest.approx(25, abs=1e-12)
    with mpmath.workdps(30):
        lam4 = (582 * mpmath.sqrt(97) - 2054) / 121
    assert compute_lambda(4).lambda_n == pytest.approx(float(lam4), rel=1e-12)
    assert compute_lambda(4).lambda_n == pytest.approx(30.3969855, abs=1e-6)
    assert compute_lambda(6).lambda_n == pytest.approx(52.358913, abs=1e-5)


def test_lambda4_is_not_the_printed_decimal():
    # the printed 30.423077 is the improved upper bound at n = 4, not lambda_4
    assert compute_lambda(4).lambda_n < 30.42
    assert improved_upper(4) == pytest.approx(30.423077, abs=1e-6)


def test_result_fields_consistent():
    r = compute_lambda(7)
    assert r.lower_bound <= r.lambda_n <= r.upper_bound
    assert r.lambda_n <= r.improved_upper
    assert 7 / 8 <= r.t_n < 1
    assert r.lambda_n == pytest.approx(49 / (1 - 6 / r.p_at_tn), rel=1e-15)
    assert r.t_bracket.width <= r.tol


@pytest.mark.parametrize("n, lo, hi", [
    (3, Fraction(27, 2), Fraction(27)),
    (4, Fraction(64, 3), Fraction(32)),
    (5, Fraction(125, 4), Fraction(125, 3)),
])
def test_bounds_simple(n, lo, hi):
    a, b = bounds_simple(n)
    assert a == pytest.approx(float(lo), rel=1e-15)
    assert b == pytest.approx(float(hi), rel=1e-15)


def _improved_exact(n):
    q = Fraction(n, n + 1)
    return (n + 1) ** 2 * (Fraction(1, 2) - q**n) / (Fraction(n + 1, 2 * n - 1) - q ** (n - 2))


def test_improved_upper_exact_values():
    assert _improved_exact(4) == Fraction(19775, 650)
    for n in (3, 4, 5, 10, 40):
        assert improved_upper(n) == pytest.approx(float(_improved_exact(n)), rel=1e-13)
    assert improved_upper(3) >= 25 - 1e-12
    assert improved_upper(10) < 125


@pytest.mark.parametrize("n", [3, 4, 5, 6, 10, 50, 200])
def test_improved_upper_is_g_at_the_test_point(n):
    assert improved_upper(n) == pytest.approx(eval_g_reduced(n, n / (n + 1)), rel=1e-12)


def test_tn_floor_factor():
    value, ok, factor = tn_floor_check(3)
    assert factor == 0.0 and value == 0.0 and ok
    _, ok, factor = tn_floor_check(4)
    assert factor == float(Fraction(5, 4) ** 4 - Fraction(8, 3) + Fraction(1, 4) - Fraction(1, 48))
    assert factor == 1 / 256
    for n in range(3, 26):
        v, ok, f = tn_floor_check(n)
        assert ok and f >= 0


def test_tn_floor_factorization_identity():
    for n in (4, 7, 12):
        value, _, factor = tn_floor_check(n)
        rhs = 3 * n * (n + 1) ** 2 * (n / (n + 1)) ** n * factor
        assert value == pytest.approx(rhs, rel=1e-12)


def test_closed_form_reference():
    assert closed_form_reference(3) == 25
    assert closed_form_reference(5) == pytest.approx(40.090307, abs=1e-6)
    assert closed_form_reference(6) == pytest.approx(52.358913, abs=1e-6)
    with pytest.raises(Unsupported):
        closed_form_reference(7)


def test_lambda5_both_expressions_agree():
    assert float(bestconst.lambda5_alpha_form()) == pytest.approx(closed_form_reference(5), rel=1e-14)


def test_n5_equality_point():
    x, x5 = bestconst.n5_equality_point()
    assert float(x) == pytest.approx(0.173, abs=5e-4)
    assert float(x5) == pytest.approx(0.308, abs=5e-4)
    assert float(5 * x) == pytest.approx(solve_tn(5).root_estimate, abs=1e-13)


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_engine_matches_closed_forms(n):
    lam = compute_lambda(n).lambda_n
    assert abs(lam - closed_form_reference(n)) <= 1e-9 * lam


def test_removable_singularity_value():
    for n in range(3, 12):
        assert bestconst.lambda_from_p(n, pn_value(n, 1)) == pytest.approx(n**3 / (n - 2), rel=1e-14)


@pytest.mark.parametrize("n", [3, 10, 100, 1000])
def test_descartes_and_derivative_consistency(n):
    dp = build_pn_prime(n)
    assert sign_changes(dp) == 1
    assert dp == derivative(build_pn(n))


def test_large_n_solves():
    r = compute_lambda(5000)
    assert r.lower_bound <= r.lambda_n <= r.upper_bound
