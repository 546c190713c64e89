import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from sharpconst.errors import Degenerate, InteriorRequired
from sharpconst.geometry import (
    CevianAreas,
    Triangle,
    cevian_areas,
    cevian_margin,
    cevian_points,
    check_cevian,
    check_euler,
    check_ig,
    check_p2rr,
    check_quintic,
    derive,
    euler_refined_margin,
    ig_identity_residual,
    isosceles_family,
    p2_16Rr_margin,
    quintic_sides_margin,
    sample_cevian_configs,
    sample_triangles,
    vertices,
)
from sharpconst.verifier import Verdict, quintic_form

ravi = st.tuples(*[st.floats(0.01, 10)] * 3)


def derive_mp(a, b, c):
    """R and r from the law of cosines, independent of Heron."""
    with mpmath.workdps(40):
        a, b, c = (mpmath.mpf(v) for v in (a, b, c))
        angle_a = mpmath.acos((b * b + c * c - a * a) / (2 * b * c))
        R = a / (2 * mpmath.sin(angle_a))
        area = b * c * mpmath.sin(angle_a) / 2
        return float(R), float(2 * area / (a + b + c))


# --- derive ----------------------------------------------------------------------------


def test_derive_isosceles():
    d = derive(Triangle(3, 3, 2))
    assert d.R == pytest.approx(9 / (4 * math.sqrt(2)), rel=1e-14)
    assert d.r == pytest.approx(math.sqrt(2) / 2, rel=1e-14)


def test_derive_right_triangle():
    d = derive(Triangle(3, 4, 5))
    assert (d.p, d.area) == (6, 6)
    assert d.r == pytest.approx(1, rel=1e-15)
    assert d.R == pytest.approx(2.5, rel=1e-15)


def test_derive_equilateral():
    d = derive(Triangle(1, 1, 1))
    assert d.R / d.r == pytest.approx(2, rel=1e-14)


def test_invalid_triangles():
    for sides in [(1, 1, 2), (1, 2, 4), (0, 1, 1), (-1, 1, 1), (float("nan"), 1, 1)]:
        with pytest.raises(Degenerate):
            Triangle(*sides)


@settings(max_examples=200)
@given(ravi)
def test_derive_against_trig_oracle(x):
    tri = Triangle.from_ravi(*x)
    d = derive(tri)
    R, r = derive_mp(tri.a, tri.b, tri.c)
    assert d.R == pytest.approx(R, rel=1e-9)
    assert d.r == pytest.approx(r, rel=1e-9)
    assert d.p * d.r == pytest.approx(d.area, rel=1e-12)
    assert 4 * d.R * d.area == pytest.approx(tri.a * tri.b * tri.c, rel=1e-12)
    assert d.R >= 2 * d.r * (1 - 1e-12)


def test_vertices_realize_sides():
    A, B, C = vertices(Triangle(3, 4, 5))
    assert np.linalg.norm(C - B) == pytest.approx(3)
    assert np.linalg.norm(A - C) == pytest.approx(4)
    assert np.linalg.norm(B - A) == pytest.approx(5)


# --- margins: hand values ----------------------------------------------------------------


def test_euler_margin_values():
    assert euler_refined_margin(Triangle(3, 3, 2), 8) == pytest.approx(0, abs=1e-12)
    assert euler_refined_margin(Triangle(1, 1, 1), 8) == pytest.approx(0, abs=1e-12)
    assert euler_refined_margin(Triangle(1, 1, 1), 123) == pytest.approx(0, abs=1e-12)
    assert euler_refined_margin(Triangle(3, 4, 5), 8) == pytest.approx(1 / 6, rel=1e-14)


def test_quintic_margin_values():
    assert quintic_sides_margin(Triangle(1, 1, 1)) == pytest.approx(0, abs=1e-12)
    assert quintic_sides_margin(Triangle(3, 4, 5)) == pytest.approx(12, rel=1e-14)
    assert quintic_sides_margin(Triangle(3, 3, 2)) == pytest.approx(0, abs=1e-12)


def test_p2rr_margin_values():
    assert p2_16Rr_margin(Triangle(3, 4, 5)) == pytest.approx(1, rel=1e-14)
    assert p2_16Rr_margin(Triangle(1, 1, 1)) == pytest.approx(0, abs=1e-14)
    assert p2_16Rr_margin(Triangle(3, 3, 2)) == pytest.approx(0.5, rel=1e-14)


def test_p2rr_matches_derived_quantities():
    for sides in [(3, 4, 5), (2, 3, 4), (5, 5, 8)]:
        d = derive(Triangle(*sides))
        assert p2_16Rr_margin(Triangle(*sides)) == pytest.approx(d.p**2 - 16 * d.R * d.r + 5 * d.r**2, rel=1e-12)


def test_ig_right_triangle():
    tri = Triangle(3, 4, 5)
    A, B, C = vertices(tri)
    incenter = (3 * A + 4 * B + 5 * C) / 12
    centroid = (A + B + C) / 3
    assert float(np.sum((incenter - centroid) ** 2)) == pytest.approx(1 / 9, rel=1e-12)
    assert ig_identity_residual(tri) <= 1e-12 * 36
    assert ig_identity_residual(Triangle(1, 1, 1)) <= 1e-15


@settings(max_examples=300)
@given(ravi)
def test_ig_identity_random(x):
    tri = Triangle.from_ravi(*x)
    p = (tri.a + tri.b + tri.c) / 2
    assert ig_identity_residual(tri) <= 1e-12 * max(1, p * p)


# --- Ravi consistency and scaling ---------------------------------------------------------


@settings(max_examples=200)
@given(ravi)
def test_quintic_margin_is_ravi_quintic_form(x):
    tri = Triangle.from_ravi(*x)
    value, scale = quintic_form(3, tri.a, tri.b, tri.c)
    denom = (tri.b + tri.c - tri.a) * (tri.a + tri.c - tri.b) * (tri.a + tri.b - tri.c)
    assert quintic_sides_margin(tri) * denom == pytest.approx(value, rel=1e-10, abs=1e-10 * scale)


@pytest.mark.parametrize("k", [0.5, 3])
@pytest.mark.parametrize("sides", [(3, 4, 5), (2, 3, 4), (1, 1, 1.9)])
def test_scale_invariance(k, sides):
    tri = Triangle(*sides)
    big = tri.scaled(k)
    assert euler_refined_margin(big, 8) == pytest.approx(euler_refined_margin(tri, 8), rel=1e-12, abs=1e-14)
    assert p2_16Rr_margin(big) == pytest.approx(k**2 * p2_16Rr_margin(tri), rel=1e-12, abs=1e-14)
    assert quintic_sides_margin(big) == pytest.approx(k**2 * quintic_sides_margin(tri), rel=1e-12, abs=1e-12)
    assert ig_identity_residual(big) <= 1e-12 * max(1, k**2 * 36)
    w = (0.5, 0.3, 0.2)
    base, scaled = cevian_areas(tri, *w), cevian_areas(big, *w)
    total = sum(vars(base).values())
    for f in vars(base):
        assert getattr(scaled, f) == pytest.approx(k**2 * getattr(base, f), rel=1e-10, abs=1e-12 * total)


# --- cevian construction ------------------------------------------------------------------


def test_cevian_points_on_sides():
    tri = Triangle(3, 4, 5)
    q = cevian_points(tri, 0.6, 0.3, 0.1)

    def on_segment(p, u, v):
        cross = (v - u)[0] * (p - u)[1] - (v - u)[1] * (p - u)[0]
        s = np.dot(p - u, v - u) / np.dot(v - u, v - u)
        return abs(cross) < 1e-12 and 0 < s < 1

    for label, (u, v) in {"A1": "BC", "A2": "BC", "B1": "CA", "B2": "CA", "C1": "AB", "C2": "AB"}.items():
        assert on_segment(q[label], q[u], q[v]), label
    # each pair of new points lies on a parallel to a chord of cevian feet
    for p1, p2, f1, f2 in [("C1", "A2", "A0", "C0"), ("A1", "B2", "A0", "B0"), ("B1", "C2", "B0", "C0")]:
        d, e = q[p2] - q[p1], q[f2] - q[f1]
        assert abs(d[0] * e[1] - d[1] * e[0]) < 1e-12 * np.linalg.norm(d) * np.linalg.norm(e)


def test_cevian_right_triangle_positive():
    areas = cevian_areas(Triangle(3, 4, 5), 0.6, 0.3, 0.1)
    assert all(v > 0 for v in vars(areas).values())
    assert cevian_margin(areas) > 0


def test_cevian_margin_zero_areas():
    assert cevian_margin(CevianAreas(*[0.0] * 9)) == 0


def test_cevian_centroid_equality():
    assert abs(cevian_margin(cevian_areas(Triangle(1, 1, 1), 1, 1, 1))) <= 1e-12
    tris, _ = sample_triangles(100, seed=11)
    for tri in tris:
        areas = cevian_areas(tri, 1, 1, 1)
        scale = max(1.0, sum(vars(areas).values()))
        assert abs(cevian_margin(areas)) <= 1e-12 * scale


def test_cevian_requires_interior():
    with pytest.raises(InteriorRequired):
        cevian_areas(Triangle(3, 4, 5), 0.5, 0.5, 0)
    with pytest.raises(InteriorRequired):
        cevian_areas(Triangle(3, 4, 5), 1, -1, 1)


@settings(max_examples=100)
@given(ravi, st.tuples(*[st.floats(0.01, 1)] * 3))
def test_cevian_relabeling(x, w):
    tri = Triangle.from_ravi(*x)
    # A' = B, B' = C, C' = A
    rotated = Triangle(tri.b, tri.c, tri.a)
    one = cevian_areas(tri, *w)
    two = cevian_areas(rotated, w[1], w[2], w[0])
    scale = max(1.0, sum(vars(one).values()))
    for group in ("T", "S", "P"):
        u = sorted(getattr(one, f"{group}{i}") for i in (1, 2, 3))
        v = sorted(getattr(two, f"{group}{i}") for i in (1, 2, 3))
        assert np.allclose(u, v, rtol=1e-9, atol=1e-12 * scale)


# --- campaigns ----------------------------------------------------------------------------


def test_sample_triangles_guard():
    tris, rejected = sample_triangles(1000, seed=0)
    assert len(tris) + rejected == 1000
    for t in tris:
        x = t.ravi()
        assert min(x) / max(x) >= 1e-6 * (1 - 1e-9)


def test_campaigns_hold():
    tris, _ = sample_triangles(10_000, seed=1)
    assert check_euler(8, tris, include_family_scan=True).verdict is Verdict.HOLDS
    assert check_quintic(tris).verdict is Verdict.HOLDS
    assert check_p2rr(tris).verdict is Verdict.HOLDS
    assert check_ig(tris[:1000]).verdict is Verdict.HOLDS
    configs, _ = sample_cevian_configs(2000, seed=1)
    rep = check_cevian(configs)
    assert rep.verdict is Verdict.HOLDS and rep.min_margin >= -1e-10


def test_euler_mu_8_is_tight():
    rep = check_euler(8.01, [], include_family_scan=True)
    assert rep.verdict is Verdict.VIOLATED
    w = rep.argmin_witness
    assert w.c / w.a == pytest.approx(2 / 3, abs=0.02)
    assert euler_refined_margin(Triangle(3, 3, 2), 8.01) < 0


def test_isosceles_family_contains_tight_shape():
    fam = isosceles_family(999)
    assert len(fam) == 999
    assert min(abs(t.c - 2 / 3) for t in fam) <= 1e-3
