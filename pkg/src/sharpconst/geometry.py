"""Triangle corollaries of the n = 3 case.

Sides follow the usual labels: a = BC, b = CA, c = AB. Triangles are
realized with B at the origin and C on the positive x-axis. Most margins
are written through the Ravi variables p - a, p - b, p - c, which keeps
them rational in the sides and free of square roots.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import Degenerate, InteriorRequired
from .simplex import sample_array
from .verifier import VerificationReport, summarize

RAVI_MIN_RATIO = 1e-6


@dataclass(frozen=True)
class Triangle:
    a: float
    b: float
    c: float

    def __post_init__(self):
        a, b, c = self.a, self.b, self.c
        if not all(math.isfinite(v) and v > 0 for v in (a, b, c)):
            raise Degenerate(f"sides must be positive and finite, got {(a, b, c)}")
        if not (a + b > c and b + c > a and c + a > b):
            raise Degenerate(f"sides {(a, b, c)} violate the strict triangle inequality")

    @classmethod
    def from_ravi(cls, x1: float, x2: float, x3: float) -> "Triangle":
        return cls(x2 + x3, x1 + x3, x1 + x2)

    def ravi(self) -> tuple[float, float, float]:
        """(p - a, p - b, p - c)."""
        a, b, c = self.a, self.b, self.c
        return (b + c - a) / 2, (c + a - b) / 2, (a + b - c) / 2

    def scaled(self, k: float) -> "Triangle":
        return Triangle(k * self.a, k * self.b, k * self.c)


@dataclass(frozen=True)
class TriangleDerived:
    p: float
    area: float
    R: float
    r: float


@dataclass(frozen=True)
class CevianAreas:
    T1: float
    T2: float
    T3: float
    S1: float
    S2: float
    S3: float
    P1: float
    P2: float
    P3: float


def _area_kahan(a: float, b: float, c: float) -> float:
    # Heron in the cancellation-free ordering for a >= b >= c
    a, b, c = sorted((a, b, c), reverse=True)
    q = (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c))
    if not q > 0:
        raise Degenerate(f"zero area for sides {(a, b, c)}")
    return 0.25 * math.sqrt(q)


def derive(tri: Triangle) -> TriangleDerived:
    a, b, c = tri.a, tri.b, tri.c
    p = (a + b + c) / 2
    area = _area_kahan(a, b, c)
    return TriangleDerived(p=p, area=area, R=a * b * c / (4 * area), r=area / p)


def vertices(tri: Triangle) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(A, B, C) with B = (0, 0) and C = (a, 0)."""
    a, b, c = tri.a, tri.b, tri.c
    area = _area_kahan(a, b, c)
    ax = (a * a + c * c - b * b) / (2 * a)
    ay = 2 * area / a
    return np.array([ax, ay]), np.array([0.0, 0.0]), np.array([a, 0.0])


def euler_refined_margin(tri: Triangle, mu: float) -> float:
    """R/r - 2 - mu ((a-b)^2 + (b-c)^2 + (c-a)^2) / (a+b+c)^2."""
    a, b, c = tri.a, tri.b, tri.c
    x, y, z = tri.ravi()
    # R/r = abc / (4 (p-a)(p-b)(p-c))
    ratio = a * b * c / (4 * x * y * z)
    spread = ((a - b) ** 2 + (b - c) ** 2 + (c - a) ** 2) / (a + b + c) ** 2
    return ratio - 2 - mu * spread


def quintic_sides_margin(tri: Triangle) -> float:
    a, b, c = tri.a, tri.b, tri.c
    lhs = a**3 / (b + c - a) + b**3 / (a + c - b) + c**3 / (a + b - c) + 7 * (a * b + b * c + c * a)
    return lhs - 8 * (a * a + b * b + c * c)


def _p2_terms(tri: Triangle) -> tuple[float, float, float]:
    """(p^2, 16Rr, r^2) from rational expressions in the sides."""
    x, y, z = tri.ravi()
    p = x + y + z
    return p * p, 4 * tri.a * tri.b * tri.c / p, x * y * z / p


def p2_16Rr_margin(tri: Triangle) -> float:
    p2, rr16, r2 = _p2_terms(tri)
    return p2 - rr16 + 5 * r2


def ig_identity_residual(tri: Triangle) -> float:
    """| |IG|^2 - (p^2 + 5r^2 - 16Rr)/9 | with I and G located in the plane."""
    A, B, C = vertices(tri)
    a, b, c = tri.a, tri.b, tri.c
    incenter = (a * A + b * B + c * C) / (a + b + c)
    centroid = (A + B + C) / 3
    ig2 = float(np.sum((incenter - centroid) ** 2))
    p2, rr16, r2 = _p2_terms(tri)
    return abs(ig2 - (p2 + 5 * r2 - rr16) / 9)


def _line_intersection(p, d, q, e):
    """Intersection of p + s d and q + u e."""
    det = d[0] * (-e[1]) - d[1] * (-e[0])
    if det == 0:
        raise Degenerate("parallel lines in cevian construction")
    w = q - p
    s = (w[0] * (-e[1]) - w[1] * (-e[0])) / det
    return p + s * d


def _shoelace(p, q, r) -> float:
    return 0.5 * abs(float((q[0] - p[0]) * (r[1] - p[1]) - (r[0] - p[0]) * (q[1] - p[1])))


def cevian_points(tri: Triangle, m1: float, m2: float, m3: float) -> dict[str, np.ndarray]:
    """All named points of the construction, keyed by label."""
    if not (m1 > 0 and m2 > 0 and m3 > 0):
        raise InteriorRequired(f"barycentric weights must be positive, got {(m1, m2, m3)}")
    s = m1 + m2 + m3
    m1, m2, m3 = m1 / s, m2 / s, m3 / s
    A, B, C = vertices(tri)
    M = m1 * A + m2 * B + m3 * C
    A0 = (m2 * B + m3 * C) / (m2 + m3)
    B0 = (m1 * A + m3 * C) / (m1 + m3)
    C0 = (m1 * A + m2 * B) / (m1 + m2)
    # parallel to A0C0 meets BA at C1 and BC at A2, and so on around the triangle
    C1 = _line_intersection(M, C0 - A0, B, A - B)
    A2 = _line_intersection(M, C0 - A0, B, C - B)
    A1 = _line_intersection(M, A0 - B0, C, B - C)
    B2 = _line_intersection(M, A0 - B0, C, A - C)
    B1 = _line_intersection(M, C0 - B0, A, C - A)
    C2 = _line_intersection(M, C0 - B0, A, B - A)
    return dict(A=A, B=B, C=C, M=M, A0=A0, B0=B0, C0=C0,
                A1=A1, A2=A2, B1=B1, B2=B2, C1=C1, C2=C2)


def cevian_areas(tri: Triangle, m1: float, m2: float, m3: float) -> CevianAreas:
    q = cevian_points(tri, m1, m2, m3)
    M = q["M"]
    return CevianAreas(
        T1=_shoelace(M, q["C1"], q["B2"]),
        T2=_shoelace(M, q["A1"], q["C2"]),
        T3=_shoelace(M, q["B1"], q["A2"]),
        S1=_shoelace(M, q["A1"], q["A2"]),
        S2=_shoelace(M, q["B1"], q["B2"]),
        S3=_shoelace(M, q["C1"], q["C2"]),
        P1=_shoelace(q["A"], q["B2"], q["C1"]),
        P2=_shoelace(q["B"], q["C2"], q["A1"]),
        P3=_shoelace(q["C"], q["A2"], q["B1"]),
    )


def cevian_margin(areas: CevianAreas) -> float:
    s = areas
    return (s.P1 + s.P2 + s.P3) + 7 * (s.S1 + s.S2 + s.S3) - 8 * (s.T1 + s.T2 + s.T3)


# --- random triangles ------------------------------------------------------------


def sample_triangles(count: int, seed: int = 0) -> tuple[list[Triangle], int]:
    """Ravi-sampled triangles and the number of near-degenerate rejections.

    Ravi triples with min/max below RAVI_MIN_RATIO are dropped, so fewer
    than ``count`` triangles may come back.
    """
    x = sample_array(3, count, seed)
    ok = x.min(axis=1) / x.max(axis=1) >= RAVI_MIN_RATIO
    tris = [Triangle.from_ravi(*row) for row in x[ok].tolist()]
    return tris, int(count - ok.sum())


def sample_cevian_configs(count: int, seed: int = 0) -> tuple[list[tuple[Triangle, tuple]], int]:
    """(triangle, barycentric weights) pairs from one 6-coordinate simplex stream.

    Columns 0-2 give Ravi variables, columns 3-5 the weights of M. The
    near-degenerate guard applies to both triples.
    """
    x = sample_array(6, count, seed)
    ravi, w = x[:, :3], x[:, 3:]
    ok = (ravi.min(axis=1) / ravi.max(axis=1) >= RAVI_MIN_RATIO) & (w.min(axis=1) / w.max(axis=1) >= RAVI_MIN_RATIO)
    configs = [(Triangle.from_ravi(*r), tuple(m)) for r, m in zip(ravi[ok].tolist(), w[ok].tolist())]
    return configs, int(count - ok.sum())


def isosceles_family(points: int = 999) -> list[Triangle]:
    """Triangles (1, 1, c) for c on a uniform grid of (0, 2); contains the 3:3:2 shape."""
    return [Triangle(1.0, 1.0, 2 * k / (points + 1)) for k in range(1, points + 1)]


def _campaign(label, param, triangles, margin_fn, scale_fn) -> VerificationReport:
    margins = [margin_fn(t) / max(1.0, abs(scale_fn(t))) for t in triangles]
    return summarize(label, 3, param, margins, list(triangles),
                     replay=lambda t: margin_fn(t) / max(1.0, abs(scale_fn(t))))


def check_euler(mu: float, triangles, include_family_scan: bool = False) -> VerificationReport:
    tris = list(triangles) + (isosceles_family() if include_family_scan else [])
    return _campaign("euler", mu, tris, lambda t: euler_refined_margin(t, mu),
                     lambda t: 2 + mu * ((t.a - t.b) ** 2 + (t.b - t.c) ** 2 + (t.c - t.a) ** 2) / (t.a + t.b + t.c) ** 2)


def check_quintic(triangles) -> VerificationReport:
    return _campaign("quintic", None, list(triangles), quintic_sides_margin,
                     lambda t: 8 * (t.a**2 + t.b**2 + t.c**2))


def check_p2rr(triangles) -> VerificationReport:
    return _campaign("p2rr", None, list(triangles), p2_16Rr_margin, lambda t: _p2_terms(t)[1])


def check_ig(triangles) -> VerificationReport:
    """Margin is minus the identity residual, so any residual above tolerance is VIOLATED."""
    return _campaign("ig", None, list(triangles), lambda t: -ig_identity_residual(t), lambda t: _p2_terms(t)[0])


def _cevian_normalized_margin(config) -> float:
    tri, w = config
    areas = cevian_areas(tri, *w)
    return cevian_margin(areas) / max(1.0, 8 * (areas.T1 + areas.T2 + areas.T3))


def check_cevian(configs) -> VerificationReport:
    configs = list(configs)
    margins = [_cevian_normalized_margin(cfg) for cfg in configs]
    return summarize("cevian", 3, None, margins, configs, replay=_cevian_normalized_margin)
