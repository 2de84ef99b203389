import math

import numpy as np
import pytest

from specset.geometry import Disk, Domain
from specset.lemma import two_disk_domain
from specset.numrange import (convex_domain_contains_W, enclosing_disk, hausdorff_support,
                              minimal_enclosing_circle, numerical_range_boundary, support_point,
                              NRBoundary)

from conftest import random_complex


def ellipse_oracle(T):
    """Elliptical range theorem for 2x2 T: (focal sum, support function, eigenvalues)."""
    lam = np.linalg.eigvals(T)
    b = 0.5 * math.sqrt(max(np.trace(T.conj().T @ T).real - np.sum(np.abs(lam) ** 2), 0.0))
    c = abs(lam[0] - lam[1]) / 2
    a = math.hypot(b, c)
    mid = lam.mean()
    u = (lam[0] - lam[1]) / (2 * c) if c > 0 else 1.0

    def support(theta):
        v = np.exp(1j * theta) * u
        return np.real(np.exp(1j * theta) * mid) + np.hypot(v.real * a, v.imag * b)

    def on_curve(p):
        return abs(abs(p - lam[0]) + abs(p - lam[1]) - 2 * a)

    return support, on_curve


def test_support_point_examples():
    D = np.diag([0.0, 1.0])
    assert support_point(D, 0) == pytest.approx((1.0, 1.0))
    s, p = support_point(D, math.pi)
    assert s == pytest.approx(0.0, abs=1e-15) and p == pytest.approx(0, abs=1e-15)
    T = np.array([[1, 1], [0, 0]])
    s, p = support_point(T, 0)
    assert s == pytest.approx((1 + math.sqrt(2)) / 2, rel=1e-14)
    assert p.real == pytest.approx(s, abs=1e-9)


def test_boundary_matches_support_point(rng):
    T = random_complex(rng, 4, 4)
    bd = numerical_range_boundary(T, 16)
    for t, s, p in zip(bd.theta, bd.support, bd.points):
        s2, p2 = support_point(T, t)
        assert s == pytest.approx(s2, abs=1e-12)
        assert (np.exp(1j * t) * p).real == pytest.approx(s, abs=1e-9)


def test_nilpotent_circle():
    bd = numerical_range_boundary([[0, 1], [0, 0]], 360)
    assert np.abs(np.abs(bd.points) - 0.5).max() <= 1e-8


def test_sharp_T_ellipse():
    T = np.array([[1, 1], [0, 0]], dtype=complex)
    support, on_curve = ellipse_oracle(T)
    bd = numerical_range_boundary(T, 360)
    assert max(on_curve(p) for p in bd.points) <= 1e-8
    assert hausdorff_support(bd.support, support(bd.theta)) <= 1e-8
    # foci 0, 1 and minor semi-axis 1/2
    assert (bd.points.imag.max()) == pytest.approx(0.5, abs=1e-4)


def test_degenerate_segment():
    bd = numerical_range_boundary(np.diag([0.0, 1.0]), 64)
    assert np.abs(bd.points.imag).max() <= 1e-15
    assert bd.points.real.min() == pytest.approx(0, abs=1e-15)
    assert bd.points.real.max() == pytest.approx(1)


def test_random_2x2_against_ellipse_oracle(rng):
    for _ in range(50):
        T = random_complex(rng, 2, 2)
        support, on_curve = ellipse_oracle(T)
        bd = numerical_range_boundary(T, 720)
        assert max(on_curve(p) for p in bd.points) <= 1e-6
        assert hausdorff_support(bd.support, support(bd.theta)) <= 1e-6


def test_normal_matrix_hull(rng):
    for n in range(1, 7):
        Q, _ = np.linalg.qr(random_complex(rng, n, n))
        lam = random_complex(rng, n)
        T = Q @ np.diag(lam) @ Q.conj().T
        bd = numerical_range_boundary(T, 720)
        hull_support = np.max(np.real(np.exp(1j * bd.theta)[:, None] * lam[None, :]), axis=1)
        assert hausdorff_support(bd.support, hull_support) <= 1e-6


def test_support_self_consistency(rng):
    T = random_complex(rng, 5, 5)
    bd = numerical_range_boundary(T, 720)
    proj = np.real(np.exp(1j * bd.theta)[:, None] * bd.points[None, :])
    assert np.all(proj.max(axis=1) <= bd.support + 1e-9)


def test_translation_covariance(rng):
    T = random_complex(rng, 4, 4)
    c = 0.7 - 1.3j
    b1 = numerical_range_boundary(T, 90)
    b2 = numerical_range_boundary(T + c * np.eye(4), 90)
    assert np.abs(b2.points - (b1.points + c)).max() <= 1e-9


def _bd(points):
    points = np.asarray(points, dtype=complex)
    return NRBoundary(np.zeros(len(points)), np.zeros(len(points)), points)


def test_enclosing_disk_examples():
    circ = 0.5 * np.exp(2j * np.pi * np.arange(360) / 360)
    d = enclosing_disk(_bd(circ), 0.1)
    assert abs(d.center) <= 1e-9 and d.radius == pytest.approx(0.6, abs=1e-9)
    d = enclosing_disk(_bd([1 + 1j] * 5), 0.25)
    assert d.center == 1 + 1j and d.radius == 0.25
    d = enclosing_disk(_bd(np.linspace(0, 1, 11)), 0.0)
    assert d.center == pytest.approx(0.5) and d.radius == pytest.approx(0.5)


def test_min_circle_bruteforce(rng):
    # oracle: the minimal circle is determined by 2 or 3 of the points
    for _ in range(10):
        pts = random_complex(rng, 12)
        c, r = minimal_enclosing_circle(pts)
        assert np.abs(pts - c).max() <= r * (1 + 1e-12)
        best = np.inf
        for i in range(12):
            for j in range(i + 1, 12):
                cc = 0.5 * (pts[i] + pts[j])
                rr = abs(pts[i] - cc)
                if np.abs(pts - cc).max() <= rr * (1 + 1e-12):
                    best = min(best, rr)
                for k in range(j + 1, 12):
                    a, b, e = pts[i], pts[j], pts[k]
                    M = np.array([[2 * (b - a).real, 2 * (b - a).imag],
                                  [2 * (e - a).real, 2 * (e - a).imag]])
                    rhs = [abs(b) ** 2 - abs(a) ** 2, abs(e) ** 2 - abs(a) ** 2]
                    x, y = np.linalg.solve(M, rhs)
                    cc = complex(x, y)
                    rr = abs(a - cc)
                    if np.abs(pts - cc).max() <= rr * (1 + 1e-12):
                        best = min(best, rr)
        assert r == pytest.approx(best, rel=1e-10)


def test_enclosing_disk_clearance(rng):
    T = random_complex(rng, 5, 5)
    bd = numerical_range_boundary(T, 720)
    d = enclosing_disk(bd, 0.05)
    assert np.all(d.radius - np.abs(bd.points - d.center) >= 0.05 * (1 - 1e-9))


def test_convex_containment_examples():
    T = np.array([[1, 1], [0, 0]])
    bd = numerical_range_boundary(T, 360)
    assert convex_domain_contains_W(Domain((Disk(0.5, 2),)), bd, 0.1)
    with pytest.raises(ValueError):
        convex_domain_contains_W(two_disk_domain(), bd)
    assert not convex_domain_contains_W(Domain((Disk(0, 0.1),)),
                                        numerical_range_boundary(np.diag([0.0, 1.0]), 64))


def test_csv_output():
    bd = numerical_range_boundary(np.diag([0.0, 1.0]), 8)
    lines = bd.to_csv().strip().splitlines()
    assert lines[0] == "theta,support,re,im"
    assert len(lines) == 9
    t, s, re, im = map(float, lines[1].split(","))
    assert (t, s, re) == (0.0, 1.0, 1.0)
