"""Orbit sweep kernels: the vectorized and analytic paths must agree with
plain pointwise iteration."""

import numpy as np
import pytest

from ndistal.kernels import (max_orbit_distance, min_orbit_distance,
                             orbit_max_matrix, orbit_min_matrix,
                             orbit_min_pairs, orbit_min_rows,
                             orbit_visit_matrix)
from ndistal.points import Annulus, OrbitIndex, Torus, word_point
from ndistal.systems import (Rotation, SkewTorus, annulus3, conjugate_system,
                             shift2)


def brute_min_matrix(sys, points, H):
    m = len(points)
    D = np.full((m, m), np.inf)
    for n in range(-H, H + 1):
        imgs = [sys.iterate(p, n) for p in points]
        for i in range(m):
            for j in range(m):
                D[i, j] = min(D[i, j], sys.dist(imgs[i], imgs[j]))
    return D


def brute_max_matrix(sys, points, H):
    m = len(points)
    D = np.zeros((m, m))
    for n in range(-H, H + 1):
        imgs = [sys.iterate(p, n) for p in points]
        for i in range(m):
            for j in range(m):
                D[i, j] = max(D[i, j], sys.dist(imgs[i], imgs[j]))
    return D


@pytest.mark.parametrize("make", [Rotation, SkewTorus, annulus3, shift2])
def test_orbit_min_matrix_matches_brute_force(make):
    sys = make()
    cloud = sys.sampler(3)
    pts = cloud.points[:8]
    got = orbit_min_matrix(sys, pts, 12)[0]
    want = brute_min_matrix(sys, pts, 12)
    assert np.allclose(got, want, atol=1e-9)


@pytest.mark.parametrize("make", [Rotation, annulus3, shift2])
def test_orbit_max_matrix_matches_brute_force(make):
    sys = make()
    pts = sys.sampler(3).points[:8]
    got = orbit_max_matrix(sys, pts, 12)
    want = brute_max_matrix(sys, pts, 12)
    assert np.allclose(got, want, atol=1e-9)


def test_pointwise_fallback_path():
    # conjugate systems have no vectorized state, exercising _pw_sweep
    base = Rotation(0.3)
    h = lambda p: Torus(p.x + 0.1, p.y)
    h_inv = lambda p: Torus(p.x - 0.1, p.y)
    sys = conjugate_system(base, h, h_inv)
    pts = [Torus(i / 7.0, 0.0) for i in range(7)]
    got = orbit_min_matrix(sys, pts, 10)[0]
    want = brute_min_matrix(sys, pts, 10)
    assert np.allclose(got, want, atol=1e-9)


def test_checkpoints_are_prefix_minima():
    sys = annulus3()
    pts = sys.sampler(3).points[:10]
    full, snaps = orbit_min_matrix(sys, pts, 40, checkpoints=(10, 20))
    assert set(snaps) == {10, 20}
    assert np.all(snaps[10] >= snaps[20] - 1e-15)
    assert np.all(snaps[20] >= full - 1e-15)
    assert np.allclose(snaps[10], brute_min_matrix(sys, pts, 10), atol=1e-9)


def test_orbit_min_rows_match_matrix():
    sys = SkewTorus()
    pts = sys.sampler(3).points[:9]
    M = orbit_min_matrix(sys, pts, 15)[0]
    rows = orbit_min_rows(sys, pts, [2, 5], 15)[0]
    assert np.allclose(rows[0], M[2], atol=1e-12)
    assert np.allclose(rows[1], M[5], atol=1e-12)


def test_orbit_min_pairs_elementwise():
    sys = Rotation()
    xs = [Torus(i / 5.0, 0.0) for i in range(5)]
    ys = [Torus((i + 1) / 7.0, 0.0) for i in range(5)]
    got = orbit_min_pairs(sys, xs, ys, 20)
    for i in range(5):
        assert got[i] == pytest.approx(
            min_orbit_distance(sys, xs[i], ys[i], 20), abs=1e-12)


def test_min_orbit_distance_examples():
    # equal first coordinates keep skew distance constant
    s = SkewTorus()
    assert min_orbit_distance(s, Torus(0, 0), Torus(0, 0.3), 50) == \
        pytest.approx(0.3)
    # wandering orbit point approaches the inner circle
    a = annulus3()
    assert min_orbit_distance(a, OrbitIndex(0), Annulus(0, 1), 5) <= 2.4e-10
    assert min_orbit_distance(a, OrbitIndex(0), OrbitIndex(0), 10) == 0.0


def test_min_orbit_distance_monotone_in_horizon():
    s = SkewTorus()
    x, y = Torus(0.1, 0.2), Torus(0.4, 0.9)
    vals = [min_orbit_distance(s, x, y, H) for H in (0, 5, 20, 80)]
    for a, b in zip(vals, vals[1:]):
        assert b <= a + 1e-15


def test_shift_analytic_distances():
    s = shift2()
    zero = word_point(())
    spike = word_point((1,), origin=6)
    # at time n the difference sits at index 6 - n, so d = 2^-|6-n|;
    # the max hits 2^0 = 1 at n = 6, the min drifts out backward
    assert max_orbit_distance(s, zero, spike, 10) == pytest.approx(1.0)
    assert min_orbit_distance(s, zero, spike, 10) == pytest.approx(2.0 ** -16)
    assert max_orbit_distance(s, zero, spike, 4) == pytest.approx(2.0 ** -2)
    assert min_orbit_distance(s, zero, spike, 4) == pytest.approx(2.0 ** -10)


def test_orbit_visit_matrix_matches_brute():
    sys = annulus3()
    pts = sys.sampler(4).points[:6]
    tgt = pts[:4]
    H = 15
    got = orbit_visit_matrix(sys, pts, tgt, H)
    m, t = len(pts), len(tgt)
    want = np.full((m, t), np.inf)
    for n in range(-H, H + 1):
        imgs = [sys.iterate(p, n) for p in pts]
        for i in range(m):
            for j in range(t):
                want[i, j] = min(want[i, j], sys.dist(imgs[i], tgt[j]))
    assert np.allclose(got, want, atol=1e-9)
