"""Periodic points, return profiles, almost periodicity, minimal subsystem
clustering, transitivity, dynamical balls and expansivity."""

import itertools
import math

import numpy as np
import pytest

from ndistal.equicont import r_set
from ndistal.points import (OrbitIndex, PointCloud, Torus, periodic_point,
                            word_point)
from ndistal.structure import (almost_periodic_verdict, default_gap_bound,
                               dynamical_ball, expansivity_probe,
                               minimal_subsystems, periodic_points,
                               prop_3_2_audit, return_profile,
                               theorem_3_5_audit, transitive_check)
from ndistal.systems import (IdentityTorus, Rotation, SkewTorus, annulus3,
                             annulusN, conjugate_system, shift2)

ANNULUS_GAP = lambda d: int(np.ceil(16.0 / d))


# ---------------------------------------------------------------------------
# periodic points
# ---------------------------------------------------------------------------

def test_identity_everything_period_one():
    s = IdentityTorus()
    cloud = s.sampler(8)
    found = periodic_points(s, cloud, T_max=5)
    assert len(found) == len(cloud)
    assert all(T == 1 for _, T in found)


def smallest_period(bits):
    n = len(bits)
    for T in range(1, n + 1):
        if n % T == 0 and bits == bits[T:] + bits[:T]:
            return T
    return n


@pytest.mark.parametrize("n", [1, 2, 3, 5, 8, 12])
def test_shift_periodic_counts_match_word_enumeration(n):
    s = shift2()
    cloud = s.periodic_cloud(n)
    found = periodic_points(s, cloud, T_max=n)
    assert len(found) == 2 ** n
    got = sorted(T for _, T in found)
    want = sorted(smallest_period(list(bits))
                  for bits in itertools.product((0, 1), repeat=n))
    assert got == want


def test_irrational_rotation_has_no_periodic_points():
    s = Rotation()
    cloud = s.sampler(32)
    assert periodic_points(s, cloud, T_max=50) == []
    # cross-check the direct scan the claim rests on
    alpha = s.alpha
    worst = min(min((T * alpha) % 1.0, 1.0 - (T * alpha) % 1.0)
                for T in range(1, 51))
    assert worst > 1e-2


def test_periodic_detection_conjugacy_stable():
    s = Rotation()
    cloud = s.sampler(16)
    conj = conjugate_system(s, s.step, s.step_inv)
    image = PointCloud(tuple(s.step(p) for p in cloud.points),
                       cloud.provenance, conj.id)
    a = sorted(T for _, T in periodic_points(s, cloud, T_max=20))
    b = sorted(T for _, T in periodic_points(conj, image, T_max=20))
    assert a == b


# ---------------------------------------------------------------------------
# return profiles and almost periodicity
# ---------------------------------------------------------------------------

def test_rotation_returns_are_syndetic():
    s = Rotation()
    prof = return_profile(s, Torus(0.3, 0.7), delta=0.1, H=500)
    assert prof.max_gap is not None
    assert prof.max_gap <= 10
    assert all(-500 <= t <= 500 for t in prof.return_times)
    assert 0 in prof.return_times


def test_identity_returns_every_step():
    s = IdentityTorus()
    prof = return_profile(s, Torus(0.1, 0.2), delta=0.05, H=50)
    assert len(prof.return_times) == 101
    assert prof.max_gap == 1


def test_wandering_annulus_point_stops_returning():
    s = annulus3()
    prof = return_profile(s, OrbitIndex(0, 0), delta=0.1, H=500)
    assert prof.max_gap is None or prof.max_gap > default_gap_bound(0.1)


def test_almost_periodic_verdicts():
    s = annulus3()
    assert almost_periodic_verdict(s, s.sampler(8)[0], gap_bound=ANNULUS_GAP)
    assert not almost_periodic_verdict(s, OrbitIndex(0, 0),
                                       gap_bound=ANNULUS_GAP)
    r = Rotation()
    assert almost_periodic_verdict(r, Torus(0.4, 0.9))
    assert almost_periodic_verdict(shift2(), word_point(()))


# ---------------------------------------------------------------------------
# minimal subsystems and transitivity
# ---------------------------------------------------------------------------

def test_annulus3_two_minimal_circles():
    s = annulus3()
    cloud = s.sampler(128)
    clusters = minimal_subsystems(s, cloud, gap_bound=ANNULUS_GAP)
    assert len(clusters) == 2
    sizes = sorted(len(c.indices) for c in clusters)
    assert sizes == [128, 128]
    # the clusters are exactly the two circles, no orbit points
    radii = [{round(math.hypot(*s.embed(cloud[i])), 6) for i in c.indices}
             for c in clusters]
    assert sorted(radii) == [{1.0}, {2.0}]


def test_annulusN_still_two_minimal_circles():
    s = annulusN(N=5)
    cloud = s.sampler(64)
    clusters = minimal_subsystems(s, cloud, gap_bound=ANNULUS_GAP)
    assert len(clusters) == 2


def test_rotation_single_cluster_is_whole_cloud():
    s = Rotation()
    cloud = s.sampler(64)
    clusters = minimal_subsystems(s, cloud)
    assert len(clusters) == 1
    assert len(clusters[0].indices) == len(cloud)


def test_cluster_invariance_under_step():
    s = annulus3()
    cloud = s.sampler(64)
    clusters = minimal_subsystems(s, cloud, gap_bound=ANNULUS_GAP)
    for c in clusters:
        members = [cloud[i] for i in c.indices]
        # tolerance: the grid chord spacing on the outer circle
        spacing = 2.0 * math.pi * 2.0 / 64
        for p in members[::8]:
            q = s.step(p)
            assert min(s.dist(q, m) for m in members) < spacing


def test_transitive_points():
    s = annulus3()
    cloud = s.sampler(128)
    tp = transitive_check(s, cloud)
    assert isinstance(tp, OrbitIndex)
    r = Rotation()
    rc = r.sampler(64)
    assert transitive_check(r, rc) == rc[0]


def test_disjoint_circles_have_no_transitive_point():
    s = annulus3()
    full = s.sampler(64)
    circles = tuple(p for p in full.points if not isinstance(p, OrbitIndex))
    cloud = PointCloud(circles, "circles-only", s.id)
    assert transitive_check(s, cloud) is None


def test_theorem_3_5_audits():
    a = annulus3()
    rec = theorem_3_5_audit(a, 3, a.sampler(128), gap_bound=ANNULUS_GAP)
    assert rec.applicable and rec.passed
    assert rec.details["n_minimal"] == 2

    r = Rotation()
    rec = theorem_3_5_audit(r, 1, r.sampler(64))
    assert rec.applicable and rec.passed
    assert rec.details["n_minimal"] == 0

    sh = shift2()
    rec = theorem_3_5_audit(sh, 2, sh.sampler(4), H=50, prox_H=50)
    assert not rec.applicable
    assert rec.passed is None


# ---------------------------------------------------------------------------
# dynamical balls and expansivity
# ---------------------------------------------------------------------------

def test_dynamical_ball_inside_r_set():
    s = SkewTorus()
    rng = np.random.default_rng(11)
    pts = tuple(Torus(float(x), float(y)) for x, y in rng.random((150, 2)))
    cloud = PointCloud(pts, "random(11)", s.id)
    ball = set(dynamical_ball(s, cloud[0], 0.2, cloud, H=100))
    rs = set(r_set(s, cloud[0], 0.2, cloud, H=100).members)
    assert ball <= rs


def test_shift_ball_at_zero_is_singleton():
    s = shift2()
    cloud = s.sampler(3)
    ball = dynamical_ball(s, word_point(()), 0.25, cloud, H=10)
    assert [cloud[i] for i in ball] == [word_point(())]


def test_rotation_ball_is_metric_ball():
    s = Rotation()
    cloud = s.sampler(32)
    x = cloud[5]
    ball = set(dynamical_ball(s, x, 0.13, cloud, H=50))
    want = {i for i, p in enumerate(cloud.points) if s.dist(x, p) < 0.13}
    assert ball == want


def test_expansivity_verdicts():
    sh = shift2()
    v = expansivity_probe(sh, sh.sampler(3), delta_grid=(0.25,), H=20)
    assert v.expansive_at == 0.25
    # an isometry keeps mesh neighbors inside every ball, so it is never
    # expansive at deltas above twice the cloud mesh
    r = Rotation()
    cloud = r.sampler(32)
    mesh = min(r.dist(cloud[i], cloud[j])
               for i in range(0, len(cloud), 7)
               for j in range(len(cloud)) if i != j)
    v = expansivity_probe(r, cloud, delta_grid=(0.25, 2.5 * mesh))
    assert v.expansive_at is None
    assert all(size > 1 for size in v.max_ball_sizes.values())
    # equal-x pairs keep constant distance under the skew map, so any
    # cloud containing such pairs closer than delta defeats expansivity
    sk = SkewTorus()
    rng = np.random.default_rng(12)
    pts = []
    for x, y in rng.random((50, 2)):
        pts.append(Torus(float(x), float(y)))
        pts.append(Torus(float(x), float(y) + 0.02))
    v = expansivity_probe(sk, PointCloud(tuple(pts), "pairs(12)", sk.id))
    assert v.expansive_at is None
    assert all(size > 1 for size in v.max_ball_sizes.values())


# ---------------------------------------------------------------------------
# Prop. 3.2 style audit
# ---------------------------------------------------------------------------

def test_prop_3_2_rational_rotation_passes():
    s = Rotation(alpha=2.0 / 7.0)
    cloud = s.sampler(16)
    rec = prop_3_2_audit(s, cloud)
    assert rec.applicable
    assert rec.passed
    assert rec.details["n_periodic"] == len(cloud)


def test_prop_3_2_shift_inapplicable():
    s = shift2()
    rec = prop_3_2_audit(s, s.sampler(4), H=50)
    assert not rec.applicable
    assert rec.passed is None
