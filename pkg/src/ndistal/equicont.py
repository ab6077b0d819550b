"""R_delta sets and N-equicontinuity probes.

R_delta(x) collects the points whose orbit comes delta-close to x's orbit at
some single time.  N-equicontinuity asks for a delta keeping the N-diameter
of every f^n(R_delta(x)) under epsilon; since f^n(R_delta(x)) =
R_delta(f^n(x)) exactly, the probe sweeps base points at n = 0 and guards
the identity itself with randomized spot checks instead of re-sweeping n.

Pass/fail is certified through the N-diameter bounds: a delta level passes
only when every sampled base has a certified diameter upper bound below
epsilon, and a failure witness is only certified when a concrete N+1 subset
is pairwise separated by at least epsilon.  Levels where neither bound
resolves count as not passed, without a certified witness.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import ParameterError
from .kernels import _comoving, orbit_min_rows
from .ndiameter import (diam_n_bounds_from_matrix, diam_n_exact_from_matrix)
from .points import PointCloud, Torus

DEFAULT_DELTA_GRID = (0.2, 0.1, 0.05, 0.02, 0.01)
DEFAULT_H = 200
TIE_TOL = 1e-12


@dataclass
class RSetEstimate:
    base: int
    delta: float
    horizon: int
    members: tuple
    trace: dict = field(default_factory=dict)

    def as_dict(self):
        return {"base": self.base, "delta": self.delta,
                "horizon": self.horizon, "members": list(self.members)}


def r_set(sys, x, delta: float, cloud: PointCloud,
          H: int = DEFAULT_H) -> RSetEstimate:
    """Cloud points whose orbit dips delta-close to x's within |n| <= H."""
    if delta <= 0:
        raise ParameterError("delta must be positive")
    b = cloud.index_of(x)
    row = orbit_min_rows(sys, cloud.points, [b], H)[0][0]
    members = np.nonzero(row < delta)[0]
    return RSetEstimate(base=b, delta=delta, horizon=H,
                        members=tuple(int(i) for i in members),
                        trace={int(i): float(row[i]) for i in members})


def _window_min_row(sys, x, points, lo, hi):
    """min over lo <= k <= hi of d(f^k(x), f^k(p)) for each point p."""
    xa = sys.iterate(x, lo)
    pa = [sys.iterate(p, lo) for p in points]
    row = np.array([sys.dist(xa, p) for p in pa])
    for _ in range(lo, hi):
        xa = sys.step(xa)
        pa = [sys.step(p) for p in pa]
        np.minimum(row, [sys.dist(xa, p) for p in pa], out=row)
    return row


def r_set_equivariance_check(sys, x, delta: float, cloud: PointCloud,
                             H: int = DEFAULT_H, n: int = 0,
                             tie_tol: float = TIE_TOL) -> bool:
    """Check f^n(R_delta(x)) = R_delta(f^n(x)) as index sets.

    With H' = H - |n|, the left side scans the window [n - H', n + H']
    around x and the right side scans the symmetric window of radius H'
    around f^n(x).  Both windows cover the same absolute times, so the
    identity is exact and the check exercises iterate composition; values
    within tie_tol of delta are excluded from the comparison (floating
    boundary ties are not resolvable).
    """
    if abs(n) > H // 2:
        raise ParameterError("|n| must be at most H/2")
    cloud.index_of(x)
    H2 = H - abs(n)
    da = _window_min_row(sys, x, cloud.points, n - H2, n + H2)
    mapped = [sys.iterate(p, n) for p in cloud.points]
    xn = sys.iterate(x, n)
    db = _comoving(sys, [xn], mapped, H2, (), use_max=False)[0][0]
    keep = (np.abs(da - delta) > tie_tol) & (np.abs(db - delta) > tie_tol)
    return bool(np.array_equal((da < delta)[keep], (db < delta)[keep]))


# ---------------------------------------------------------------------------
# the probe
# ---------------------------------------------------------------------------

@dataclass
class EquicontinuityWitness:
    base: object
    n: int
    points: tuple
    min_pairwise: float
    certified: bool
    M: Optional[int] = None
    pair_separation: Optional[float] = None

    def as_dict(self):
        d = {"base": repr(self.base), "n": self.n,
             "points": [repr(p) for p in self.points],
             "min_pairwise": self.min_pairwise, "certified": self.certified}
        if self.M is not None:
            d["M"] = self.M
            d["pair_separation"] = self.pair_separation
        return d


@dataclass
class EquicontinuityVerdict:
    N: int
    epsilon: float
    delta_grid: tuple
    passed: bool
    witness: Optional[EquicontinuityWitness]
    horizon: int
    per_delta: list
    spot_checks: list

    def as_dict(self):
        return {"N": self.N, "epsilon": self.epsilon,
                "delta_grid": list(self.delta_grid), "passed": self.passed,
                "horizon": self.horizon,
                "witness": self.witness.as_dict() if self.witness else None,
                "per_delta": self.per_delta,
                "spot_checks": self.spot_checks}


def skew_witness(N: int, delta: float, M: Optional[int] = None):
    """Smallest n >= 1 whose shear moves some first-coordinate offset
    delta/M into the separated band: n*delta/M mod 1 in [1/4, 3/4].

    Returns (M, n).  With M fixed, only that offset is scanned.
    """
    if not 0 < delta < 1 or N < 1:
        raise ParameterError("need 0 < delta < 1 and N >= 1")
    ms = [M] if M is not None else list(range(1, N + 1))
    n = 0
    while True:
        n += 1
        for m in ms:
            if 0.25 <= (n * delta / m) % 1.0 <= 0.75:
                return m, n


def _first_coordinate_witness(sys, base, N, epsilon, delta):
    """Witness in the style of the shear construction: N+1 points spread in
    the first coordinate inside B_delta(base), pushed forward until the pair
    (base, base + delta/M e_1) separates by at least 1/4."""
    d = delta * (1.0 - 1e-9)
    pts = [base] + [Torus(base.x + d / k, base.y) for k in range(1, N + 1)]
    M, n = skew_witness(N, d)
    imgs = tuple(sys.iterate(p, n) for p in pts)
    dists = [sys.dist(imgs[i], imgs[j])
             for i in range(len(imgs)) for j in range(i + 1, len(imgs))]
    pair_sep = sys.dist(imgs[0], imgs[M])
    mp = float(min(dists))
    return EquicontinuityWitness(base=base, n=n, points=tuple(pts),
                                 min_pairwise=mp,
                                 certified=mp >= epsilon,
                                 M=M, pair_separation=float(pair_sep))


def _dispersed_bases(D0, k):
    """Greedy farthest-point selection of k base indices.

    Index order is arbitrary in a cloud, so base points are spread by
    static distance instead; this reaches isolated points (for example a
    connecting orbit between two circles) that an index stride can skip.
    """
    chosen = [0]
    nearest = D0[0].copy()
    while len(chosen) < k:
        i = int(np.argmax(nearest))
        if nearest[i] <= 0.0:
            break
        chosen.append(i)
        np.minimum(nearest, D0[i], out=nearest)
    return sorted(chosen)


def _base_dist_matrix(sys, cloud):
    try:
        return sys.arr_pdist(sys.arr_state(list(cloud.points)))
    except NotImplementedError:
        m = len(cloud)
        D = np.zeros((m, m))
        for i in range(m):
            for j in range(i + 1, m):
                D[i, j] = D[j, i] = sys.dist(cloud[i], cloud[j])
        return D


def n_equicontinuity_probe(sys, cloud: PointCloud, N: int, epsilon: float,
                           delta_grid=DEFAULT_DELTA_GRID, H: int = DEFAULT_H,
                           n_bases: int = 64, exact_budget: int = 20000,
                           n_spot_checks: int = 10,
                           seed: int = 0) -> EquicontinuityVerdict:
    """Probe N-equicontinuity at scale over a descending delta grid."""
    if len(cloud) < N + 1:
        raise ParameterError("cloud smaller than N+1 points")
    if epsilon <= 0:
        raise ParameterError("epsilon must be positive")
    grid = tuple(sorted(set(delta_grid), reverse=True))
    m = len(cloud)
    D0 = _base_dist_matrix(sys, cloud)
    pos = D0[D0 > 0.0]
    mesh = float(pos.min()) if pos.size else 0.0
    base_idx = _dispersed_bases(D0, min(n_bases, m))
    rows = orbit_min_rows(sys, cloud.points, base_idx, H)[0]

    per_delta = []
    fail_witnesses = {}
    passed = False
    for delta in grid:
        level_pass = True
        level_fail = None
        max_lower = 0.0
        max_upper = 0.0
        for bi, b in enumerate(base_idx):
            members = np.nonzero(rows[bi] < delta)[0]
            if len(members) <= N:
                continue
            sub = D0[np.ix_(members, members)]
            if math.comb(len(members), N + 1) <= exact_budget:
                res = diam_n_exact_from_matrix(sub, N, exact_budget)
            else:
                res = diam_n_bounds_from_matrix(sub, N)
            max_lower = max(max_lower, res.value_lower)
            max_upper = max(max_upper, res.value_upper)
            if res.value_upper >= epsilon:
                level_pass = False
            if res.value_lower >= epsilon and level_fail is None:
                wit = tuple(cloud[int(members[i])] for i in res.witness)
                level_fail = EquicontinuityWitness(
                    base=cloud[b], n=0, points=wit,
                    min_pairwise=float(res.value_lower), certified=True)
        # A delta below the smallest pairwise distance in the cloud makes
        # every sampled return set a singleton, so a pass at that scale
        # says nothing about the system.  Such levels never certify a pass.
        resolved = delta >= mesh
        per_delta.append({"delta": delta, "passed": level_pass,
                          "resolved": resolved,
                          "certified_fail": level_fail is not None,
                          "max_lower": max_lower, "max_upper": max_upper})
        if level_fail is not None:
            fail_witnesses[delta] = level_fail
        if level_pass and resolved:
            passed = True

    witness = None
    if not passed:
        smallest = grid[-1]
        if isinstance(cloud[0], Torus):
            witness = _first_coordinate_witness(
                sys, cloud[base_idx[0]], N, epsilon, smallest)
        elif smallest in fail_witnesses:
            witness = fail_witnesses[smallest]
        elif fail_witnesses:
            witness = fail_witnesses[sorted(fail_witnesses)[0]]

    rng = np.random.default_rng(seed)
    spot = []
    mid_delta = grid[len(grid) // 2]
    for _ in range(n_spot_checks):
        n = int(rng.integers(-(H // 2), H // 2 + 1))
        x = cloud[int(rng.integers(0, m))]
        spot.append(bool(r_set_equivariance_check(
            sys, x, mid_delta, cloud, H, n)))

    return EquicontinuityVerdict(N=N, epsilon=epsilon, delta_grid=grid,
                                 passed=passed, witness=witness, horizon=H,
                                 per_delta=per_delta, spot_checks=spot)
