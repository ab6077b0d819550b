"""Periodic points, return times, minimal subsystems, transitivity,
dynamical balls and expansivity probes.

All verdicts are at scale: syndeticity and density are checked over finite
iterate windows with explicit thresholds, and audits record the scale they
ran at.  Gap measurements complete the return-time sequence with the window
boundaries, so a point whose returns die out near the edge of the window is
not mistaken for almost periodic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .kernels import orbit_max_matrix, orbit_max_rows, orbit_visit_matrix
from .points import PointCloud
from .proximal import distality_report

DELTA_LIST = (0.2, 0.1, 0.05)


@dataclass
class AuditRecord:
    name: str
    applicable: bool
    passed: Optional[bool]
    details: dict = field(default_factory=dict)

    def as_dict(self):
        return {"name": self.name, "applicable": self.applicable,
                "passed": self.passed, "details": self.details}


# ---------------------------------------------------------------------------
# periodic points
# ---------------------------------------------------------------------------

def periodic_points(sys, cloud: PointCloud, T_max: int, eps_per: float = 1e-6,
                    J: int = 5):
    """Points x with d(f^{jT}(x), x) < eps_per for j = 1..J, reported with
    the smallest such T.  The J confirmations reject the near-returns of
    irrational rotations."""
    found = []
    for x in cloud.points:
        for T in range(1, T_max + 1):
            if all(sys.dist(sys.iterate(x, j * T), x) < eps_per
                   for j in range(1, J + 1)):
                found.append((x, T))
                break
    return found


# ---------------------------------------------------------------------------
# return times and almost periodicity
# ---------------------------------------------------------------------------

@dataclass
class ReturnProfile:
    point: object
    delta: float
    horizon: int
    return_times: tuple
    max_gap: Optional[int]

    def as_dict(self):
        return {"point": repr(self.point), "delta": self.delta,
                "horizon": self.horizon,
                "n_returns": len(self.return_times),
                "max_gap": self.max_gap}


def _self_return_distances(sys, points, H):
    """D[i, t] = d(f^(t-H) x_i, x_i) for t = 0..2H."""
    try:
        s0 = sys.arr_state(list(points))
    except NotImplementedError:
        D = np.empty((len(points), 2 * H + 1))
        for i, x in enumerate(points):
            y = sys.iterate(x, -H)
            for t in range(2 * H + 1):
                D[i, t] = sys.dist(y, x)
                if t < 2 * H:
                    y = sys.step(y)
        return D
    s = s0
    for _ in range(H):
        s = sys.arr_step(s, inverse=True)
    D = np.empty((len(points), 2 * H + 1), dtype=np.float32)
    for t in range(2 * H + 1):
        D[:, t] = sys.arr_edist(s, s0)
        if t < 2 * H:
            s = sys.arr_step(s)
    return D


def _gap_from_row(row, delta, H):
    times = np.nonzero(row < delta)[0] - H
    if len(times) <= 1:
        return tuple(int(t) for t in times), None
    padded = np.concatenate([[-H - 1], times, [H + 1]])
    return tuple(int(t) for t in times), int(np.diff(padded).max())


def return_profile(sys, x, delta: float, H: int) -> ReturnProfile:
    """Visits of the orbit of x back into B_delta(x) over |n| <= H.

    max_gap spans the whole window (boundaries count as virtual returns), so
    orbits whose returns stop early get a large gap; the None marker means
    the only return is n = 0.
    """
    row = _self_return_distances(sys, [x], H)[0]
    times, gap = _gap_from_row(row, delta, H)
    return ReturnProfile(point=x, delta=delta, horizon=H,
                         return_times=times, max_gap=gap)


def default_gap_bound(delta: float) -> int:
    return math.ceil(4.0 / delta)


def almost_periodic_verdict(sys, x, delta_list=DELTA_LIST, H: int = 500,
                            gap_bound=None) -> bool:
    """True iff returns to every delta-neighborhood have bounded gaps."""
    gap_bound = gap_bound or default_gap_bound
    for delta in delta_list:
        prof = return_profile(sys, x, delta, H)
        if prof.max_gap is None or prof.max_gap > gap_bound(delta):
            return False
    return True


# ---------------------------------------------------------------------------
# minimal subsystems and transitivity
# ---------------------------------------------------------------------------

@dataclass
class MinimalSetEstimate:
    representative: object
    indices: tuple
    closeness: float

    def as_dict(self):
        return {"representative": repr(self.representative),
                "size": len(self.indices), "indices": list(self.indices),
                "closeness": self.closeness}


def _almost_periodic_mask(sys, cloud, delta_list, H, gap_bound):
    D = _self_return_distances(sys, cloud.points, H)
    mask = np.ones(len(cloud), dtype=bool)
    for delta in delta_list:
        bound = gap_bound(delta)
        for i in np.nonzero(mask)[0]:
            _, gap = _gap_from_row(D[i], delta, H)
            if gap is None or gap > bound:
                mask[i] = False
    return mask


def minimal_subsystems(sys, cloud: PointCloud, delta: float = 0.05,
                       H: int = 2000, delta_list=DELTA_LIST,
                       gap_bound=None, visit=None):
    """Cluster the almost periodic cloud points into minimal-set estimates.

    Two almost periodic points join a cluster iff each one's orbit comes
    delta-close to the other (symmetric closeness blocks chains through
    wandering points); clusters are connected components of that relation,
    merged in index order.
    """
    gap_bound = gap_bound or default_gap_bound
    mask = _almost_periodic_mask(sys, cloud, delta_list, min(H, 500),
                                 gap_bound)
    ap_idx = np.nonzero(mask)[0]
    if len(ap_idx) == 0:
        return []
    if visit is None:
        sub = PointCloud(tuple(cloud[int(i)] for i in ap_idx),
                         cloud.provenance, cloud.system_id)
        V = orbit_visit_matrix(sys, sub.points, sub.points, H)
    else:
        V = visit[np.ix_(ap_idx, ap_idx)]
    close = (V < delta) & (V.T < delta)
    np.fill_diagonal(close, True)

    # union-find with index-ordered merges
    parent = list(range(len(ap_idx)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i in range(len(ap_idx)):
        for j in np.nonzero(close[i])[0]:
            ri, rj = find(i), find(int(j))
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)

    clusters = {}
    for i in range(len(ap_idx)):
        clusters.setdefault(find(i), []).append(i)
    out = []
    for root in sorted(clusters):
        local = clusters[root]
        idx = tuple(int(ap_idx[i]) for i in local)
        score = float(np.maximum(V, V.T)[np.ix_(local, local)].max())
        out.append(MinimalSetEstimate(representative=cloud[idx[0]],
                                      indices=idx, closeness=score))
    return out


def transitive_check(sys, cloud: PointCloud, H: int = 2000,
                     delta: float = 0.05, visit=None):
    """First cloud point whose orbit over |n| <= H is delta-dense in the
    cloud, or None."""
    if visit is None:
        visit = orbit_visit_matrix(sys, cloud.points, cloud.points, H)
    dense = visit.max(axis=1) < delta
    hits = np.nonzero(dense)[0]
    return cloud[int(hits[0])] if len(hits) else None


def theorem_3_5_audit(sys, N_claimed: int, cloud: PointCloud,
                      H: int = 2000, delta: float = 0.05,
                      prox_cloud: Optional[PointCloud] = None,
                      prox_H: int = 200, prox_eps: float = 1e-3,
                      delta_list=DELTA_LIST, gap_bound=None) -> AuditRecord:
    """Transitive and N-distal at scale implies at most N-1 proper minimal
    subsystems.  Preconditions failing mark the audit inapplicable."""
    prox_cloud = prox_cloud or cloud
    report = distality_report(sys, prox_cloud, prox_H, prox_eps,
                              N_max=max(N_claimed, 2))
    details = {"N_claimed": N_claimed, "max_cell_size": report.max_cell_size,
               "verdict": report.verdict, "H": H, "delta": delta,
               "prox_H": prox_H, "prox_eps": prox_eps,
               "cloud_size": len(cloud)}
    if report.max_cell_size > N_claimed:
        details["reason"] = "not N-distal at scale for the claimed N"
        return AuditRecord("theorem_3_5", False, None, details)
    visit = orbit_visit_matrix(sys, cloud.points, cloud.points, H)
    tp = transitive_check(sys, cloud, H, delta, visit=visit)
    if tp is None:
        details["reason"] = "no transitive point found at scale"
        return AuditRecord("theorem_3_5", False, None, details)
    minimal = minimal_subsystems(sys, cloud, delta, H, delta_list,
                                 gap_bound=gap_bound, visit=visit)
    # the theorem bounds PROPER minimal subsystems: a cluster whose orbits
    # are delta-dense in the whole cloud is the space itself, not proper
    proper = [c for c in minimal
              if visit[list(c.indices), :].min(axis=0).max() >= delta]
    details["transitive_point"] = repr(tp)
    details["n_clusters"] = len(minimal)
    details["n_minimal"] = len(proper)
    details["minimal_sizes"] = [len(c.indices) for c in proper]
    return AuditRecord("theorem_3_5", True,
                       len(proper) <= N_claimed - 1, details)


# ---------------------------------------------------------------------------
# dynamical balls and expansivity
# ---------------------------------------------------------------------------

def dynamical_ball(sys, x, delta: float, cloud: PointCloud,
                   H: int) -> tuple:
    """Indices of points staying delta-close to x's orbit at all |n| <= H
    (max over the window, dual to r_set's min)."""
    b = cloud.index_of(x)
    row = orbit_max_rows(sys, cloud.points, [b], H)[0]
    return tuple(int(i) for i in np.nonzero(row < delta)[0])


@dataclass
class ExpansivityVerdict:
    delta_grid: tuple
    horizon: int
    max_ball_sizes: dict
    expansive_at: Optional[float]

    @property
    def expansive_at_scale(self) -> bool:
        return self.expansive_at is not None

    def as_dict(self):
        return {"delta_grid": list(self.delta_grid), "horizon": self.horizon,
                "max_ball_sizes": {str(k): v
                                   for k, v in self.max_ball_sizes.items()},
                "expansive_at": self.expansive_at,
                "expansive_at_scale": self.expansive_at_scale}


def expansivity_probe(sys, cloud: PointCloud, delta_grid=(0.25, 0.1, 0.05),
                      H: int = 50) -> ExpansivityVerdict:
    """Max dynamical-ball cardinality per delta; expansive at scale when
    some delta makes every ball a singleton."""
    M = orbit_max_matrix(sys, cloud.points, H)
    sizes = {}
    expansive_at = None
    for delta in sorted(delta_grid, reverse=True):
        sizes[delta] = int((M < delta).sum(axis=1).max())
        if sizes[delta] == 1 and expansive_at is None:
            expansive_at = delta
    return ExpansivityVerdict(delta_grid=tuple(sorted(delta_grid,
                                                      reverse=True)),
                              horizon=H, max_ball_sizes=sizes,
                              expansive_at=expansive_at)


def prop_3_2_audit(sys, cloud: PointCloud, T_max: int = 50,
                   eps_per: float = 1e-6, J: int = 5, H: int = 200,
                   eps_prox: float = 1e-3) -> AuditRecord:
    """Periodic points of an N-distal-at-scale system are distal points:
    every detected periodic point's proximal cell must be a singleton."""
    report = distality_report(sys, cloud, H, eps_prox)
    details = {"verdict": report.verdict,
               "max_cell_size": report.max_cell_size,
               "T_max": T_max, "eps_per": eps_per, "H": H}
    if report.verdict.startswith("not "):
        details["reason"] = "system is not N-distal at scale"
        return AuditRecord("prop_3_2", False, None, details)
    periodic = periodic_points(sys, cloud, T_max, eps_per, J)
    violations = []
    for x, T in periodic:
        i = cloud.index_of(x)
        if report.cells[i].size() > 1:
            violations.append({"point": repr(x), "period": T,
                               "cell_size": report.cells[i].size()})
    details["n_periodic"] = len(periodic)
    details["violations"] = violations
    return AuditRecord("prop_3_2", True, not violations, details)
