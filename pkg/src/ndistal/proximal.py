"""Proximal cells, distality verdicts, quotient factors, fiber cells.

All verdicts are at scale: proximality is tested over the finite iterate
window |n| <= H against a threshold eps_prox, and every result carries its
(H, eps) stamp.  An edge is additionally flagged "stable" when its traced
minimum shrinks by the stability factor as the horizon doubles; acceptance
checks rely on stable edges only, which screens out chords that happen to be
small at one scale without actually converging.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .errors import HomomorphismError
from .kernels import (max_orbit_distance, min_orbit_distance,
                      orbit_min_matrix, orbit_min_rows)
from .points import OrbitIndex, PointCloud

DEFAULT_H = 200
DEFAULT_EPS = 1e-3
STABLE_FACTOR = 10.0


@dataclass
class ProximalCellEstimate:
    base: int
    members: tuple
    horizon: int
    threshold: float
    min_dist_trace: dict
    stable: Optional[dict] = None

    def __post_init__(self):
        assert self.base in self.members

    def size(self):
        return len(self.members)

    def as_dict(self):
        d = {"base": self.base, "members": list(self.members),
             "horizon": self.horizon, "threshold": self.threshold,
             "min_dist_trace": {str(k): v
                                for k, v in sorted(self.min_dist_trace.items())}}
        if self.stable is not None:
            d["stable"] = {str(k): bool(v)
                           for k, v in sorted(self.stable.items())}
        return d


@dataclass
class ProximalReport:
    cells: list
    max_cell_size: int
    verdict: str
    graph: np.ndarray
    horizon: int
    threshold: float
    n_max: int
    stable_only: bool
    cloud: PointCloud = field(repr=False)

    def cell_at(self, i: int) -> ProximalCellEstimate:
        return self.cells[i]

    def as_dict(self):
        edges = [[int(i), int(j)] for i, j in zip(*np.nonzero(self.graph))
                 if i < j]
        return {"verdict": self.verdict, "max_cell_size": self.max_cell_size,
                "horizon": self.horizon, "threshold": self.threshold,
                "n_max": self.n_max, "stable_only": self.stable_only,
                "cloud_size": len(self.cloud),
                "cloud_provenance": self.cloud.provenance,
                "edges": edges,
                "cells": [c.as_dict() for c in self.cells
                          if len(c.members) > 1]}


def _row_cell(base, row_h, row_2h, H, eps, factor=STABLE_FACTOR,
              index_map=None):
    adj = row_h < eps
    adj[base] = True
    stable = row_2h <= row_h / factor
    stable[base] = True
    members = np.nonzero(adj)[0]
    remap = (lambda i: i) if index_map is None else (lambda i: index_map[i])
    return ProximalCellEstimate(
        base=remap(base),
        members=tuple(remap(int(i)) for i in members),
        horizon=H, threshold=eps,
        min_dist_trace={remap(int(i)): float(row_h[i]) for i in members},
        stable={remap(int(i)): bool(stable[i]) for i in members})


def proximal_cell(sys, x, cloud: PointCloud, H: int = DEFAULT_H,
                  eps_prox: float = DEFAULT_EPS) -> ProximalCellEstimate:
    """Cloud points whose orbit comes eps-close to x's within |n| <= H.

    The sweep runs to 2H so each member carries a stability flag.
    """
    b = cloud.index_of(x)
    M2, cps = orbit_min_rows(sys, cloud.points, [b], 2 * H, checkpoints=(H,))
    return _row_cell(b, cps[H][0], M2[0], H, eps_prox)


def distality_report(sys, cloud: PointCloud, H: int = DEFAULT_H,
                     eps_prox: float = DEFAULT_EPS, N_max: int = 8,
                     stable_only: bool = True,
                     stable_factor: float = STABLE_FACTOR) -> ProximalReport:
    """Build every proximal cell on the cloud and classify.

    verdict: "distal" when all cells are singletons, "k-distal, not
    (k-1)-distal" for max cell size k <= N_max, else "not N-distal up to
    N_max" (the cell sizes exceed N_max already at this cloud; on
    shift-like systems they keep growing strictly as the cloud is
    enlarged).
    """
    m = len(cloud)
    M2, cps = orbit_min_matrix(sys, cloud.points, 2 * H, checkpoints=(H,))
    MH = cps[H]
    adj = MH < eps_prox
    stable = M2 <= MH / stable_factor
    use = (adj & stable) if stable_only else adj
    np.fill_diagonal(use, True)
    use &= use.T

    cells = []
    for i in range(m):
        members = np.nonzero(use[i])[0]
        cells.append(ProximalCellEstimate(
            base=i, members=tuple(int(j) for j in members),
            horizon=H, threshold=eps_prox,
            min_dist_trace={int(j): float(MH[i, j]) for j in members},
            stable={int(j): bool(stable[i, j]) for j in members}))
    max_size = max(len(c.members) for c in cells)
    if max_size == 1:
        verdict = "distal"
    elif max_size <= N_max:
        weaker = "not distal" if max_size == 2 else \
            f"not {max_size - 1}-distal"
        verdict = f"{max_size}-distal, {weaker}"
    else:
        verdict = f"not N-distal up to N_max={N_max}"
    graph = use.copy()
    np.fill_diagonal(graph, False)
    return ProximalReport(cells=cells, max_cell_size=max_size,
                          verdict=verdict, graph=graph, horizon=H,
                          threshold=eps_prox, n_max=N_max,
                          stable_only=stable_only, cloud=cloud)


# ---------------------------------------------------------------------------
# quotient by the proximal relation
# ---------------------------------------------------------------------------

@dataclass
class QuotientResult:
    is_equivalence: bool
    classes: tuple = ()
    violating_triple: Optional[tuple] = None
    induced_map: Optional[dict] = None
    induced_consistent: bool = False
    factor_report: Optional[ProximalReport] = None

    def as_dict(self):
        d = {"is_equivalence": self.is_equivalence,
             "induced_consistent": self.induced_consistent}
        if self.is_equivalence:
            d["classes"] = [list(c) for c in self.classes]
            d["induced_map"] = {str(k): v
                                for k, v in sorted(self.induced_map.items())}
            d["factor_verdict"] = self.factor_report.verdict
            d["factor_max_cell_size"] = self.factor_report.max_cell_size
        else:
            d["violating_triple"] = list(self.violating_triple)
        return d


def _nearest_indices(sys, queries, cloud: PointCloud):
    """Index of the nearest cloud point for each query, with distances."""
    try:
        sq = sys.arr_state(list(queries))
        sc = sys.arr_state(list(cloud.points))
        D = sys.arr_cdist(sq, sc)
        idx = D.argmin(axis=1)
        return idx, D[np.arange(len(queries)), idx]
    except NotImplementedError:
        idx, dd = [], []
        for q in queries:
            ds = [sys.dist(q, p) for p in cloud.points]
            j = int(np.argmin(ds))
            idx.append(j)
            dd.append(ds[j])
        return np.array(idx), np.array(dd)


def proximal_quotient(report: ProximalReport, sys,
                      match_tol: float = 1e-9) -> QuotientResult:
    """Quotient the cloud by the proximal graph, when it is an equivalence.

    Expects the report's cloud to be closed under one forward step (up to
    match_tol), so the induced map on classes is defined away from the
    cloud boundary.  A graph that is not transitively closed yields the
    concrete violating triple instead; that is a valid outcome, matching
    systems whose proximal relation is not an equivalence.
    """
    A = report.graph.copy()
    np.fill_diagonal(A, True)
    reach2 = (A.astype(np.uint8) @ A.astype(np.uint8)) > 0
    bad = reach2 & ~A
    if bad.any():
        i, k = map(int, next(zip(*np.nonzero(bad))))
        j = int(np.nonzero(A[i] & A[:, k])[0][0])
        return QuotientResult(is_equivalence=False,
                              violating_triple=(i, j, k))

    n_comp, labels = connected_components(csr_matrix(A), directed=False)
    classes = tuple(tuple(int(i) for i in np.nonzero(labels == c)[0])
                    for c in range(n_comp))
    # order classes by smallest member for reproducibility
    order = np.argsort([c[0] for c in classes])
    classes = tuple(classes[i] for i in order)
    label_of = {}
    for ci, members in enumerate(classes):
        for i in members:
            label_of[i] = ci

    stepped = [sys.step(p) for p in report.cloud.points]
    near, gap = _nearest_indices(sys, stepped, report.cloud)
    induced = {}
    consistent = True
    for ci, members in enumerate(classes):
        images = {label_of[int(near[i])] for i in members
                  if gap[i] <= match_tol}
        if len(images) > 1:
            consistent = False
        induced[ci] = min(images) if images else None

    reps = []
    for members in classes:
        preferred = [i for i in members
                     if not isinstance(report.cloud[i], OrbitIndex)]
        reps.append(report.cloud[min(preferred) if preferred
                                 else min(members)])
    factor_cloud = PointCloud(tuple(reps), "quotient-representatives",
                              report.cloud.system_id)
    factor = distality_report(sys, factor_cloud, report.horizon,
                              report.threshold, report.n_max,
                              stable_only=report.stable_only)
    return QuotientResult(is_equivalence=True, classes=classes,
                          induced_map=induced, induced_consistent=consistent,
                          factor_report=factor)


# ---------------------------------------------------------------------------
# fiber proximal cells (extensions)
# ---------------------------------------------------------------------------

def fiber_proximal_cell(g, f, pi, y, cloud: PointCloud, H: int = DEFAULT_H,
                        eps_prox: float = DEFAULT_EPS,
                        eps_fiber: Optional[float] = None,
                        check_tol: float = 1e-9) -> ProximalCellEstimate:
    """Proximal cell of y under g restricted to the pi-fiber through y.

    pi must semiconjugate g (upstairs) to f (downstairs) on the cloud:
    f(pi(z)) = pi(g(z)) within check_tol.  Fiber membership is the finite
    stand-in d_base(pi(z), pi(y)) < eps_fiber; the default eps_fiber is the
    projected cloud's mesh, the smallest positive gap between projections.
    """
    proj = [pi(z) for z in cloud.points]
    for z, pz in zip(cloud.points, proj):
        if f.dist(f.step(pz), pi(g.step(z))) > check_tol:
            raise HomomorphismError(
                f"pi does not semiconjugate g to f at {z!r}")

    if eps_fiber is None:
        try:
            D = f.arr_pdist(f.arr_state(proj))
        except NotImplementedError:
            D = np.array([[f.dist(a, b) for b in proj] for a in proj])
        np.fill_diagonal(D, np.inf)
        # mesh of the distinct projected points: exact duplicate
        # projections (whole fibers) must not shrink the fiber tolerance
        D[D <= 0.0] = np.inf
        nn = D.min(axis=1)
        finite = nn[np.isfinite(nn)]
        eps_fiber = float(finite.min()) if finite.size else 1.0

    b = cloud.index_of(y)
    py = proj[b]
    fiber_idx = [i for i, pz in enumerate(proj)
                 if f.dist(pz, py) < eps_fiber]
    sub = [cloud[i] for i in fiber_idx]
    sub_b = fiber_idx.index(b)
    M2, cps = orbit_min_rows(g, sub, [sub_b], 2 * H, checkpoints=(H,))
    return _row_cell(sub_b, cps[H][0], M2[0], H, eps_prox,
                     index_map=fiber_idx)


__all__ = ["ProximalCellEstimate", "ProximalReport", "QuotientResult",
           "min_orbit_distance", "max_orbit_distance", "proximal_cell",
           "distality_report", "proximal_quotient", "fiber_proximal_cell"]
