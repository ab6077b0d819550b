"""Partition entropy, dynamical refinement, entropy estimates and the
geometric-partition bounds.

All entropies are in natural log units, matching the analytic bound
e/(e-1)^2 of the geometric construction.  Refinement follows itineraries on
a finite cloud: the one-step image of each cloud point is snapped to its
nearest cloud neighbour, and the snap distance is checked against a
tolerance (half the cloud mesh by default) so that aliasing cannot silently
corrupt the itineraries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.spatial import cKDTree

from .errors import (ConstructionError, MeasureError, ParameterError,
                     RefinementError)
from .points import Annulus, PointCloud, SymbolicPoint, Torus
from .systems import ShiftSystem

KSH1_BOUND = math.e / (math.e - 1.0) ** 2


# ---------------------------------------------------------------------------
# partitions and measures
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Partition:
    """Disjoint index cells covering a cloud of the given size."""

    cells: tuple
    size: int
    labels: tuple = ()

    def __post_init__(self):
        seen = [i for cell in self.cells for i in cell]
        if len(seen) != self.size or len(set(seen)) != self.size:
            raise ParameterError("cells must partition the cloud indices")
        if any(len(c) == 0 for c in self.cells):
            raise ParameterError("empty cells are not stored")

    def n_cells(self):
        return len(self.cells)

    def masses(self, weights):
        return np.array([weights[list(c)].sum() for c in self.cells])

    def label_array(self):
        lab = np.empty(self.size, dtype=np.int64)
        for k, cell in enumerate(self.cells):
            lab[list(cell)] = k
        return lab


def partition_from_labels(labels, size: Optional[int] = None,
                          names=None) -> Partition:
    labels = np.asarray(labels)
    size = size if size is not None else len(labels)
    uniq, inv = np.unique(labels, return_inverse=True)
    cells = tuple(tuple(int(i) for i in np.nonzero(inv == k)[0])
                  for k in range(len(uniq)))
    return Partition(cells=cells, size=size,
                     labels=tuple(names) if names else tuple(str(u)
                                                             for u in uniq))


def default_partition(cloud: PointCloud, k: int = 2) -> Partition:
    """Coordinate partition: k arcs in the cyclic coordinate, with annulus
    points additionally split by radius level and symbolic points split by
    their symbol at the origin."""
    labels = []
    for p in cloud.points:
        if isinstance(p, Torus):
            labels.append(int(p.x * k) % k + k * (int(p.y * k) % k))
        elif isinstance(p, Annulus):
            labels.append(int(p.theta * k) % k + k * int(round(p.r)))
        elif isinstance(p, SymbolicPoint):
            labels.append(p.get(0))
        else:
            raise ParameterError(f"no default partition for {p!r}")
    return partition_from_labels(labels, len(cloud))


@dataclass
class EmpiricalMeasure:
    weights: np.ndarray
    generator: str

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        if (w < -1e-15).any():
            raise MeasureError("negative weight")
        if abs(w.sum() - 1.0) > 1e-9:
            raise MeasureError(f"weights sum to {w.sum()!r}, not 1")
        self.weights = np.clip(w, 0.0, None)


def uniform_measure(cloud: PointCloud) -> EmpiricalMeasure:
    m = len(cloud)
    return EmpiricalMeasure(np.full(m, 1.0 / m), "uniform")


def orbit_measure(sys, cloud: PointCloud, x0, length: int = 10_000,
                  snap_tol: Optional[float] = None) -> EmpiricalMeasure:
    """Birkhoff frequencies of the orbit of x0 over the cloud cells (each
    orbit point is snapped to its nearest cloud point)."""
    orbit = []
    x = x0
    for _ in range(length):
        orbit.append(x)
        x = sys.step(x)
    tree, _ = _embed_tree(sys, cloud)
    q = sys.arr_embed(sys.arr_state(orbit))
    _, idx = tree.query(q)
    counts = np.bincount(idx, minlength=len(cloud)).astype(float)
    return EmpiricalMeasure(counts / counts.sum(),
                            f"orbit({x0!r},{length})")


def partition_entropy(weights) -> float:
    """-sum w log w with 0 log 0 = 0; weights must be a probability
    vector."""
    w = np.asarray(list(weights), dtype=float)
    if (w < -1e-15).any():
        raise MeasureError("negative weight")
    if abs(w.sum() - 1.0) > 1e-9:
        raise MeasureError(f"weights sum to {w.sum()!r}, not 1")
    w = w[w > 0]
    return float(-(w * np.log(w)).sum())


# ---------------------------------------------------------------------------
# refinement along itineraries
# ---------------------------------------------------------------------------

def _embed_tree(sys, cloud):
    state = sys.arr_state(list(cloud.points))
    emb = sys.arr_embed(state)
    return cKDTree(emb), emb


def cloud_mesh(sys, cloud: PointCloud) -> float:
    """Smallest positive nearest-neighbour distance in the cloud."""
    if isinstance(sys, ShiftSystem):
        best = 1.0
        pts = cloud.points
        for i, p in enumerate(pts):
            for q in pts[i + 1:]:
                best = min(best, sys.dist(p, q))
        return best
    tree, emb = _embed_tree(sys, cloud)
    d, _ = tree.query(emb, k=2)
    return float(d[:, 1].min())


def step_index_map(sys, cloud: PointCloud,
                   snap_tol: Optional[float] = None):
    """Index of the cloud point nearest to f(p_i), with the largest snap
    distance; exact lookup is tried first (shift clouds close exactly)."""
    stepped = [sys.step(p) for p in cloud.points]
    lut = {p: i for i, p in enumerate(cloud.points)}
    if all(p in lut for p in stepped):
        return np.array([lut[p] for p in stepped]), 0.0
    if snap_tol is None:
        snap_tol = 0.5 * cloud_mesh(sys, cloud)
    tree, _ = _embed_tree(sys, cloud)
    emb = sys.arr_embed(sys.arr_state(stepped))
    _, idx = tree.query(emb)
    snapped = [cloud[int(i)] for i in idx]
    gaps = [sys.dist(a, b) for a, b in zip(stepped, snapped)]
    worst = float(max(gaps))
    if worst > snap_tol:
        raise RefinementError(
            f"snap distance {worst:.3g} exceeds tolerance {snap_tol:.3g}")
    return np.asarray(idx, dtype=np.int64), worst


def refine_partition(P: Partition, sys, n: int, cloud: PointCloud,
                     snap_tol: Optional[float] = None) -> Partition:
    """The join P v f^-1(P) v ... v f^-(n-1)(P): points sharing the same
    length-n itinerary through P."""
    if n < 1:
        raise ParameterError("n must be >= 1")
    labels = P.label_array()
    nxt, _ = step_index_map(sys, cloud, snap_tol)
    K = P.n_cells()
    code = labels.copy()
    idx = np.arange(len(cloud))
    for _ in range(n - 1):
        idx = nxt[idx]
        code = code * K + labels[idx]
        _, code = np.unique(code, return_inverse=True)
    return partition_from_labels(code, len(cloud))


@dataclass
class EntropyEstimate:
    value: float
    method: str
    params: dict
    diagnostics: tuple = field(default=())

    def as_dict(self):
        return {"value": self.value, "method": self.method,
                "params": {k: repr(v) if not isinstance(
                    v, (int, float, str, bool, type(None))) else v
                    for k, v in self.params.items()},
                "diagnostics": list(self.diagnostics)}


def metric_entropy_estimate(sys, P: Partition, mu: EmpiricalMeasure,
                            n_max: int, cloud: PointCloud,
                            snap_tol: Optional[float] = None
                            ) -> EntropyEstimate:
    """(1/n) H_mu(P^n) for n = 1..n_max; the estimate is the mean of the
    last three values and the full sequence is kept as diagnostics."""
    if n_max < 4:
        raise ParameterError("n_max must be >= 4")
    labels = P.label_array()
    nxt, snap = step_index_map(sys, cloud, snap_tol)
    K = max(P.n_cells(), 2)
    code = labels.copy()
    idx = np.arange(len(cloud))
    seq = []
    for n in range(1, n_max + 1):
        if n > 1:
            idx = nxt[idx]
            code = code * K + labels[idx]
            _, code = np.unique(code, return_inverse=True)
        masses = np.bincount(code, weights=mu.weights)
        seq.append(partition_entropy(masses) / n)
    value = float(np.mean(seq[-3:]))
    return EntropyEstimate(value=value, method="partition_limit",
                           params={"n_max": n_max, "cells": P.n_cells(),
                                   "cloud_size": len(cloud),
                                   "measure": mu.generator,
                                   "max_snap_distance": snap},
                           diagnostics=tuple(seq))


def word_count_entropy(sys, n: int, cloud: Optional[PointCloud] = None
                       ) -> EntropyEstimate:
    """log(#distinct length-n subwords over the sampled points)/n."""
    if n > 20:
        raise ParameterError("n must be <= 20")
    if cloud is None:
        cloud = sys.periodic_cloud(min(n, 13))
    words = set()
    for p in cloud.points:
        lo, hi = p.extent()
        span = max(len(p.left), len(p.right), 1)
        for j in range(lo - n - span, hi + span + 1):
            words.add(tuple(p.get(j + t) for t in range(n)))
    return EntropyEstimate(value=math.log(len(words)) / n,
                           method="word_count",
                           params={"n": n, "cloud_size": len(cloud),
                                   "n_words": len(words)},
                           diagnostics=())


# ---------------------------------------------------------------------------
# geometric partition and the entropy bound
# ---------------------------------------------------------------------------

@dataclass
class GeometricPartitionResult:
    partition: Partition
    masses: tuple
    radii: tuple
    center: object

    def entropy(self, weights):
        return partition_entropy(self.partition.masses(weights))


def geometric_partition(sys, cloud: PointCloud, mu: EmpiricalMeasure,
                        r: float, z=None,
                        radii: Optional[list] = None
                        ) -> GeometricPartitionResult:
    """Nested balls S_n around z with mu(S_n) <= r^n; cells are the
    differences E_n = S_n minus S_(n+1), with z assigned to E_0.

    Radii are found by shrinking along the empirical distance order; the
    construction stops when the largest admissible ball is the singleton
    {z}.  Explicit radii are validated against the mass condition instead.
    """
    if not 0.0 < r < 1.0 / math.e:
        raise ParameterError("r must satisfy 0 < r < 1/e")
    m = len(cloud)
    zi = 0 if z is None else cloud.index_of(z)
    z = cloud[zi]
    try:
        d = sys.arr_cdist(sys.arr_state([z]),
                          sys.arr_state(list(cloud.points)))[0]
    except NotImplementedError:
        d = np.array([sys.dist(z, p) for p in cloud.points])
    key = d.copy()
    key[zi] = -1.0  # z sorts first
    order = np.lexsort((np.arange(m), key))
    cum = np.cumsum(mu.weights[order])
    dist_sorted = d[order]

    prefixes = [m]
    level_radii = [float(dist_sorted.max())]
    if radii is not None:
        for lev, rad in enumerate(radii, start=1):
            k = int(np.searchsorted(dist_sorted, rad, side="right"))
            if k < 1 or cum[k - 1] > r ** lev + 1e-12:
                raise ConstructionError(
                    f"mass condition fails at level {lev}: "
                    f"mu(S_{lev}) > r^{lev}")
            prefixes.append(k)
            level_radii.append(float(rad))
            if k <= 1:
                break
        if prefixes[-1] > 1:
            prefixes.append(1)
            level_radii.append(0.0)
    else:
        lev = 0
        while prefixes[-1] > 1:
            lev += 1
            k = int(np.searchsorted(cum, r ** lev + 1e-15, side="right"))
            if k >= prefixes[-1]:
                k = prefixes[-1] - 1
            # a ball must not split equal distances: back off to a boundary
            while 1 < k < m and dist_sorted[k - 1] == dist_sorted[k]:
                k -= 1
            k = max(k, 1)
            prefixes.append(k)
            level_radii.append(float(dist_sorted[k - 1]))

    cells = []
    masses = []
    for lev in range(len(prefixes) - 1):
        members = list(order[prefixes[lev + 1]:prefixes[lev]])
        if lev == 0:
            members.append(order[0])
        if members:
            cells.append(tuple(sorted(int(i) for i in members)))
            masses.append(float(mu.weights[members].sum()))
    part = Partition(cells=tuple(cells), size=m)
    return GeometricPartitionResult(partition=part, masses=tuple(masses),
                                    radii=tuple(level_radii), center=z)


def closing_bound(r: float) -> float:
    """log((1-r)/(1-2r)) - r log(r)/(1-r)^2, the tail of the entropy chain;
    it decreases to 0 as r does."""
    if not 0.0 < r < 0.5:
        raise ParameterError("closing bound needs 0 < r < 1/2")
    return math.log((1 - r) / (1 - 2 * r)) - r * math.log(r) / (1 - r) ** 2


def ks_bound_audit(sys, cloud: PointCloud, mu: EmpiricalMeasure,
                   r_list=(0.3, 0.2, 0.1, 0.05), z=None):
    """Per r: build the geometric partition, check H_mu(xi) against the
    uniform bound e/(e-1)^2, and check the closing bound decreases to 0."""
    from .structure import AuditRecord

    entries = []
    ok = True
    prev_close = None
    for r in sorted(set(r_list), reverse=True):
        if r >= 1.0 / math.e or r >= 0.5:
            entries.append({"r": r, "rejected": "r must be < 1/e and < 1/2"})
            continue
        try:
            gp = geometric_partition(sys, cloud, mu, r, z=z)
        except ConstructionError as exc:
            entries.append({"r": r, "construction_error": str(exc)})
            ok = False
            continue
        H = gp.entropy(mu.weights)
        cb = closing_bound(r)
        within = H <= KSH1_BOUND + 1e-9
        decreasing = prev_close is None or cb < prev_close
        prev_close = cb
        ok = ok and within and decreasing
        entries.append({"r": r, "entropy": H, "levels": len(gp.masses),
                        "closing_bound": cb, "within_uniform_bound": within,
                        "closing_bound_decreasing": decreasing})
    return AuditRecord("ks_bound", True, ok,
                       {"uniform_bound": KSH1_BOUND, "entries": entries,
                        "cloud_size": len(cloud), "measure": mu.generator})
