"""The system abstraction and the catalogue of example systems.

Every system is an invertible map on a compact metric space together with an
exact metric and a canonical sampler.  Analysis modules talk to systems
through ``step``/``step_inv``/``dist``/``iterate`` plus an optional
array-vectorized interface (``arr_state`` and friends) used by the
pairwise-orbit kernels; systems without an array path (conjugates) fall back
to the pointwise loops.

Catalogue (ids):
    rotation       circle rotation by alpha, embedded at y=0 on the torus
    skew_torus     (x, y) -> (x + alpha, y + x) on the 2-torus
    annulus3       two boundary circles plus one wandering orbit between them
    annulusN       boundary circles plus N-2 wandering orbits (N >= 4)
    annulus2       one circle plus an orbit approaching it in both directions
    shift2         full shift on two symbols
    identity       identity map on the torus

The default irrational angle is (sqrt(5)-1)/2.
"""

from __future__ import annotations

import itertools
import math
import re

import numpy as np
from scipy.spatial import distance as scidist

from .errors import ConjugacyError, InvalidPointError, ParameterError
from .points import (Annulus, OrbitIndex, Pair, PointCloud, SymbolicPoint,
                     Torus, circ_gap, mod1, periodic_point, symbolic_distance,
                     word_point)

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


# ---------------------------------------------------------------------------
# vectorized torus helpers
# ---------------------------------------------------------------------------

def _torus_cdist(P, Q):
    out = None
    for c in range(P.shape[1]):
        d = scidist.cdist(P[:, c:c + 1], Q[:, c:c + 1], "cityblock")
        np.minimum(d, 1.0 - d, out=d)
        d *= d
        out = d if out is None else out + d
    return np.sqrt(out, out=out)


def _torus_pdist(P):
    return _torus_cdist(P, P)


def _eucl_pdist(P):
    return scidist.cdist(P, P)


def _eucl_cdist(P, Q):
    return scidist.cdist(P, Q)


class DynSystem:
    """Invertible dynamical system on a compact metric space."""

    id: str = "?"

    # -- pointwise interface ---------------------------------------------
    def step(self, p):
        raise NotImplementedError

    def step_inv(self, p):
        raise NotImplementedError

    def dist(self, x, y) -> float:
        raise NotImplementedError

    def is_valid(self, p) -> bool:
        raise NotImplementedError

    def iterate(self, p, n: int):
        """n-fold composition of step (step_inv for n < 0); overridden in
        closed form wherever the catalogue allows it."""
        f = self.step if n >= 0 else self.step_inv
        for _ in range(abs(n)):
            p = f(p)
        return p

    def sampler(self, resolution: int, seed=None) -> PointCloud:
        raise NotImplementedError

    # -- optional array interface ------------------------------------------
    def arr_state(self, points):
        raise NotImplementedError

    def arr_step(self, state, inverse=False):
        raise NotImplementedError

    def arr_pdist(self, state):
        raise NotImplementedError

    def arr_cdist(self, sa, sb):
        raise NotImplementedError

    def arr_embed(self, state):
        """Euclidean embedding used only for nearest-neighbour snapping."""
        raise NotImplementedError

    def arr_take(self, state, idx):
        """Subset of a state array along the point axis."""
        raise NotImplementedError

    def arr_edist(self, sa, sb):
        """Elementwise distances between two equal-length states."""
        raise NotImplementedError

    def __repr__(self):
        return f"<{type(self).__name__} {self.id}>"


# ---------------------------------------------------------------------------
# torus-based systems
# ---------------------------------------------------------------------------

class _TorusBase(DynSystem):
    def dist(self, x, y):
        if not (isinstance(x, Torus) and isinstance(y, Torus)):
            raise InvalidPointError(f"{self.id}: expected torus points")
        return math.hypot(circ_gap(x.x, y.x), circ_gap(x.y, y.y))

    def is_valid(self, p):
        return isinstance(p, Torus)

    def arr_state(self, points):
        return np.array([[p.x, p.y] for p in points], dtype=float)

    def arr_pdist(self, state):
        return _torus_pdist(state)

    def arr_cdist(self, sa, sb):
        return _torus_cdist(sa, sb)

    def arr_embed(self, state):
        a = 2.0 * np.pi * state
        return np.concatenate(
            [np.cos(a), np.sin(a)], axis=1) / (2.0 * np.pi)

    def arr_take(self, state, idx):
        return state[idx]

    def arr_edist(self, sa, sb):
        d = sa - sb
        d -= np.round(d)
        return np.sqrt((d * d).sum(axis=-1))


class Rotation(_TorusBase):
    """Rigid circle rotation; lives on the y=0 circle of the torus."""

    def __init__(self, alpha=GOLDEN):
        self.alpha = float(alpha)
        self.id = f"rotation(alpha={self.alpha!r})"

    def step(self, p):
        return Torus(p.x + self.alpha, p.y)

    def step_inv(self, p):
        return Torus(p.x - self.alpha, p.y)

    def iterate(self, p, n):
        return Torus(p.x + n * self.alpha, p.y) if n else p

    def sampler(self, resolution=256, seed=None):
        if seed is None:
            pts = tuple(Torus(j / resolution, 0.0) for j in range(resolution))
            return PointCloud(pts, "grid", self.id)
        rng = np.random.default_rng(seed)
        pts = tuple(Torus(float(t), 0.0) for t in rng.random(resolution))
        return PointCloud(pts, f"random({seed})", self.id)

    def arr_step(self, state, inverse=False):
        s = state.copy()
        s[:, 0] = np.mod(s[:, 0] + (-self.alpha if inverse else self.alpha), 1.0)
        return s


class SkewTorus(_TorusBase):
    """Skew product (x, y) -> (x + alpha mod 1, y + x mod 1)."""

    def __init__(self, alpha=GOLDEN):
        self.alpha = float(alpha)
        self.id = f"skew_torus(alpha={self.alpha!r})"

    def step(self, p):
        return Torus(p.x + self.alpha, p.y + p.x)

    def step_inv(self, p):
        x = p.x - self.alpha
        return Torus(x, p.y - x)

    def iterate(self, p, n):
        # closed form: F^n(x,y) = (x + n a, y + n x + a n(n-1)/2), all mod 1;
        # for n < 0 with m = -n:     (x - m a, y - m x + a m(m+1)/2)
        if n == 0:
            return p
        if n > 0:
            return Torus(p.x + n * self.alpha,
                         p.y + n * p.x + self.alpha * (n * (n - 1) // 2))
        m = -n
        return Torus(p.x - m * self.alpha,
                     p.y - m * p.x + self.alpha * (m * (m + 1) // 2))

    def sampler(self, resolution=32, seed=None):
        if seed is None:
            pts = tuple(Torus(i / resolution, j / resolution)
                        for i in range(resolution) for j in range(resolution))
            return PointCloud(pts, "grid", self.id)
        rng = np.random.default_rng(seed)
        xy = rng.random((resolution * resolution, 2))
        pts = tuple(Torus(float(a), float(b)) for a, b in xy)
        return PointCloud(pts, f"random({seed})", self.id)

    def arr_step(self, state, inverse=False):
        s = state.copy()
        if not inverse:
            s[:, 1] = np.mod(s[:, 1] + s[:, 0], 1.0)
            s[:, 0] = np.mod(s[:, 0] + self.alpha, 1.0)
        else:
            s[:, 0] = np.mod(s[:, 0] - self.alpha, 1.0)
            s[:, 1] = np.mod(s[:, 1] - s[:, 0], 1.0)
        return s


class IdentityTorus(_TorusBase):
    id = "identity"

    def step(self, p):
        return p

    def step_inv(self, p):
        return p

    def iterate(self, p, n):
        return p

    def sampler(self, resolution=16, seed=None):
        c = SkewTorus().sampler(resolution, seed)
        return PointCloud(c.points, c.provenance, self.id)

    def arr_step(self, state, inverse=False):
        return state


# ---------------------------------------------------------------------------
# annulus systems
# ---------------------------------------------------------------------------

SQ = "sq"    # radius gap squares each step:  r_n = 1 + b**(2**n)
ABS = "abs"  # gap halves away from n=0:      r_n = 1 + 2**(-|n|)


class AnnulusSystem(DynSystem):
    """Boundary circles plus analytically defined wandering orbits.

    The angle advances by the irrational k every step on every component.
    Wandering orbits are stored as ``OrbitIndex`` points; their radii follow
    the closed forms above rather than floating iteration of (r-1)^2 + 1,
    which underflows after ~10 steps.
    """

    def __init__(self, sys_id, k, circles, orbits):
        self.id = sys_id
        self.k = float(k)
        self.circles = tuple(circles)
        self.orbits = dict(orbits)  # label -> (kind, base)

    # -- geometry ----------------------------------------------------------
    def orbit_radius(self, label, n):
        kind, base = self.orbits[label]
        if kind == SQ:
            t = 2.0 ** n if n > -1080 else 0.0
            try:
                g = base ** t
            except OverflowError:
                g = 0.0
            return 1.0 + g
        return 1.0 + 2.0 ** (-abs(n)) if abs(n) < 1080 else 1.0

    def coords(self, p):
        if isinstance(p, Annulus):
            return (p.theta, p.r)
        if isinstance(p, OrbitIndex) and p.orbit in self.orbits:
            return (mod1(p.n * self.k), self.orbit_radius(p.orbit, p.n))
        raise InvalidPointError(f"{self.id}: invalid point {p!r}")

    def embed(self, p):
        th, r = self.coords(p)
        a = 2.0 * math.pi * th
        return (r * math.cos(a), r * math.sin(a))

    def dist(self, x, y):
        ax, ay = self.embed(x), self.embed(y)
        return math.hypot(ax[0] - ay[0], ax[1] - ay[1])

    def is_valid(self, p):
        if isinstance(p, OrbitIndex):
            return p.orbit in self.orbits
        if isinstance(p, Annulus):
            return any(abs(p.r - c) <= 1e-12 for c in self.circles)
        return False

    # -- dynamics ------------------------------------------------------------
    def step(self, p):
        if isinstance(p, OrbitIndex):
            return OrbitIndex(p.n + 1, p.orbit)
        return Annulus(p.theta + self.k, p.r)

    def step_inv(self, p):
        if isinstance(p, OrbitIndex):
            return OrbitIndex(p.n - 1, p.orbit)
        return Annulus(p.theta - self.k, p.r)

    def iterate(self, p, n):
        if n == 0:
            return p
        if isinstance(p, OrbitIndex):
            return OrbitIndex(p.n + n, p.orbit)
        return Annulus(p.theta + n * self.k, p.r)

    # -- sampling --------------------------------------------------------
    def sampler(self, resolution=256, seed=None, orbit_span=40):
        if seed is None:
            pts = [Annulus(j / resolution, c)
                   for c in self.circles for j in range(resolution)]
            pts += [OrbitIndex(n, lab)
                    for lab in sorted(self.orbits)
                    for n in range(-orbit_span, orbit_span + 1)]
            return PointCloud(tuple(pts), "grid", self.id)
        rng = np.random.default_rng(seed)
        pts = [Annulus(float(t), c)
               for c in self.circles for t in rng.random(resolution)]
        pts += [OrbitIndex(int(n), lab)
                for lab in sorted(self.orbits)
                for n in rng.integers(-orbit_span, orbit_span + 1,
                                      size=min(resolution, 2 * orbit_span + 1))]
        return PointCloud(tuple(dict.fromkeys(pts)), f"random({seed})", self.id)

    def aligned_cloud(self, n_lo, n_hi, circle_pad=1):
        """Orbit points n in [n_lo, n_hi] plus circle points at the matching
        angles n*k (padded by `circle_pad` steps), closed under one step
        except at the top boundary.  Used by the quotient construction."""
        pts = [OrbitIndex(n, lab) for lab in sorted(self.orbits)
               for n in range(n_lo, n_hi + 1)]
        pts += [Annulus(n * self.k, c) for c in self.circles
                for n in range(n_lo, n_hi + 1 + circle_pad)]
        return PointCloud(tuple(pts), "grid", self.id)

    def circles_cloud(self, resolution=256):
        """Only the nonwandering boundary circles (grid angles)."""
        pts = tuple(Annulus(j / resolution, c)
                    for c in self.circles for j in range(resolution))
        return PointCloud(pts, "grid", self.id)

    # -- array interface ----------------------------------------------------
    def arr_state(self, points):
        m = len(points)
        theta = np.empty(m)
        kind = np.zeros(m, dtype=np.int8)   # 0 circle, 1 sq orbit, 2 abs orbit
        rc = np.zeros(m)
        base = np.zeros(m)
        idx = np.zeros(m)
        for i, p in enumerate(points):
            if isinstance(p, Annulus):
                theta[i], rc[i] = p.theta, p.r
            elif isinstance(p, OrbitIndex) and p.orbit in self.orbits:
                knd, b = self.orbits[p.orbit]
                theta[i] = mod1(p.n * self.k)
                kind[i] = 1 if knd == SQ else 2
                base[i] = b if knd == SQ else 0.0
                idx[i] = p.n
            else:
                raise InvalidPointError(f"{self.id}: invalid point {p!r}")
        return {"theta": theta, "kind": kind, "r": rc, "base": base, "idx": idx}

    def arr_step(self, state, inverse=False):
        s = {k: v.copy() for k, v in state.items()}
        dk = -self.k if inverse else self.k
        s["theta"] = np.mod(s["theta"] + dk, 1.0)
        mask = s["kind"] > 0
        s["idx"][mask] += -1 if inverse else 1
        return s

    def _radii(self, state):
        r = state["r"].copy()
        sq = state["kind"] == 1
        ab = state["kind"] == 2
        with np.errstate(over="ignore", under="ignore"):
            t = np.exp2(np.clip(state["idx"][sq], -1080.0, 1080.0))
            r[sq] = 1.0 + np.power(state["base"][sq], t)
            r[ab] = 1.0 + np.exp2(-np.abs(state["idx"][ab]))
        return r

    def arr_embed(self, state):
        r = self._radii(state)
        a = 2.0 * np.pi * state["theta"]
        return np.stack([r * np.cos(a), r * np.sin(a)], axis=1)

    def arr_pdist(self, state):
        return _eucl_pdist(self.arr_embed(state))

    def arr_cdist(self, sa, sb):
        return _eucl_cdist(self.arr_embed(sa), self.arr_embed(sb))

    def arr_take(self, state, idx):
        return {k: v[idx] for k, v in state.items()}

    def arr_edist(self, sa, sb):
        d = self.arr_embed(sa) - self.arr_embed(sb)
        return np.sqrt((d * d).sum(axis=-1))


def annulus3(k=GOLDEN):
    """Two circles plus one wandering orbit: 3-distal, not 2-distal."""
    return AnnulusSystem(f"annulus3(k={k!r})", k, (1.0, 2.0), {0: (SQ, 0.5)})


def annulusN(k=GOLDEN, N=5):
    """Boundary circles plus orbits p_m = (0, 1/m + 1), 2 <= m <= N-1."""
    if N < 4:
        raise ParameterError("annulusN requires N >= 4")
    orbits = {m: (SQ, 1.0 / m) for m in range(2, N)}
    return AnnulusSystem(f"annulusN(k={k!r},N={N})", k, (1.0, 2.0), orbits)


def annulus2(k=GOLDEN):
    """One circle plus an orbit approaching it both ways: 2-distal, not distal."""
    return AnnulusSystem(f"annulus2(k={k!r})", k, (1.0,), {0: (ABS, 0.5)})


# ---------------------------------------------------------------------------
# symbolic shift
# ---------------------------------------------------------------------------

class ShiftSystem(DynSystem):
    """Full shift on bi-infinite binary sequences, d(s, s') = 2^-min|i: differ|."""

    id = "shift2"

    def step(self, p):
        return p.shifted(1)

    def step_inv(self, p):
        return p.shifted(-1)

    def iterate(self, p, n):
        return p.shifted(n)

    def dist(self, x, y):
        if not (isinstance(x, SymbolicPoint) and isinstance(y, SymbolicPoint)):
            raise InvalidPointError("shift2: expected symbolic points")
        return symbolic_distance(x, y)

    def is_valid(self, p):
        return isinstance(p, SymbolicPoint)

    def sampler(self, resolution=3, seed=None):
        """All words of length 2W+1 (W = resolution) with zero fill, plus the
        two constant sequences; random sampling draws seeded cores."""
        W = resolution
        if seed is None:
            pts = [word_point(bits, -W)
                   for bits in itertools.product((0, 1), repeat=2 * W + 1)]
            pts.append(periodic_point((1,)))
            return PointCloud(tuple(dict.fromkeys(pts)), "grid", self.id)
        rng = np.random.default_rng(seed)
        pts = [word_point(tuple(int(b) for b in rng.integers(0, 2, 2 * W + 1)), -W)
               for _ in range(256)]
        return PointCloud(tuple(dict.fromkeys(pts)), f"random({seed})", self.id)

    def periodic_cloud(self, length):
        """All fully periodic sequences of (not necessarily primitive) period
        `length`; exactly shift-invariant, used by the entropy estimators."""
        pts = tuple(periodic_point(bits)
                    for bits in itertools.product((0, 1), repeat=length))
        return PointCloud(pts, "grid", self.id)


def shift2():
    return ShiftSystem()


# ---------------------------------------------------------------------------
# constructors: product, power, conjugate
# ---------------------------------------------------------------------------

class ProductSystem(DynSystem):
    """Direct product with the max metric d((x1,y1),(x2,y2)) =
    max(d1(x1,x2), d2(y1,y2))."""

    def __init__(self, f, g):
        self.f = f
        self.g = g
        self.id = f"product[{f.id} x {g.id}]"

    def step(self, p):
        return Pair(self.f.step(p.a), self.g.step(p.b))

    def step_inv(self, p):
        return Pair(self.f.step_inv(p.a), self.g.step_inv(p.b))

    def iterate(self, p, n):
        return Pair(self.f.iterate(p.a, n), self.g.iterate(p.b, n))

    def dist(self, x, y):
        return max(self.f.dist(x.a, y.a), self.g.dist(x.b, y.b))

    def is_valid(self, p):
        return isinstance(p, Pair) and self.f.is_valid(p.a) and self.g.is_valid(p.b)

    def sampler(self, resolution=16, seed=None):
        ca = self.f.sampler(resolution, seed)
        cb = self.g.sampler(resolution, None if seed is None else seed + 1)
        pts = tuple(Pair(a, b) for a in ca.points for b in cb.points)
        return PointCloud(pts, "grid" if seed is None else f"random({seed})",
                          self.id)

    def cross(self, cloud_a, cloud_b):
        pts = tuple(Pair(a, b) for a in cloud_a.points for b in cloud_b.points)
        return PointCloud(pts, "grid", self.id)

    def arr_state(self, points):
        return (self.f.arr_state([p.a for p in points]),
                self.g.arr_state([p.b for p in points]))

    def arr_step(self, state, inverse=False):
        return (self.f.arr_step(state[0], inverse),
                self.g.arr_step(state[1], inverse))

    def arr_pdist(self, state):
        return np.maximum(self.f.arr_pdist(state[0]), self.g.arr_pdist(state[1]))

    def arr_cdist(self, sa, sb):
        return np.maximum(self.f.arr_cdist(sa[0], sb[0]),
                          self.g.arr_cdist(sa[1], sb[1]))

    def arr_embed(self, state):
        return np.concatenate([self.f.arr_embed(state[0]),
                               self.g.arr_embed(state[1])], axis=1)

    def arr_take(self, state, idx):
        return (self.f.arr_take(state[0], idx), self.g.arr_take(state[1], idx))

    def arr_edist(self, sa, sb):
        return np.maximum(self.f.arr_edist(sa[0], sb[0]),
                          self.g.arr_edist(sa[1], sb[1]))


def product_system(f, g):
    return ProductSystem(f, g)


class PowerSystem(DynSystem):
    def __init__(self, f, k):
        if k == 0:
            raise ParameterError("power_system requires k != 0")
        self.f = f
        self.k = int(k)
        self.id = f"power[{f.id}^{k}]"

    def step(self, p):
        return self.f.iterate(p, self.k)

    def step_inv(self, p):
        return self.f.iterate(p, -self.k)

    def iterate(self, p, n):
        return self.f.iterate(p, self.k * n)

    def dist(self, x, y):
        return self.f.dist(x, y)

    def is_valid(self, p):
        return self.f.is_valid(p)

    def sampler(self, resolution=16, seed=None):
        c = self.f.sampler(resolution, seed)
        return PointCloud(c.points, c.provenance, self.id)

    def arr_state(self, points):
        return self.f.arr_state(points)

    def arr_step(self, state, inverse=False):
        fwd = (self.k > 0) != inverse
        for _ in range(abs(self.k)):
            state = self.f.arr_step(state, inverse=not fwd)
        return state

    def arr_pdist(self, state):
        return self.f.arr_pdist(state)

    def arr_cdist(self, sa, sb):
        return self.f.arr_cdist(sa, sb)

    def arr_embed(self, state):
        return self.f.arr_embed(state)

    def arr_take(self, state, idx):
        return self.f.arr_take(state, idx)

    def arr_edist(self, sa, sb):
        return self.f.arr_edist(sa, sb)


def power_system(f, k):
    return PowerSystem(f, k)


class ConjugateSystem(DynSystem):
    """h o f o h^-1 with the metric of the target space (default: f's)."""

    def __init__(self, f, h, h_inv, check_cloud=None, metric=None, tol=1e-9):
        self.f = f
        self.h = h
        self.h_inv = h_inv
        self._metric = metric or f.dist
        self.id = f"conjugate[{f.id}]"
        if check_cloud is not None:
            for p in check_cloud.points:
                if self._metric(h(h_inv(p)), p) > tol or \
                        f.dist(h_inv(h(p)), p) > tol:
                    raise ConjugacyError(
                        "h and h_inv are not mutually inverse on the cloud")

    def step(self, p):
        return self.h(self.f.step(self.h_inv(p)))

    def step_inv(self, p):
        return self.h(self.f.step_inv(self.h_inv(p)))

    def iterate(self, p, n):
        return self.h(self.f.iterate(self.h_inv(p), n)) if n else p

    def dist(self, x, y):
        return self._metric(x, y)

    def is_valid(self, p):
        try:
            return self.f.is_valid(self.h_inv(p))
        except (InvalidPointError, ValueError):
            return False

    def sampler(self, resolution=16, seed=None):
        c = self.f.sampler(resolution, seed)
        return PointCloud(tuple(self.h(p) for p in c.points),
                          c.provenance, self.id)


def conjugate_system(f, h, h_inv, check_cloud=None, metric=None):
    return ConjugateSystem(f, h, h_inv, check_cloud=check_cloud, metric=metric)


# ---------------------------------------------------------------------------
# catalogue
# ---------------------------------------------------------------------------

CATALOGUE_FACTS = {
    "rotation": "distal (isometry), minimal, equicontinuous; Omega=AP=X; "
                "0 proper minimal subsystems",
    "skew_torus": "distal, minimal, not N-equicontinuous for any N; "
                  "Omega=AP=X; zero entropy",
    "annulus3": "3-distal, not 2-distal; transitive; 2 minimal subsystems "
                "(the two circles); Omega = circles = AP",
    "annulusN": "N-distal, not (N-1)-distal; 2 minimal subsystems; "
                "Omega = circles = AP",
    "annulus2": "2-distal, not distal; 1 minimal subsystem; Omega = circle = AP",
    "shift2": "expansive, not N-distal for any N; transitive; "
              "positive entropy log 2",
    "identity": "distal (1-distal), every point periodic with period 1",
}

_BUILDERS = {
    "rotation": lambda alpha=GOLDEN: Rotation(alpha),
    "skew_torus": lambda alpha=GOLDEN: SkewTorus(alpha),
    "annulus3": lambda k=GOLDEN: annulus3(k),
    "annulusN": lambda k=GOLDEN, N=5: annulusN(k, int(N)),
    "annulus2": lambda k=GOLDEN: annulus2(k),
    "shift2": lambda: shift2(),
    "identity": lambda: IdentityTorus(),
}


def catalogue():
    """One instance of every example system with default parameters."""
    return [b() for b in _BUILDERS.values()]


_SPEC_RE = re.compile(r"^(\w+)(?:\{(.*)\})?$")


def get_system(spec: str) -> DynSystem:
    """Build a catalogue system from 'name' or 'name{key=value,...}'."""
    m = _SPEC_RE.match(spec.strip())
    if not m or m.group(1) not in _BUILDERS:
        raise ParameterError(f"unknown system spec {spec!r}")
    name, args = m.group(1), {}
    if m.group(2):
        for kv in m.group(2).split(","):
            k, _, v = kv.partition("=")
            if not _:
                raise ParameterError(f"bad parameter {kv!r} in {spec!r}")
            args[k.strip()] = float(v) if "." in v or "e" in v.lower() else int(v)
    try:
        return _BUILDERS[name](**args)
    except TypeError as exc:
        raise ParameterError(f"bad parameters for {name}: {exc}") from exc
