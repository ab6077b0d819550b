"""N-diameter (max-min dispersion): exact branch-and-bound values against
the 2-approximate greedy bounds, and the shrinking N-diameter of an orbit
image that certifies equicontinuity at scale.
"""
import math

import numpy as np

from ndistal.equicont import r_set
from ndistal.ndiameter import diam_n_bounds, diam_n_exact
from ndistal.systems import annulus3


def euclid(a, b):
    return math.dist(a, b)


def main():
    rng = np.random.default_rng(0)
    pts = [tuple(p) for p in rng.random((40, 2))]
    print("40 random points in the unit square:")
    for N in (1, 2, 3, 4):
        exact = diam_n_exact(pts, euclid, N)
        bounds = diam_n_bounds(pts, euclid, N)
        print(f"  diam_{N}: exact {exact.value:.4f}  greedy bracket"
              f" [{bounds.value_lower:.4f}, {bounds.value_upper:.4f}]"
              f"  witness {exact.witness}")

    s = annulus3()
    cloud = s.sampler(128)
    x = cloud[0]
    print(f"\nR_delta({x!r}) on {s.id}, N-diameter of the return set:")
    for delta in (0.2, 0.1, 0.05):
        est = r_set(s, x, delta, cloud, H=200)
        members = [cloud[i] for i in est.members]
        dn = diam_n_exact(members, s.dist, 3)
        print(f"  delta={delta:<5} |R|={len(members):<4}"
              f" diam_3 = {dn.value:.4f}")


if __name__ == "__main__":
    main()
