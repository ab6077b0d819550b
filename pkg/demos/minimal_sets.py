"""Minimal subsystems and the transitive-point audit on the annulus.

The two boundary circles are the only proper minimal subsystems; the
wandering orbit is a transitive point whose closure is the whole space.
A 3-distal transitive system admits at most 2 of them, and the audit
confirms that bound at scale.
"""
import math

from ndistal.structure import (almost_periodic_verdict, minimal_subsystems,
                               theorem_3_5_audit, transitive_check)
from ndistal.points import Annulus, OrbitIndex
from ndistal.systems import annulus3


def main():
    s = annulus3()
    cloud = s.sampler(128)
    gap = lambda d: int(math.ceil(16.0 / d))

    for x in (Annulus(0.0, 1.0), OrbitIndex(0, 0)):
        v = almost_periodic_verdict(s, x, gap_bound=gap)
        print(f"almost periodic at {x!r}: {v}")

    clusters = minimal_subsystems(s, cloud, gap_bound=gap)
    print(f"\nminimal subsystem clusters: {len(clusters)}")
    for c in clusters:
        pts = [cloud[i] for i in c.indices]
        radii = sorted({round(math.hypot(*s.embed(p)), 6) for p in pts})
        print(f"  {len(c.indices)} points, radii {radii}")

    tp = transitive_check(s, cloud)
    print(f"\ntransitive point: {tp!r}")

    rec = theorem_3_5_audit(s, 3, cloud, H=2000, gap_bound=gap)
    print(f"\naudit (at most N-1 proper minimal subsystems): "
          f"passed={rec.passed}")
    print(f"  proper minimal subsystems: {rec.details['n_minimal']}"
          f" (sizes {rec.details['minimal_sizes']})")
    print(f"  proximal verdict at scale: {rec.details['verdict']}")


if __name__ == "__main__":
    main()
