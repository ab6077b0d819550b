"""Entropy estimates: zero for the rotation, log 2 for the full shift, and
the uniform geometric-partition bound with its closing term.
"""
import math

from ndistal.entropy import (closing_bound, default_partition, ks_bound_audit,
                             metric_entropy_estimate, uniform_measure,
                             word_count_entropy)
from ndistal.systems import Rotation, SkewTorus, shift2


def main():
    rot = Rotation()
    cloud = rot.sampler(256)
    est = metric_entropy_estimate(rot, default_partition(cloud, 2),
                                  uniform_measure(cloud), 200, cloud)
    print(f"{rot.id}: partition estimate {est.value:.4f} (expected 0)")

    sh = shift2()
    words = sh.periodic_cloud(13)
    est = metric_entropy_estimate(sh, default_partition(words, 2),
                                  uniform_measure(words), 10, words)
    print(f"{sh.id}: partition estimate {est.value:.6f}"
          f" vs log 2 = {math.log(2):.6f}")
    wc = word_count_entropy(sh, 12)
    print(f"{sh.id}: word-count entropy {wc.value:.6f}")

    skew = SkewTorus()
    grid = skew.sampler(64)
    rec = ks_bound_audit(skew, grid, uniform_measure(grid),
                         r_list=(0.3, 0.2, 0.1, 0.05))
    print(f"\ngeometric partition audit on {skew.id}:"
          f" passed={rec.passed}"
          f" (uniform bound {rec.details['uniform_bound']:.4f})")
    for e in rec.details["entries"]:
        print(f"  r={e['r']:<5} H={e['entropy']:.4f}"
              f"  closing bound {e['closing_bound']:.4f}"
              f"  levels {e['levels']}")
    print(f"closing bound at r=0.001: {closing_bound(0.001):.5f}")


if __name__ == "__main__":
    main()
