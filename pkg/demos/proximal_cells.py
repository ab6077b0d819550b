"""Proximal cells on the two-circle annulus and its five-orbit variant.

The wandering orbit converges to the inner circle forward in time and to
the outer circle backward, so its proximal cell picks up one point on each
circle while the circle points themselves stay distal.
"""
from ndistal.points import Annulus, OrbitIndex
from ndistal.proximal import distality_report, proximal_cell
from ndistal.systems import annulus3, annulusN


def main():
    s = annulus3()
    cloud = s.sampler(128)
    rep = distality_report(s, cloud, H=200, eps_prox=1e-3)
    print(f"system: {s.id}")
    print(f"cloud: {len(cloud)} points, horizon 200, eps 1e-3")
    print(f"verdict: {rep.verdict} (max cell size {rep.max_cell_size})")

    p = OrbitIndex(0, 0)
    cell = rep.cells[cloud.index_of(p)]
    print(f"\ncell at {p!r}:")
    for j in cell.members:
        print(f"  {cloud[j]!r:32}  min orbit distance "
              f"{cell.min_dist_trace[j]:.3e}")

    z = Annulus(0.25, 1.0)
    cell = rep.cells[cloud.index_of(z)]
    print(f"\ncell at the circle point {z!r}: "
          f"{[repr(cloud[j]) for j in cell.members]}")

    s5 = annulusN(N=5)
    cloud5 = s5.sampler(64, orbit_span=20)
    cell = proximal_cell(s5, OrbitIndex(0, 2), cloud5, H=200, eps_prox=1e-3)
    print(f"\n{s5.id}, cell at (theta=0, r=3/2):")
    for j in cell.members:
        print(f"  {cloud5[j]!r}")


if __name__ == "__main__":
    main()
