"""How close do point clouds get to the Jung bound?

Solves the minimal enclosing sphere for a few hand-picked configurations and
for random clouds of each generated shape, then prints the ratio r/a next to
the bound for the cloud's dimension class. The regular tetrahedron and the
equilateral triangle sit exactly on their bounds; everything else falls
between a/2 and the bound.

    python demos/jung_bound_tour.py
"""
import math

import numpy as np

from jung_sphere import InstanceSpec, Shape, gen_instance, make_certificate, solve

CASES = {
    "pair": [(0, 0, 0), (1, 0, 0)],
    "equilateral triangle": [(0, 0, 0), (1, 0, 0), (0.5, math.sqrt(3) / 2, 0)],
    "regular tetrahedron": [(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)],
    "cube corners": [(x, y, z) for x in (0, 1) for y in (0, 1) for z in (0, 1)],
}


def describe(name, points):
    res = solve(points)
    cert = make_certificate(points, res.sphere)
    print(f"{name:<24} {res.terminal_case.value:<12} r/a = {cert.ratio:.10f}"
          f"   bound {cert.bound:.10f} ({cert.dimension_class.value})")


def main():
    print("hand-picked configurations")
    for name, pts in CASES.items():
        describe(name, pts)

    # random clouds stay strictly under the bound; the worst case is
    # reached only by sets that contain a regular simplex
    print("\nrandom clouds, 200 per shape, n = 4..64")
    rng = np.random.default_rng(0)
    for shape in Shape:
        ratios = []
        for seed in range(200):
            ps = gen_instance(InstanceSpec(int(rng.integers(4, 65)), seed, shape))
            cert = make_certificate(ps, solve(ps).sphere)
            ratios.append(cert.ratio / cert.bound)
        print(f"{shape.value:<14} ratio/bound  min {min(ratios):.4f}  max {max(ratios):.4f}")


if __name__ == "__main__":
    main()
