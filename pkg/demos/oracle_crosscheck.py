"""Cross-check the shrinking solver against exhaustive enumeration.

The oracle tries every 2-, 3- and 4-point subset, so it is only usable for
small clouds, but it shares no search logic with the solver. This script
runs both on a batch of generated instances and reports the largest radius
gap, plus how often the solver had to pivot (restart) along the way.

    python demos/oracle_crosscheck.py [instances-per-shape]
"""
import sys
import time
from collections import Counter

from jung_sphere import InstanceSpec, Shape, brute_force_meb, gen_instance, solve


def main(per_shape=100):
    restarts = Counter()
    worst = 0.0
    t_solve = t_oracle = 0.0
    for shape in Shape:
        for seed in range(per_shape):
            ps = gen_instance(InstanceSpec(4 + seed % 40, seed, shape))
            t0 = time.perf_counter()
            res = solve(ps)
            t1 = time.perf_counter()
            ref = brute_force_meb(ps)
            t_solve += t1 - t0
            t_oracle += time.perf_counter() - t1
            worst = max(worst, abs(res.sphere.radius - ref.sphere.radius) / ref.sphere.radius)
            restarts[res.restarts] += 1

    total = per_shape * len(Shape)
    print(f"{total} instances, worst relative radius gap {worst:.2e}")
    print(f"solver {t_solve:.2f} s, oracle {t_oracle:.2f} s")
    for k in sorted(restarts):
        print(f"  {restarts[k]:>5} solves with {k} restart(s)")


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 100)
