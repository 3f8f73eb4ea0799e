"""Brute-force ground truth for the minimal enclosing sphere and the diameter.

Every support subset of size 1 to 4 is turned into its sphere; the smallest
sphere containing all points wins.  Subsets are visited by size, then
lexicographically, and a candidate only replaces the incumbent when strictly
smaller, so exact ties keep the smaller, lexicographically first support.
"""

import numba
import numpy as np

from . import _kernels
from .geometry import PointSet, Sphere, Tolerance
from .solver import CaseTag, MebResult

MAX_POINTS = 512


class TooManyPoints(ValueError):
    pass


@numba.njit(cache=True)
def _enumerate(pts, hard, eps):
    """Scan all supports; ``hard`` is a reordering of ``pts`` used only for the
    containment scan (far points first, so failing candidates exit early)."""
    n = pts.shape[0]
    best_r = np.inf
    best = np.full(4, -1, dtype=np.int64)
    center = np.zeros(3)
    if n == 1:
        best[0] = 0
        return 0.0, pts[0].copy(), best

    x, y, z = pts[:, 0], pts[:, 1], pts[:, 2]
    for i in range(n):
        for j in range(i + 1, n):
            cx, cy, cz, r = _kernels.circumsphere2(x[i], y[i], z[i], x[j], y[j], z[j])
            if r < best_r and _kernels.encloses(hard, cx, cy, cz, r, eps):
                best_r = r
                center[0], center[1], center[2] = cx, cy, cz
                best[:] = -1
                best[0], best[1] = i, j

    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                ok, cx, cy, cz, r = _kernels.circumsphere3(
                    x[i], y[i], z[i], x[j], y[j], z[j], x[k], y[k], z[k], eps)
                if ok and r < best_r and _kernels.encloses(hard, cx, cy, cz, r, eps):
                    best_r = r
                    center[0], center[1], center[2] = cx, cy, cz
                    best[:] = -1
                    best[0], best[1], best[2] = i, j, k

    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                for m in range(k + 1, n):
                    ok, cx, cy, cz, r = _kernels.circumsphere4(
                        x[i], y[i], z[i], x[j], y[j], z[j],
                        x[k], y[k], z[k], x[m], y[m], z[m], eps)
                    if ok and r < best_r and _kernels.encloses(hard, cx, cy, cz, r, eps):
                        best_r = r
                        center[0], center[1], center[2] = cx, cy, cz
                        best[0], best[1], best[2], best[3] = i, j, k, m
    return best_r, center, best


_TAGS = {1: CaseTag.DIAMETRAL, 2: CaseTag.DIAMETRAL, 3: CaseTag.GREAT_CIRCLE,
         4: CaseTag.TETRAHEDRAL}


def brute_force_meb(ps, tol: Tolerance = Tolerance()) -> MebResult:
    if not isinstance(ps, PointSet):
        ps = PointSet(np.asarray(ps, dtype=float).reshape(-1, 3))
    n = len(ps)
    if n > MAX_POINTS:
        raise TooManyPoints(f"brute force is limited to {MAX_POINTS} points, got {n}")
    pts = np.ascontiguousarray(ps.points)
    far_first = np.argsort(-np.linalg.norm(pts - pts.mean(axis=0), axis=1), kind="stable")
    r, center, best = _enumerate(pts, np.ascontiguousarray(pts[far_first]), tol.eps)
    if not np.isfinite(r):
        raise RuntimeError("no enclosing candidate found")
    support = tuple(int(i) for i in best if i >= 0)
    return MebResult(Sphere(center, r), support, _TAGS[len(support)], 0, 0, True,
                     (), tuple(ps.original(support)))


@numba.njit(cache=True)
def _diameter_loop(pts):
    n = pts.shape[0]
    best = 0.0
    bi, bj = 0, 0
    for i in range(n):
        for j in range(i + 1, n):
            d = 0.0
            for c in range(3):
                t = pts[i, c] - pts[j, c]
                d += t * t
            if d > best:
                best, bi, bj = d, i, j
    if n > 1 and best == 0.0:
        bj = 1
    return np.sqrt(best), bi, bj


def brute_force_diameter(ps) -> tuple[float, tuple[int, int]]:
    """Diameter by an explicit double loop, kept apart from the solver-side code."""
    pts = ps.points if isinstance(ps, PointSet) else np.asarray(ps, dtype=float).reshape(-1, 3)
    a, i, j = _diameter_loop(np.ascontiguousarray(pts))
    return float(a), (int(i), int(j))
