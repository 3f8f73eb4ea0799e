"""Geometric primitives: points, spheres, point sets and tolerance-aware predicates.

Points are plain ``float64`` arrays of shape ``(3,)``.  All predicates share a
single relative tolerance ``eps`` scaled by ``max(1, radius)`` so that
containment, frontier and degeneracy tests stay mutually consistent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import _kernels

DEFAULT_EPS = 1e-9


class DegenerateSupport(ValueError):
    """Support points are collinear/coplanar (or coincident) within tolerance."""


@dataclass(frozen=True)
class Tolerance:
    eps: float = DEFAULT_EPS

    def __post_init__(self):
        if not (0.0 < self.eps < 1e-3):
            raise ValueError(f"eps must lie in (0, 1e-3), got {self.eps!r}")

    def band(self, radius: float) -> float:
        """Absolute width of the frontier band around a sphere of ``radius``."""
        return self.eps * max(1.0, radius)


def as_point(p) -> np.ndarray:
    """Validate and convert ``p`` to a read-only ``(3,)`` float array."""
    arr = np.array(p, dtype=float).reshape(-1)
    if arr.shape != (3,):
        raise ValueError(f"a point needs exactly 3 coordinates, got {arr.shape[0]}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"non-finite coordinate in {p!r}")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class Sphere:
    center: np.ndarray
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", as_point(self.center))
        r = float(self.radius)
        if not np.isfinite(r) or r < 0.0:
            raise ValueError(f"radius must be finite and >= 0, got {self.radius!r}")
        object.__setattr__(self, "radius", r)

    def scaled(self, s: float) -> "Sphere":
        return Sphere(self.center * s, self.radius * s)

    def __repr__(self):
        c = ", ".join(f"{v:.6g}" for v in self.center)
        return f"Sphere(center=({c}), radius={self.radius:.10g})"


@dataclass(frozen=True)
class PointSet:
    """Ordered, exactly-deduplicated points with their original input indices."""

    points: np.ndarray
    index_map: np.ndarray = field(default=None)

    def __post_init__(self):
        pts = np.array(self.points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 3:
            raise ValueError(f"points must have shape (n, 3), got {pts.shape}")
        if pts.shape[0] == 0:
            raise ValueError("a point set must not be empty")
        if not np.all(np.isfinite(pts)):
            raise ValueError("point coordinates must be finite")
        idx = (np.arange(pts.shape[0]) if self.index_map is None
               else np.array(self.index_map, dtype=np.int64))
        if idx.shape != (pts.shape[0],):
            raise ValueError("index_map must have one entry per point")
        # + 0.0 folds -0.0 into 0.0 so both spellings dedupe together
        _, first = np.unique(pts + 0.0, axis=0, return_index=True)
        keep = np.sort(first)
        pts = np.ascontiguousarray(pts[keep])
        idx = idx[keep]
        pts.setflags(write=False)
        idx.setflags(write=False)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "index_map", idx)

    @classmethod
    def from_points(cls, points: Iterable[Sequence[float]]) -> "PointSet":
        return cls(np.array(list(points), dtype=float).reshape(-1, 3))

    def __len__(self):
        return self.points.shape[0]

    def __getitem__(self, i) -> np.ndarray:
        return self.points[i]

    def original(self, indices: Iterable[int]) -> list[int]:
        return [int(self.index_map[i]) for i in indices]


def distance(p, q) -> float:
    # hypot rescales, so tiny separations do not underflow to 0
    return math.hypot(*(np.asarray(p, dtype=float) - np.asarray(q, dtype=float)))


def diameter(ps: PointSet, block: int = 128) -> tuple[float, tuple[int, int]]:
    """Largest pairwise distance and the lexicographically first pair attaining it."""
    pts = ps.points
    n = len(pts)
    if n == 1:
        return 0.0, (0, 0)
    best, pair = -1.0, (0, 1)
    for start in range(0, n, block):
        rows = pts[start:start + block]
        d2 = ((rows[:, None, :] - pts[None, :, :]) ** 2).sum(axis=2)
        # only j > i
        ii = np.arange(start, start + len(rows))[:, None]
        d2[np.arange(n)[None, :] <= ii] = -1.0
        flat = int(np.argmax(d2))  # row-major: first max is the smallest (i, j)
        i, j = divmod(flat, n)
        if d2[i, j] > best:
            best, pair = float(d2[i, j]), (start + i, j)
    i, j = pair
    return distance(pts[i], pts[j]), pair


def sphere_through(support, tol: Tolerance = Tolerance()) -> Sphere:
    """Smallest sphere with all 1-4 given points on its frontier.

    Two points give the diametral sphere, three the sphere of the circumcircle
    (center in the triangle's plane), four the circumsphere.
    """
    pts = [as_point(p) for p in support]
    if len(pts) == 1:
        return Sphere(pts[0], 0.0)
    if len(pts) == 2:
        if np.array_equal(pts[0], pts[1]):
            raise DegenerateSupport("coincident support points")
        *c, r = _kernels.circumsphere2(*pts[0], *pts[1])
        return Sphere(c, r)
    if len(pts) == 3:
        ok, *c, r = _kernels.circumsphere3(*pts[0], *pts[1], *pts[2], tol.eps)
        if not ok:
            raise DegenerateSupport("collinear support triple")
        return Sphere(c, r)
    if len(pts) == 4:
        ok, *c, r = _kernels.circumsphere4(*pts[0], *pts[1], *pts[2], *pts[3], tol.eps)
        if not ok:
            raise DegenerateSupport("coplanar support quadruple")
        return Sphere(c, r)
    raise ValueError(f"support must have 1 to 4 points, got {len(pts)}")


def contains(s: Sphere, p, tol: Tolerance = Tolerance()) -> bool:
    return distance(s.center, p) <= s.radius * (1.0 + tol.eps) + tol.band(s.radius)


def contains_all(s: Sphere, points: np.ndarray, tol: Tolerance = Tolerance()) -> bool:
    d = np.linalg.norm(np.asarray(points) - s.center, axis=1)
    return bool(np.all(d <= s.radius * (1.0 + tol.eps) + tol.band(s.radius)))


def on_frontier(s: Sphere, p, tol: Tolerance = Tolerance()) -> bool:
    return abs(distance(s.center, p) - s.radius) <= tol.band(s.radius)


def initial_sphere(ps: PointSet) -> tuple[Sphere, int]:
    """Mean-centred enclosing sphere whose radius is set by its farthest point (the anchor)."""
    center = ps.points.mean(axis=0)
    d = np.linalg.norm(ps.points - center, axis=1)
    anchor = int(np.argmax(d))
    return Sphere(center, float(d[anchor])), anchor
