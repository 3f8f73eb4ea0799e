"""Jung certificates: diameter/radius bounds checked for an enclosing sphere.

For a point set of diameter ``a`` every minimal enclosing sphere satisfies
``a / 2 <= r`` and ``r <= c * a`` with ``c = 1/2`` on a line, ``1/sqrt(3)`` in
a plane and ``sqrt(6)/4`` in space.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .geometry import PointSet, Sphere, Tolerance
from .oracle import brute_force_diameter


class DimensionClass(str, enum.Enum):
    COLLINEAR = "Collinear"
    COPLANAR = "Coplanar"
    FULL3D = "Full3D"


BOUNDS = {
    DimensionClass.COLLINEAR: 0.5,
    DimensionClass.COPLANAR: 1.0 / math.sqrt(3.0),
    DimensionClass.FULL3D: math.sqrt(6.0) / 4.0,
}


class NotEnclosing(ValueError):
    """The sphere misses a point, so no bound can be certified for it."""


@dataclass(frozen=True)
class JungCertificate:
    a: float
    r: float
    ratio: float | None
    dimension_class: DimensionClass
    bound: float
    margin: float
    passed: bool

    def as_dict(self) -> dict:
        return {
            "a": self.a,
            "r": self.r,
            "ratio": self.ratio,
            "dimension_class": self.dimension_class.value,
            "bound": self.bound,
            "margin": self.margin,
            "pass": self.passed,
        }


def dimension_class(points: np.ndarray, pair: tuple[int, int], a: float,
                    tol: Tolerance = Tolerance()) -> DimensionClass:
    """Affine dimension of ``points`` under the collinearity/coplanarity thresholds.

    ``pair`` is a diameter pair, so ``a`` is the longest edge of every
    triangle or tetrahedron built on it.
    """
    if a == 0.0:
        return DimensionClass.COLLINEAR
    p, q = points[pair[0]], points[pair[1]]
    cross = np.cross(q - p, points - p)
    area2 = 0.25 * (cross * cross).sum(axis=1)
    if np.all(area2 < tol.eps ** 2 * a ** 4):
        return DimensionClass.COLLINEAR
    k = int(np.argmax(area2))
    vol = (points - p) @ np.cross(q - p, points[k] - p)
    if np.all(np.abs(vol) < tol.eps * a ** 3):
        return DimensionClass.COPLANAR
    return DimensionClass.FULL3D


def make_certificate(ps, s: Sphere, tol: Tolerance = Tolerance()) -> JungCertificate:
    if not isinstance(ps, PointSet):
        ps = PointSet(np.asarray(ps, dtype=float).reshape(-1, 3))
    pts = ps.points
    dist = np.linalg.norm(pts - s.center, axis=1)
    limit = s.radius * (1.0 + tol.eps) + tol.band(s.radius)
    if np.any(dist > limit):
        worst = int(np.argmax(dist))
        raise NotEnclosing(
            f"point {int(ps.index_map[worst])} lies {dist[worst] - s.radius:.3g} outside the sphere")

    a, pair = brute_force_diameter(ps)
    dim = dimension_class(pts, pair, a, tol)
    bound = BOUNDS[dim]
    r = s.radius
    if a == 0.0:
        ratio = None
        passed = r <= tol.eps
    else:
        ratio = r / a
        passed = r <= bound * a * (1.0 + tol.eps) and 2.0 * r >= a * (1.0 - tol.eps)
    return JungCertificate(a, r, ratio, dim, bound, bound * a - r, bool(passed))
