"""Scalar numba kernels shared by the public primitives and the brute-force oracle.

Kernels take coordinates as scalars: slicing arrays inside the oracle's
nested loops costs more than the geometry itself.
"""

import numba
import numpy as np


@numba.njit(cache=True)
def circumsphere2(ax, ay, az, bx, by, bz):
    dx, dy, dz = bx - ax, by - ay, bz - az
    r = 0.5 * np.sqrt(dx * dx + dy * dy + dz * dz)
    return 0.5 * (ax + bx), 0.5 * (ay + by), 0.5 * (az + bz), r


@numba.njit(cache=True)
def circumsphere3(ax, ay, az, bx, by, bz, cx, cy, cz, eps):
    """Circumcircle sphere of a triangle; ``ok`` is False for a collinear triple.

    Collinear means squared area below ``eps^2 * longest_edge^4``.
    """
    ux, uy, uz = bx - ax, by - ay, bz - az
    vx, vy, vz = cx - ax, cy - ay, cz - az
    wx = uy * vz - uz * vy
    wy = uz * vx - ux * vz
    wz = ux * vy - uy * vx
    ww = wx * wx + wy * wy + wz * wz
    uu = ux * ux + uy * uy + uz * uz
    vv = vx * vx + vy * vy + vz * vz
    ex, ey, ez = cx - bx, cy - by, cz - bz
    longest2 = max(uu, vv, ex * ex + ey * ey + ez * ez)
    # squared area = ww / 4
    if longest2 == 0.0 or 0.25 * ww < eps * eps * longest2 * longest2:
        return False, 0.0, 0.0, 0.0, 0.0
    # (|u|^2 v - |v|^2 u) x w / (2 |w|^2)
    sx = uu * vx - vv * ux
    sy = uu * vy - vv * uy
    sz = uu * vz - vv * uz
    inv = 0.5 / ww
    ox = (sy * wz - sz * wy) * inv
    oy = (sz * wx - sx * wz) * inv
    oz = (sx * wy - sy * wx) * inv
    r = np.sqrt(ox * ox + oy * oy + oz * oz)
    return True, ax + ox, ay + oy, az + oz, r


@numba.njit(cache=True)
def circumsphere4(ax, ay, az, bx, by, bz, cx, cy, cz, dx, dy, dz, eps):
    """Circumsphere of a tetrahedron; ``ok`` is False for a coplanar quadruple.

    Subtracting the equidistance equation of ``a`` from the other three gives
    ``(p_i - a) . x = |p_i - a|^2 / 2`` for the offset ``x = center - a``,
    solved by Gaussian elimination with partial pivoting.  Coplanar means
    ``|det(edges)| < eps * longest_edge^3``.
    """
    r0 = (bx - ax, by - ay, bz - az, 0.0)
    r1 = (cx - ax, cy - ay, cz - az, 0.0)
    r2 = (dx - ax, dy - ay, dz - az, 0.0)
    r0 = (r0[0], r0[1], r0[2], 0.5 * (r0[0] * r0[0] + r0[1] * r0[1] + r0[2] * r0[2]))
    r1 = (r1[0], r1[1], r1[2], 0.5 * (r1[0] * r1[0] + r1[1] * r1[1] + r1[2] * r1[2]))
    r2 = (r2[0], r2[1], r2[2], 0.5 * (r2[0] * r2[0] + r2[1] * r2[1] + r2[2] * r2[2]))

    bc = (cx - bx) ** 2 + (cy - by) ** 2 + (cz - bz) ** 2
    bd = (dx - bx) ** 2 + (dy - by) ** 2 + (dz - bz) ** 2
    cd = (dx - cx) ** 2 + (dy - cy) ** 2 + (dz - cz) ** 2
    longest2 = max(2.0 * r0[3], 2.0 * r1[3], 2.0 * r2[3], bc, bd, cd)
    det = (r0[0] * (r1[1] * r2[2] - r1[2] * r2[1])
           - r0[1] * (r1[0] * r2[2] - r1[2] * r2[0])
           + r0[2] * (r1[0] * r2[1] - r1[1] * r2[0]))
    if longest2 == 0.0 or abs(det) < eps * longest2 * np.sqrt(longest2):
        return False, 0.0, 0.0, 0.0, 0.0

    # column 0
    if abs(r1[0]) > abs(r0[0]) and abs(r1[0]) >= abs(r2[0]):
        r0, r1 = r1, r0
    elif abs(r2[0]) > abs(r0[0]):
        r0, r2 = r2, r0
    f1 = r1[0] / r0[0]
    f2 = r2[0] / r0[0]
    r1 = (0.0, r1[1] - f1 * r0[1], r1[2] - f1 * r0[2], r1[3] - f1 * r0[3])
    r2 = (0.0, r2[1] - f2 * r0[1], r2[2] - f2 * r0[2], r2[3] - f2 * r0[3])
    # column 1
    if abs(r2[1]) > abs(r1[1]):
        r1, r2 = r2, r1
    f2 = r2[1] / r1[1]
    r2 = (0.0, 0.0, r2[2] - f2 * r1[2], r2[3] - f2 * r1[3])

    x2 = r2[3] / r2[2]
    x1 = (r1[3] - r1[2] * x2) / r1[1]
    x0 = (r0[3] - r0[1] * x1 - r0[2] * x2) / r0[0]
    r = np.sqrt(x0 * x0 + x1 * x1 + x2 * x2)
    return True, ax + x0, ay + x1, az + x2, r


@numba.njit(cache=True)
def encloses(points, cx, cy, cz, r, eps):
    """Early-exit containment scan using the relative tolerance band."""
    limit = r * (1.0 + eps) + eps * max(1.0, r)
    limit2 = limit * limit
    for i in range(points.shape[0]):
        dx = points[i, 0] - cx
        dy = points[i, 1] - cy
        dz = points[i, 2] - cz
        if dx * dx + dy * dy + dz * dz > limit2:
            return False
    return True
