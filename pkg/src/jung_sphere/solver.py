"""Minimal enclosing sphere by successive shrinking with frontier points pinned.

The solver starts from a mean-centred sphere touching its farthest point and
shrinks it in stages, each stage keeping the current frontier points on the
surface while moving the center straight toward the smallest sphere through
them, until another point reaches the surface:

* homothety about the anchor point (one pinned point),
* motion on the perpendicular bisector plane toward the midpoint (two),
* motion along the circumcircle axis toward the circumcenter (three).

With four frontier points the sphere is rigid; if its center lies inside the
support tetrahedron the sphere is minimal, otherwise the solver restarts from
a smaller face of frontier points and shrinks again.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .geometry import (
    DegenerateSupport,
    PointSet,
    Sphere,
    Tolerance,
    contains_all,
    initial_sphere,
    on_frontier,
    sphere_through,
)

log = logging.getLogger(__name__)

# relative radius decrease demanded between consecutive restarts
RESTART_DECREASE = 1e-12
# a pivot face whose hull comes this close (relative to r) to the center is optimal
OPTIMALITY_GAP = 1e-6
ORACLE_LIMIT = 512


class CaseTag(str, enum.Enum):
    DIAMETRAL = "Diametral"
    GREAT_CIRCLE = "GreatCircle"
    TETRAHEDRAL = "Tetrahedral"
    RESTART = "Restart"


class InvalidSupport(ValueError):
    pass


class IterationCapExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class TraceStep:
    phase: str
    radius: float
    support: tuple[int, ...]


@dataclass(frozen=True)
class MebResult:
    sphere: Sphere
    support: tuple[int, ...]
    terminal_case: CaseTag
    restarts: int
    steps: int
    converged: bool
    trace: tuple[TraceStep, ...] = ()
    original_support: tuple[int, ...] = ()

    @property
    def restart_radii(self) -> list[float]:
        return [s.radius for s in self.trace if s.phase == "restart"]


def _covering_radius(points: np.ndarray, center: np.ndarray) -> float:
    return float(np.sqrt(((points - center) ** 2).sum(axis=1).max()))


def _advance(sphere: Sphere, target: np.ndarray, support, ps: PointSet, tol: Tolerance):
    """Slide the center toward ``target`` until a non-support point hits the frontier.

    Every support point stays equidistant from the moving center, so each other
    point's squared-distance excess over the radius is linear in the travel
    parameter ``t``; its touch time is the root of that line.
    """
    pts = ps.points
    c0 = sphere.center
    d = np.asarray(target, dtype=float) - c0
    dnorm = float(np.linalg.norm(d))
    ref = pts[support[0]]
    r0sq = float(((pts[list(support)] - c0) ** 2).sum(axis=1).max())

    touched = None
    t_star = 1.0
    if dnorm > 0.0:
        excess = ((pts - c0) ** 2).sum(axis=1) - r0sq
        rate = 2.0 * ((ref - pts) @ d)
        # slower approach rates cannot push a point out by more than the band
        moving = rate > tol.eps * dnorm * np.sqrt(r0sq)
        moving[list(support)] = False
        if np.any(moving):
            idx = np.flatnonzero(moving)
            t = np.maximum(-excess[idx] / rate[idx], 0.0)
            tmin = float(t.min())
            if tmin < 1.0:
                t_star = tmin
                # simultaneous touches go to the smallest index
                touched = int(idx[t <= tmin + 1e-12][0])

    center = np.asarray(target, dtype=float) if touched is None else c0 + t_star * d
    return Sphere(center, _covering_radius(pts, center)), touched


def homothety_shrink(sphere: Sphere, anchor: int, ps: PointSet, tol: Tolerance = Tolerance()):
    """Shrink ``sphere`` about the frontier point ``anchor`` until a second point touches.

    Returns the shrunk sphere and the index of the touching point, or the
    radius-0 sphere at the anchor and ``None`` for a single point.
    """
    if len(ps) == 1:
        return Sphere(ps[anchor], 0.0), None
    return _advance(sphere, ps[anchor], (anchor,), ps, tol)


def bisector_shrink(sphere: Sphere, p1: int, p2: int, ps: PointSet, tol: Tolerance = Tolerance()):
    """Move the center toward the midpoint of ``p1 p2`` until a third point touches.

    ``None`` as second element means the diametral sphere of the pair was reached.
    """
    mid = 0.5 * (ps[p1] + ps[p2])
    return _advance(sphere, mid, (p1, p2), ps, tol)


def axis_shrink(sphere: Sphere, p1: int, p2: int, p3: int, ps: PointSet,
                tol: Tolerance = Tolerance()):
    """Move along the pencil of spheres through three frontier points toward the circumcircle.

    Raises DegenerateSupport for a collinear triple.
    """
    q = sphere_through([ps[p1], ps[p2], ps[p3]], tol).center
    return _advance(sphere, q, (p1, p2, p3), ps, tol)


def _barycentric(center: np.ndarray, verts: np.ndarray) -> np.ndarray:
    """Affine coordinates of the projection of ``center`` onto the hull's affine span."""
    edges = verts[1:] - verts[0]
    gram = edges @ edges.T
    rhs = edges @ (center - verts[0])
    lam = np.linalg.solve(gram, rhs)
    return np.concatenate([[1.0 - lam.sum()], lam])


def classify_support(sphere: Sphere, support, ps: PointSet, tol: Tolerance = Tolerance()):
    """Terminal case reached by the frontier points ``support``, or None.

    Sizes 2 and 3 return None when the configuration is not yet terminal; a
    non-terminal size-4 support is tagged Restart.
    """
    support = tuple(support)
    for i in support:
        if not on_frontier(sphere, ps[i], tol):
            raise InvalidSupport(f"point {i} is not on the frontier of {sphere!r}")
    r = sphere.radius
    verts = ps.points[list(support)]
    if len(support) == 2:
        gap = abs(np.linalg.norm(verts[0] - verts[1]) - 2.0 * r)
        return CaseTag.DIAMETRAL if gap <= 2.0 * tol.band(r) else None
    if len(support) == 3:
        normal = np.cross(verts[1] - verts[0], verts[2] - verts[0])
        nn = np.linalg.norm(normal)
        if nn == 0.0:
            return None
        if abs((sphere.center - verts[0]) @ normal) / nn > tol.band(r):
            return None
        lam = _barycentric(sphere.center, verts)
        return CaseTag.GREAT_CIRCLE if np.all(lam >= -tol.eps) else None
    if len(support) == 4:
        try:
            lam = _barycentric(sphere.center, verts)
        except np.linalg.LinAlgError:
            return CaseTag.RESTART
        return CaseTag.TETRAHEDRAL if np.all(lam >= -tol.eps) else CaseTag.RESTART
    raise InvalidSupport(f"support size {len(support)} has no case")


def restart_pair(support, ps: PointSet) -> tuple[int, int]:
    """Pair of support points at maximal distance (smallest index pair on ties)."""
    best, pair = -1.0, None
    for i, j in combinations(sorted(support), 2):
        d = float(np.linalg.norm(ps[i] - ps[j]))
        if d > best:
            best, pair = d, (i, j)
    return pair


def _min_norm_point(Y: np.ndarray, tol: float = 1e-12):
    """Wolfe's algorithm: nearest point of conv(rows of Y) to the origin.

    Returns ``(x, corral, weights)`` with ``x = weights @ Y[corral]``.
    """
    norms = (Y * Y).sum(axis=1)
    scale2 = float(norms.max()) or 1.0
    S = [int(np.argmin(norms))]
    lam = np.array([1.0])
    x = Y[S[0]].copy()
    for _ in range(10 * len(Y) + 10):
        dots = Y @ x
        j = int(np.argmin(dots))
        if x @ x - dots[j] <= tol * scale2 or j in S:
            break
        S.append(j)
        lam = np.append(lam, 0.0)
        while True:
            A = Y[S]
            k = len(S)
            M = np.zeros((k + 1, k + 1))
            M[:k, :k] = A @ A.T
            M[:k, k] = M[k, :k] = 1.0
            rhs = np.zeros(k + 1)
            rhs[k] = 1.0
            alpha = np.linalg.lstsq(M, rhs, rcond=None)[0][:k]
            if np.all(alpha > tol):
                lam = alpha
                break
            neg = alpha <= tol
            theta = min(1.0, float(np.min(lam[neg] / (lam[neg] - alpha[neg]))))
            lam = theta * alpha + (1.0 - theta) * lam
            keep = lam > tol
            if keep.all():
                keep[int(np.argmin(lam))] = False
            S = [s for s, kp in zip(S, keep) if kp]
            lam = lam[keep]
            lam = lam / lam.sum()
        S, lam = _caratheodory(Y, S, lam)
        x = lam @ Y[S]
    return x, S, lam


def _caratheodory(Y: np.ndarray, S: list[int], lam: np.ndarray):
    """Drop points from an affinely dependent corral without moving its weighted point."""
    while len(S) > 1:
        lifted = np.vstack([Y[S].T, np.ones(len(S))])
        _, sv, vt = np.linalg.svd(lifted)
        if len(S) <= lifted.shape[0] and sv[-1] > 1e-10 * sv[0]:
            break
        mu = vt[-1]
        if not np.any(mu > 0):
            mu = -mu
        pos = mu > 0
        theta = float(np.min(lam[pos] / mu[pos]))
        lam = lam - theta * mu
        drop = int(np.flatnonzero(pos)[np.argmin(lam[pos])])
        keep = np.ones(len(S), dtype=bool)
        keep[drop] = False
        S = [s for s, kp in zip(S, keep) if kp]
        lam = np.clip(lam[keep], 0.0, None)
        lam = lam / lam.sum()
    return S, lam


def _pivot(sphere: Sphere, support, ps: PointSet, tol: Tolerance):
    """Choose the face of frontier points nearest the center.

    Returns ``(face, optimal)``: when the center lies in the hull of the frontier
    points the sphere is already minimal and ``face`` certifies it; otherwise
    moving toward the circumcenter of ``face`` strictly shrinks the sphere.
    """
    pts = ps.points
    r = sphere.radius
    dist = np.linalg.norm(pts - sphere.center, axis=1)
    frontier = np.flatnonzero(dist >= r - tol.eps * r)
    frontier = np.union1d(frontier, np.asarray(support, dtype=int))
    x, corral, weights = _min_norm_point(pts[frontier] - sphere.center)
    face = [int(frontier[i]) for i in corral]
    order = {p: k for k, p in enumerate(support)}
    face.sort(key=lambda p: (order.get(p, len(order)), p))
    optimal = float(np.linalg.norm(x)) <= OPTIMALITY_GAP * r
    if not optimal and len(face) == 4:
        drop = int(np.argmin(weights))
        face = [p for k, p in enumerate(face) if k != drop]
    return face, optimal


_TAG_BY_SIZE = {1: CaseTag.DIAMETRAL, 2: CaseTag.DIAMETRAL, 3: CaseTag.GREAT_CIRCLE,
                4: CaseTag.TETRAHEDRAL}


class _Run:
    """Mutable bookkeeping of one solve; the public result is immutable."""

    def __init__(self, ps: PointSet, tol: Tolerance, max_restarts: int):
        self.ps = ps
        self.tol = tol
        self.max_restarts = max_restarts
        self.trace: list[TraceStep] = []
        self.restarts = 0
        self.steps = 0
        self.sphere: Sphere | None = None
        self.support: list[int] = []

    def record(self, phase, sphere, support, step=True):
        self.sphere = sphere
        self.support = list(support)
        if step:
            self.steps += 1
        self.trace.append(TraceStep(phase, sphere.radius, tuple(support)))

    def restart(self):
        radii = [s.radius for s in self.trace if s.phase == "restart"]
        r = self.sphere.radius
        self.restarts += 1
        self.record("restart", self.sphere, self.support, step=False)
        if self.restarts > self.max_restarts:
            raise IterationCapExceeded(f"more than {self.max_restarts} restarts")
        if radii and r >= radii[-1] * (1.0 - RESTART_DECREASE):
            raise IterationCapExceeded(
                f"restart {self.restarts} did not shrink the sphere ({r!r} >= {radii[-1]!r})")

    def result(self, tag: CaseTag, converged=True) -> MebResult:
        support = tuple(self.support)
        self.trace.append(TraceStep("terminal", self.sphere.radius, support))
        return MebResult(self.sphere, support, tag, self.restarts, self.steps, converged,
                         tuple(self.trace), tuple(self.ps.original(support)))


def _shrink_loop(run: _Run) -> MebResult:
    ps, tol = run.ps, run.tol
    sphere, anchor = initial_sphere(ps)
    run.record("initial", sphere, [anchor], step=False)
    sphere, p2 = homothety_shrink(sphere, anchor, ps, tol)
    if p2 is None:
        run.record("homothety", sphere, [anchor])
        return run.result(CaseTag.DIAMETRAL)
    run.record("homothety", sphere, [anchor, p2])

    while True:
        support = run.support
        if len(support) == 2:
            sphere, p3 = bisector_shrink(run.sphere, *support, ps, tol)
            if p3 is None:
                run.record("bisector", sphere, support)
                return run.result(CaseTag.DIAMETRAL)
            run.record("bisector", sphere, support + [p3])
            continue

        if len(support) == 3:
            try:
                sphere, p4 = axis_shrink(run.sphere, *support, ps, tol)
            except DegenerateSupport:
                # collinear triple: let the pivot pick the face to continue from
                sphere, p4 = None, None
            if p4 is not None:
                run.record("axis", sphere, support + [p4])
                continue
            if sphere is not None:
                run.record("axis", sphere, support)
                if classify_support(sphere, support, ps, tol) is CaseTag.GREAT_CIRCLE:
                    return run.result(CaseTag.GREAT_CIRCLE)
        elif len(support) == 1:
            sphere, p2 = homothety_shrink(run.sphere, support[0], ps, tol)
            run.record("homothety", sphere, support + [p2])
            continue
        else:
            if classify_support(run.sphere, support, ps, tol) is CaseTag.TETRAHEDRAL:
                return run.result(CaseTag.TETRAHEDRAL)
            i, j = restart_pair(support, ps)
            diametral = sphere_through([ps[i], ps[j]], tol)
            if contains_all(diametral, ps.points, tol):
                run.record("restart-pair", diametral, [i, j])
                return run.result(CaseTag.DIAMETRAL)

        run.restart()
        face, optimal = _pivot(run.sphere, run.support, ps, tol)
        run.record("pivot", run.sphere, face, step=False)
        if optimal:
            return run.result(_TAG_BY_SIZE[len(face)])


def solve(ps, tol: Tolerance = Tolerance(), max_restarts: int | None = None) -> MebResult:
    """Smallest sphere containing every point of ``ps``.

    ``ps`` may be a PointSet or anything convertible to an ``(n, 3)`` array.
    After ``4 n`` restarts, or a restart that fails to shrink the sphere, the
    result comes from the brute-force oracle (``n <= 512``) or is the best
    sphere found so far, with ``converged=False`` either way.
    """
    if not isinstance(ps, PointSet):
        ps = PointSet(np.asarray(ps, dtype=float).reshape(-1, 3))
    if max_restarts is None:
        max_restarts = 4 * len(ps)
    run = _Run(ps, tol, max_restarts)
    try:
        return _shrink_loop(run)
    except IterationCapExceeded as exc:
        log.warning("shrink loop gave up on %d points: %s", len(ps), exc)
        if len(ps) <= ORACLE_LIMIT:
            from .oracle import brute_force_meb

            res = brute_force_meb(ps, tol)
            return MebResult(res.sphere, res.support, res.terminal_case, run.restarts,
                             run.steps, False, tuple(run.trace), res.original_support)
        return run.result(CaseTag.RESTART, converged=False)
