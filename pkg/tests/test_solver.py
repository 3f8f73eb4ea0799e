import math
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jung_sphere import solver
from jung_sphere.geometry import PointSet, Sphere, Tolerance, contains, on_frontier
from jung_sphere.io import InstanceSpec, Shape, gen_instance
from jung_sphere.oracle import brute_force_meb
from jung_sphere.solver import (
    CaseTag,
    InvalidSupport,
    axis_shrink,
    bisector_shrink,
    classify_support,
    homothety_shrink,
    restart_pair,
    solve,
)

TETRA = [(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)]
H = math.sqrt(3) / 2
TRIANGLE = [(0, 0, 0), (1, 0, 0), (0.5, H, 0)]


def unit_circle_triangle():
    return [(math.cos(a), math.sin(a), 0.0) for a in (0, 2 * math.pi / 3, 4 * math.pi / 3)]


def test_homothety_example():
    ps = PointSet.from_points([(1, 0, 0), (-0.5, 0, 0)])
    s, p2 = homothety_shrink(Sphere((0, 0, 0), 1.0), 0, ps)
    # |-0.5 - (1 - k)| = k  ->  k = 0.75
    np.testing.assert_allclose(s.center, [0.25, 0, 0], atol=1e-15)
    assert s.radius == pytest.approx(0.75, rel=1e-15)
    assert p2 == 1


def test_homothety_single_point_and_identity():
    s, p2 = homothety_shrink(Sphere((0, 0, 0), 1.0), 0, PointSet.from_points([(1, 0, 0)]))
    assert (s.radius, p2) == (0.0, None)
    np.testing.assert_array_equal(s.center, [1, 0, 0])

    ps = PointSet.from_points([(1, 0, 0), (0, 1, 0)])
    s, p2 = homothety_shrink(Sphere((0, 0, 0), 1.0), 0, ps)
    assert p2 == 1
    assert s.radius == pytest.approx(1.0, rel=1e-15)
    np.testing.assert_allclose(s.center, [0, 0, 0], atol=1e-15)


def test_bisector_examples():
    start = Sphere((0, 0, 1), math.sqrt(2))
    ps = PointSet.from_points([(1, 0, 0), (-1, 0, 0), (0, 1.1, 0.3)])
    s, p3 = bisector_shrink(start, 0, 1, ps)
    # center (0, 0, t): t = (|P3|^2 - 1) / (2 z3) = 0.5
    np.testing.assert_allclose(s.center, [0, 0, 0.5], atol=1e-15)
    assert s.radius == pytest.approx(math.sqrt(1.25), rel=1e-15)
    assert p3 == 2

    ps = PointSet.from_points([(1, 0, 0), (-1, 0, 0), (0, 0.5, 0.5)])
    s, p3 = bisector_shrink(start, 0, 1, ps)
    np.testing.assert_allclose(s.center, [0, 0, 0], atol=1e-15)
    assert (s.radius, p3) == (1.0, None)

    ps = PointSet.from_points([(1, 0, 0), (-1, 0, 0)])
    s, p3 = bisector_shrink(start, 0, 1, ps)
    assert (s.radius, p3) == (1.0, None)


def test_axis_examples():
    tri = unit_circle_triangle()
    start = Sphere((0, 0, 1), math.sqrt(2))
    s, p4 = axis_shrink(start, 0, 1, 2, PointSet.from_points(tri + [(0, 0, 1.2)]))
    # center (0, 0, u): |P4|^2 - 2 z4 u = 1  ->  u = 11/60, r = 61/60
    np.testing.assert_allclose(s.center, [0, 0, 11 / 60], atol=1e-15)
    assert s.radius == pytest.approx(61 / 60, rel=1e-15)
    assert p4 == 3

    s, p4 = axis_shrink(start, 0, 1, 2, PointSet.from_points(tri))
    np.testing.assert_allclose(s.center, [0, 0, 0], atol=1e-15)
    assert s.radius == pytest.approx(1.0, rel=1e-15)
    assert p4 is None


def test_axis_shrink_equilateral_triangle_radius():
    ps = PointSet.from_points(TRIANGLE)
    start = Sphere((0.5, H / 3, 2.0), math.sqrt(4 + 1 / 3))
    s, p4 = axis_shrink(start, 0, 1, 2, ps)
    assert p4 is None
    assert s.radius == pytest.approx(1 / math.sqrt(3), rel=1e-14)


def test_classify_examples():
    ps = PointSet.from_points([(1, 0, 0), (-1, 0, 0)])
    assert classify_support(Sphere((0, 0, 0), 1.0), (0, 1), ps) is CaseTag.DIAMETRAL

    ps = PointSet.from_points(unit_circle_triangle())
    assert classify_support(Sphere((0, 0, 0), 1.0), (0, 1, 2), ps) is CaseTag.GREAT_CIRCLE

    ps = PointSet.from_points(TETRA)
    assert classify_support(Sphere((0, 0, 0), math.sqrt(3)), (0, 1, 2, 3), ps) is CaseTag.TETRAHEDRAL


def test_classify_restart_for_cap_support():
    theta = 0.5
    s, c = math.sin(theta), math.cos(theta)
    cap = np.array([(0, 0, 1), (s, 0, c),
                    (-s / 2, s * H, c), (-s / 2, -s * H, c)])
    # independent check: the center (origin) has a negative affine coordinate
    A = np.vstack([cap.T, np.ones(4)])
    lam = np.linalg.lstsq(A, np.array([0, 0, 0, 1.0]), rcond=None)[0]
    assert lam.min() < 0
    ps = PointSet(cap)
    assert classify_support(Sphere((0, 0, 0), 1.0), (0, 1, 2, 3), ps) is CaseTag.RESTART


def test_classify_non_terminal_small_supports():
    ps = PointSet.from_points([(1, 0, 0), (0, 1, 0)])
    assert classify_support(Sphere((0, 0, 0), 1.0), (0, 1), ps) is None
    # obtuse triangle: circumcenter outside the triangle
    ps = PointSet.from_points([(1, 0, 0), (math.cos(0.5), math.sin(0.5), 0),
                               (math.cos(2.0), math.sin(2.0), 0)])
    assert classify_support(Sphere((0, 0, 0), 1.0), (0, 1, 2), ps) is None
    # triple on a small circle of the sphere: center off the plane
    ps = PointSet.from_points(np.array(unit_circle_triangle()) * 0.6 + [0, 0, 0.8])
    assert classify_support(Sphere((0, 0, 0), 1.0), (0, 1, 2), ps) is None


def test_classify_rejects_off_frontier_support():
    ps = PointSet.from_points([(1, 0, 0), (0.5, 0, 0)])
    with pytest.raises(InvalidSupport):
        classify_support(Sphere((0, 0, 0), 1.0), (0, 1), ps)


def test_restart_pair_examples():
    assert restart_pair((0, 1, 2, 3), PointSet.from_points(TETRA)) == (0, 1)
    ps = PointSet.from_points([(0, 0, 0), (1, 0, 0), (0.5, 0.1, 0), (3, 0, 0)])
    assert restart_pair((0, 1, 2, 3), ps) == (0, 3)
    ps = PointSet.from_points([(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 1e-13)])
    assert restart_pair((0, 1, 2, 3), ps) == (0, 3)


def _min_norm_by_faces(Y):
    """Nearest hull point to the origin by enumerating every face's affine minimiser."""
    best = np.inf
    for k in range(1, min(4, len(Y)) + 1):
        for sub in combinations(range(len(Y)), k):
            P = Y[list(sub)]
            M = np.block([[P @ P.T, np.ones((k, 1))], [np.ones((1, k)), np.zeros((1, 1))]])
            try:
                lam = np.linalg.solve(M, np.r_[np.zeros(k), 1.0])[:k]
            except np.linalg.LinAlgError:
                continue
            if np.all(lam >= -1e-12):
                best = min(best, float(np.linalg.norm(lam @ P)))
    return best


def test_min_norm_point_matches_face_enumeration():
    rng = np.random.default_rng(11)
    for _ in range(60):
        Y = rng.normal(size=(int(rng.integers(2, 9)), 3)) + rng.normal(size=3)
        x, corral, w = solver._min_norm_point(Y)
        assert len(corral) <= 4
        assert np.all(w >= 0) and w.sum() == pytest.approx(1.0)
        np.testing.assert_allclose(w @ Y[corral], x, atol=1e-12)
        assert np.linalg.norm(x) == pytest.approx(_min_norm_by_faces(Y), abs=1e-10)


def test_min_norm_point_reduces_cospherical_corral():
    # eight cube corners around the origin: hull contains it, corral needs <= 4 points
    Y = np.array([(x, y, z) for x in (-1, 1) for y in (-1, 1) for z in (-1, 1)], dtype=float)
    x, corral, w = solver._min_norm_point(Y)
    assert np.linalg.norm(x) <= 1e-12
    assert len(corral) <= 4


def test_solve_examples():
    r = solve(TETRA)
    assert r.sphere.radius == pytest.approx(math.sqrt(3), abs=1e-12)
    assert r.terminal_case is CaseTag.TETRAHEDRAL
    assert sorted(r.support) == [0, 1, 2, 3]

    r = solve([(0, 0, 0), (1, 0, 0)])
    assert abs(r.sphere.radius - 0.5) <= 1e-12
    assert r.terminal_case is CaseTag.DIAMETRAL

    r = solve(TRIANGLE + [(0.5, 0.3, 0), (0.4, 0.2, 0)])
    assert r.sphere.radius == pytest.approx(1 / math.sqrt(3), abs=1e-12)
    assert r.terminal_case is CaseTag.GREAT_CIRCLE
    assert sorted(r.support) == [0, 1, 2]


def test_solve_seed_42_matches_oracle():
    ps = gen_instance(InstanceSpec(64, 42, Shape.UNIFORM_CUBE))
    r, o = solve(ps), brute_force_meb(ps)
    assert abs(r.sphere.radius - o.sphere.radius) <= 1e-7 * o.sphere.radius


def test_solve_degenerate_inputs():
    r = solve([(2, 3, 4)])
    assert r.sphere.radius == 0.0 and r.support == (0,) and r.converged
    r = solve([(2, 3, 4), (2, 3, 4), (2, 3, 4)])
    assert r.sphere.radius == 0.0
    pts = [(t, 2 * t, -t) for t in (0.0, 0.3, 1.0, 0.9, -2.0)]
    r = solve(pts)
    assert r.terminal_case is CaseTag.DIAMETRAL
    assert sorted(r.original_support) == [2, 4]
    assert r.sphere.radius == pytest.approx(1.5 * math.sqrt(6), rel=1e-14)


def _check_result(points, r, tol=Tolerance()):
    ps = PointSet(np.asarray(points, dtype=float))
    assert all(contains(r.sphere, p, tol) for p in ps.points)
    assert 1 <= len(r.support) <= 4
    assert all(on_frontier(r.sphere, ps[i], tol) for i in r.support)
    radii = [s.radius for s in r.trace if s.phase in ("homothety", "bisector", "axis")]
    for prev, cur in zip(radii, radii[1:]):
        assert cur <= prev * (1 + 1e-12)
    rr = r.restart_radii
    assert all(b < a for a, b in zip(rr, rr[1:]))


small_cloud = st.lists(
    st.tuples(*[st.floats(-10, 10, allow_nan=False)] * 3), min_size=1, max_size=14)


@settings(max_examples=150, deadline=None)
@given(small_cloud)
def test_solve_invariants_and_oracle(points):
    r = solve(points)
    _check_result(points, r)
    o = brute_force_meb(points)
    assert abs(r.sphere.radius - o.sphere.radius) <= 1e-7 * max(1.0, o.sphere.radius)
    assert o.sphere.radius <= r.sphere.radius * (1 + 1e-9) + 1e-9


@pytest.mark.parametrize("shape", list(Shape))
def test_solve_random_shapes_against_oracle(shape):
    rng = np.random.default_rng(hash(shape.value) % 2 ** 32)
    for _ in range(25):
        ps = gen_instance(InstanceSpec(int(rng.integers(4, 40)), int(rng.integers(2 ** 32)), shape))
        r = solve(ps)
        _check_result(ps.points, r)
        assert r.converged
        o = brute_force_meb(ps)
        assert abs(r.sphere.radius - o.sphere.radius) <= 1e-7 * max(1.0, o.sphere.radius)


def test_jung_bounds_on_random_clouds():
    rng = np.random.default_rng(9)
    for _ in range(100):
        pts = rng.normal(size=(int(rng.integers(2, 60)), 3))
        r = solve(pts)
        a = max(np.linalg.norm(p - q) for p in pts for q in pts)
        assert a / 2 - 1e-9 * a <= r.sphere.radius <= math.sqrt(6) / 4 * a * (1 + 1e-9)


def test_restart_instance_has_strictly_decreasing_restart_radii():
    r = solve(gen_instance(InstanceSpec(20, 42, Shape.UNIFORM_CUBE)))
    assert r.restarts >= 2 and r.converged
    rr = r.restart_radii
    assert len(rr) == r.restarts
    assert all(b < a * (1 - 1e-12) for a, b in zip(rr, rr[1:]))


def test_restart_cap_falls_back_to_oracle():
    ps = gen_instance(InstanceSpec(20, 1, Shape.UNIFORM_CUBE))
    assert solve(ps).restarts >= 1
    r = solve(ps, max_restarts=0)
    assert not r.converged
    o = brute_force_meb(ps)
    assert r.sphere.radius == o.sphere.radius
    assert r.support == o.support


def test_non_decreasing_restart_falls_back(monkeypatch):
    monkeypatch.setattr(solver, "RESTART_DECREASE", 1.0)
    ps = gen_instance(InstanceSpec(20, 42, Shape.UNIFORM_CUBE))
    r = solve(ps)
    assert not r.converged
    assert r.sphere.radius == brute_force_meb(ps).sphere.radius


def test_cap_without_oracle_returns_best_sphere(monkeypatch):
    monkeypatch.setattr(solver, "ORACLE_LIMIT", 0)
    ps = gen_instance(InstanceSpec(20, 1, Shape.UNIFORM_CUBE))
    r = solve(ps, max_restarts=0)
    assert not r.converged
    assert r.terminal_case is CaseTag.RESTART
    assert all(contains(r.sphere, p) for p in ps.points)
