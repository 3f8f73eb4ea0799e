"""Point-cloud parsing, canonical result JSON and deterministic instance generation."""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass

import numpy as np

from .certificate import JungCertificate
from .geometry import PointSet, Sphere
from .solver import MebResult

GENERATOR_ID = "numpy-pcg64/jung-sphere-gen-1"


class ParseError(ValueError):
    pass


class EmptyInput(ParseError):
    pass


class NonFiniteCoordinate(ParseError):
    pass


def _coordinate(token, where: str) -> float:
    if isinstance(token, bool) or not isinstance(token, (int, float, str)):
        raise ParseError(f"{where}: expected a number, got {token!r}")
    try:
        value = float(token)
    except ValueError:
        raise ParseError(f"{where}: cannot read {token!r} as a number") from None
    if not math.isfinite(value):
        raise NonFiniteCoordinate(f"{where}: non-finite coordinate {token!r}")
    return value


def _parse_csv(text: str) -> list[list[float]]:
    rows = []
    header_allowed = True
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = [f.strip() for f in line.split(",")]
        if header_allowed and [f.lower() for f in fields] == ["x", "y", "z"]:
            header_allowed = False
            continue
        header_allowed = False
        if len(fields) != 3:
            raise ParseError(f"line {lineno}: expected 3 fields, got {len(fields)}")
        rows.append([_coordinate(f, f"line {lineno}") for f in fields])
    return rows


def _parse_json(text: str) -> list[list[float]]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict) or "points" not in doc:
        raise ParseError('expected an object with a "points" field')
    if not isinstance(doc["points"], list):
        raise ParseError('"points" must be an array')
    rows = []
    for k, item in enumerate(doc["points"]):
        if not isinstance(item, list) or len(item) != 3:
            raise ParseError(f"points[{k}]: expected an array of 3 numbers")
        rows.append([_coordinate(v, f"points[{k}][{c}]") for c, v in enumerate(item)])
    return rows


def parse_points(data: bytes | str, format: str = "csv") -> PointSet:
    """Read a point cloud; duplicates are dropped, first occurrences keep their index."""
    text = data.decode("utf-8") if isinstance(data, (bytes, bytearray)) else data
    if format == "csv":
        rows = _parse_csv(text)
    elif format == "json":
        rows = _parse_json(text)
    else:
        raise ValueError(f"unknown format {format!r}")
    if not rows:
        raise EmptyInput("no points in input")
    return PointSet(np.array(rows, dtype=float))


def parse_sphere(data: bytes | str) -> Sphere:
    """Read ``{"center": [x, y, z], "radius": r}`` (extra keys, e.g. a full result, are ignored)."""
    text = data.decode("utf-8") if isinstance(data, (bytes, bytearray)) else data
    try:
        doc = json.loads(text)
        center = [_coordinate(v, f"center[{i}]") for i, v in enumerate(doc["center"])]
        radius = _coordinate(doc["radius"], "radius")
        return Sphere(center, radius)
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"cannot read sphere: {exc}") from None


def fmt(x) -> str:
    """17 significant digits; integers, booleans and None in JSON spelling."""
    if x is None:
        return "null"
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x) + 0.0, ".17g")


def _array(values) -> str:
    return "[" + ",".join(fmt(v) for v in values) + "]"


def _object(pairs) -> str:
    return "{" + ",".join(f"{json.dumps(k)}:{v}" for k, v in pairs) + "}"


def certificate_json(c: JungCertificate) -> str:
    return _object([
        ("a", fmt(c.a)),
        ("r", fmt(c.r)),
        ("ratio", fmt(c.ratio)),
        ("dimension_class", json.dumps(c.dimension_class.value)),
        ("bound", fmt(c.bound)),
        ("margin", fmt(c.margin)),
        ("pass", fmt(c.passed)),
    ])


def emit_result(r: MebResult, c: JungCertificate) -> bytes:
    body = _object([
        ("center", _array(r.sphere.center)),
        ("radius", fmt(r.sphere.radius)),
        ("support", _array(r.original_support or r.support)),
        ("terminal_case", json.dumps(r.terminal_case.value)),
        ("restarts", fmt(r.restarts)),
        ("steps", fmt(r.steps)),
        ("converged", fmt(r.converged)),
        ("certificate", certificate_json(c)),
    ])
    return (body + "\n").encode("ascii")


def emit_verification(s: Sphere, c: JungCertificate) -> bytes:
    body = _object([
        ("center", _array(s.center)),
        ("radius", fmt(s.radius)),
        ("certificate", certificate_json(c)),
    ])
    return (body + "\n").encode("ascii")


class Shape(str, enum.Enum):
    UNIFORM_CUBE = "UniformCube"
    SPHERE_SURFACE = "SphereSurface"
    CLUSTERED = "Clustered"
    COPLANAR = "Coplanar"
    COLLINEAR = "Collinear"


@dataclass(frozen=True)
class InstanceSpec:
    n: int
    seed: int = 0
    shape: Shape = Shape.UNIFORM_CUBE
    scale: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "shape", Shape(self.shape))
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if not (self.scale > 0 and math.isfinite(self.scale)):
            raise ValueError("scale must be positive")


def _orthonormal_frame(rng: np.random.Generator) -> np.ndarray:
    q, _ = np.linalg.qr(rng.standard_normal((3, 3)))
    return q.T


def gen_instance(spec: InstanceSpec) -> PointSet:
    """Deterministic pseudorandom points; same spec, same bytes."""
    rng = np.random.Generator(np.random.PCG64(spec.seed))
    n, s = spec.n, spec.scale
    if spec.shape is Shape.UNIFORM_CUBE:
        pts = rng.uniform(0.0, s, size=(n, 3))
    elif spec.shape is Shape.SPHERE_SURFACE:
        v = rng.standard_normal((n, 3))
        pts = s * v / np.linalg.norm(v, axis=1, keepdims=True)
    elif spec.shape is Shape.CLUSTERED:
        k = int(rng.integers(1, 5))
        centers = rng.uniform(0.0, s, size=(k, 3))
        labels = rng.integers(0, k, size=n)
        pts = centers[labels] + rng.normal(0.0, 0.05 * s, size=(n, 3))
    elif spec.shape is Shape.COPLANAR:
        origin = rng.uniform(0.0, s, size=3)
        frame = _orthonormal_frame(rng)
        uv = rng.uniform(-0.5 * s, 0.5 * s, size=(n, 2))
        pts = origin + uv @ frame[:2]
    else:
        origin = rng.uniform(0.0, s, size=3)
        direction = _orthonormal_frame(rng)[0]
        pts = origin + rng.uniform(-0.5 * s, 0.5 * s, size=(n, 1)) * direction
    return PointSet(pts)


def instance_header(spec: InstanceSpec) -> str:
    return (f"# generator={GENERATOR_ID} shape={spec.shape.value} n={spec.n} "
            f"seed={spec.seed} scale={fmt(spec.scale)}")


def points_to_csv(ps: PointSet, header: str | None = None) -> bytes:
    lines = [header] if header else []
    lines.append("x,y,z")
    lines.extend(",".join(fmt(v) for v in p) for p in ps.points)
    return ("\n".join(lines) + "\n").encode("ascii")
