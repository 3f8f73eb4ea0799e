"""Minimal enclosing spheres in 3D with Jung-bound certificates."""

from .certificate import DimensionClass, JungCertificate, NotEnclosing, make_certificate
from .geometry import (
    DegenerateSupport,
    PointSet,
    Sphere,
    Tolerance,
    contains,
    diameter,
    distance,
    initial_sphere,
    on_frontier,
    sphere_through,
)
from .io import InstanceSpec, Shape, emit_result, gen_instance, parse_points
from .oracle import TooManyPoints, brute_force_diameter, brute_force_meb
from .solver import (
    CaseTag,
    InvalidSupport,
    IterationCapExceeded,
    MebResult,
    axis_shrink,
    bisector_shrink,
    classify_support,
    homothety_shrink,
    restart_pair,
    solve,
)

__version__ = "0.1.0"
