"""Great-circle geodesy on unit spheres and quaternion arithmetic."""

from .models import GeodesicSegment, TangentAtPoint, UnitVector
from .sphere import (
    DirectionFamily,
    LogResult,
    great_circle_distance,
    hyperplane_crossing_time,
    sphere_exp,
    sphere_log_all,
)

__all__ = [
    "UnitVector",
    "TangentAtPoint",
    "GeodesicSegment",
    "DirectionFamily",
    "LogResult",
    "great_circle_distance",
    "sphere_exp",
    "sphere_log_all",
    "hyperplane_crossing_time",
]
