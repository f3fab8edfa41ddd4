"""Brute-force geodesic enumeration used to certify the closed forms."""

from .sampling import tangent_sphere_grid
from .shooting import (
    ComparisonResult,
    OracleCluster,
    OracleReport,
    brute_force_minimizers,
    compare_with_closed_form,
)

__all__ = [
    "OracleCluster",
    "OracleReport",
    "ComparisonResult",
    "brute_force_minimizers",
    "compare_with_closed_form",
    "tangent_sphere_grid",
]
