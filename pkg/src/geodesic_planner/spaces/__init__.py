"""Model manifolds S^n, CP^n, HP^n and L(p;1) with their cut strata."""

from .isometry import Isometry, act_isometry, near_identity_isometry, random_isometry
from .manifolds import (
    classify_pair,
    distance,
    exp_point,
    minimal_geodesics,
    tangent_cut_time,
)
from .models import (
    FamilyDescriptor,
    GeodesicEnumeration,
    ManifoldKind,
    ManifoldPoint,
    ModelManifold,
    StratumLabel,
    StratumTag,
)
from .parser import parse_manifold, parse_point

__all__ = [
    "ModelManifold",
    "ManifoldKind",
    "ManifoldPoint",
    "StratumTag",
    "StratumLabel",
    "FamilyDescriptor",
    "GeodesicEnumeration",
    "Isometry",
    "distance",
    "minimal_geodesics",
    "classify_pair",
    "tangent_cut_time",
    "exp_point",
    "act_isometry",
    "random_isometry",
    "near_identity_isometry",
    "parse_manifold",
    "parse_point",
]
