"""Root-system combinatorics and geodesic complexity bound arithmetic."""

from .bounds import (
    BoundTrace,
    cat_upper_bound,
    gc_upper_bound_fibered,
    gc_upper_bound_symmetric,
    symmetric_trace,
)
from .builtins import BuiltinExample, builtin_example
from .roots import (
    DeltaSubset,
    RootSystemInput,
    enumerate_D,
    group_by_cardinality,
    root_system,
    s_delta_dim,
)

__all__ = [
    "RootSystemInput",
    "DeltaSubset",
    "enumerate_D",
    "group_by_cardinality",
    "s_delta_dim",
    "root_system",
    "cat_upper_bound",
    "gc_upper_bound_fibered",
    "gc_upper_bound_symmetric",
    "symmetric_trace",
    "BoundTrace",
    "BuiltinExample",
    "builtin_example",
]
