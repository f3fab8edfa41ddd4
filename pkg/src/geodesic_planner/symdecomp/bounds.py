"""Upper-bound arithmetic for geodesic complexity."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Mapping, Sequence

from ..errors import EmptyInput, InvalidInputError, MissingCardinality


def cat_upper_bound(dim: int, simply_connected: bool, connectivity: int | None = None) -> int:
    """Dimensional upper bound on the Lusternik-Schnirelmann category.

    floor(dim / (c + 1)) + 1 for a c-connected space; c = 1 when simply
    connected and c = 0 otherwise unless given explicitly.
    """
    if dim < 0:
        raise InvalidInputError(f"dimension must be nonnegative, got {dim}")
    if connectivity is None:
        connectivity = 1 if simply_connected else 0
    if connectivity < 0:
        raise InvalidInputError(f"connectivity must be nonnegative, got {connectivity}")
    return dim // (connectivity + 1) + 1


def _check_bounds(values: Sequence[int]) -> None:
    for value in values:
        if int(value) != value or value < 1:
            raise InvalidInputError(f"sectional category bounds must be positive integers, got {value!r}")


def gc_upper_bound_fibered(secat_bounds: Sequence[int]) -> int:
    """Sum of the sectional category bounds of every piece, plus one."""
    if not secat_bounds:
        raise EmptyInput("at least one sectional category bound is required")
    _check_bounds(secat_bounds)
    return int(sum(secat_bounds)) + 1


@dataclass
class BoundTrace:
    """Result of a bound evaluation with its arithmetic."""

    result: int
    trace: list[int | str] = field(default_factory=list)

    def to_dict(self) -> dict[str, Any]:
        return {"result": self.result, "trace": list(self.trace)}


def _check_groups(groups: Mapping[int, Sequence[int]]) -> None:
    if set(groups) != set(range(1, len(groups) + 1)) or not groups:
        raise MissingCardinality(f"cardinalities must be exactly 1..r, got {sorted(groups)}")
    for i, values in groups.items():
        if not values:
            raise MissingCardinality(f"cardinality {i} has no bounds")
        _check_bounds(values)


def symmetric_trace(groups: Mapping[int, Sequence[int]]) -> BoundTrace:
    """Evaluate sum_i max(groups[i]) + 1, recording each maximum.

    Maxima are listed from the largest cardinality down, followed by '+1'.
    """
    _check_groups(groups)
    maxima = [int(max(groups[i])) for i in sorted(groups, reverse=True)]
    return BoundTrace(result=sum(maxima) + 1, trace=[*maxima, "+1"])


def gc_upper_bound_symmetric(groups: Mapping[int, Sequence[int]]) -> int:
    """Sum over cardinalities of the largest sectional category bound, plus one."""
    return symmetric_trace(groups).result


def fibered_trace(secat_bounds: Sequence[int]) -> BoundTrace:
    result = gc_upper_bound_fibered(secat_bounds)
    return BoundTrace(result=result, trace=[*(int(v) for v in secat_bounds), "+1"])
