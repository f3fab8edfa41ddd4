"""Built-in bound computations for the Grassmannian, projective and lens examples."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Any

from ..errors import UnknownExample
from .bounds import BoundTrace, cat_upper_bound, fibered_trace, symmetric_trace

_PROJECTIVE_RE = re.compile(r"^(cp|hp)n\((\d+)\)$")

BUILTIN_NAMES = ("gr2c4", "cpn(n)", "hpn(n)", "lens")


@dataclass
class BuiltinExample:
    """A prepared bound computation and its expected value."""

    name: str
    description: str
    expected: int
    bound: BoundTrace
    groups: dict[int, list[int]] = field(default_factory=dict)
    secat_bounds: list[int] = field(default_factory=list)

    @property
    def matches(self) -> bool:
        return self.bound.result == self.expected

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "description": self.description,
            "groups": {str(k): v for k, v in self.groups.items()},
            "secat_bounds": self.secat_bounds,
            "expected": self.expected,
            **self.bound.to_dict(),
        }


def _grassmannian() -> BuiltinExample:
    # A_Delta fibres over Gr_2(C^4) (dim 8) with fibre C_Delta of dim 6, 4 and 0
    base = 8
    cat0 = cat_upper_bound(base + 6, simply_connected=True)
    cat1 = cat_upper_bound(base + 4, simply_connected=True)
    cat2 = cat_upper_bound(base + 0, simply_connected=True)
    groups = {1: [cat1, cat2], 2: [cat0]}
    return BuiltinExample(
        name="gr2c4",
        description="complex Grassmannian Gr_2(C^4), rank 2",
        expected=16,
        bound=symmetric_trace(groups),
        groups=groups,
    )


def _projective(kind: str, n: int) -> BuiltinExample:
    if kind == "cp":
        # cut locus fibres over CP^n with fibre CP^{n-1}, simply connected
        dim = 2 * n + 2 * (n - 1)
        bound = cat_upper_bound(dim, simply_connected=True)
        label = f"CP^{n}"
    else:
        # fibre HP^{n-1}, total space 3-connected
        dim = 4 * n + 4 * (n - 1)
        bound = cat_upper_bound(dim, simply_connected=True, connectivity=3)
        label = f"HP^{n}"
    groups = {1: [bound]}
    return BuiltinExample(
        name=f"{kind}n({n})",
        description=f"{label}, rank 1",
        expected=2 * n + 1,
        bound=symmetric_trace(groups),
        groups=groups,
    )


def _lens() -> BuiltinExample:
    secat = [1, cat_upper_bound(4, simply_connected=False)]
    return BuiltinExample(
        name="lens",
        description="L(p;1): adjacent-tie stratum and circle stratum",
        expected=7,
        bound=fibered_trace(secat),
        secat_bounds=secat,
    )


def builtin_example(name: str) -> BuiltinExample:
    """Look up a built-in example: 'gr2c4', 'cpn(<n>)', 'hpn(<n>)' or 'lens'."""
    key = name.strip().lower()
    if key == "gr2c4":
        return _grassmannian()
    if key == "lens":
        return _lens()
    match = _PROJECTIVE_RE.match(key)
    if match and int(match.group(2)) >= 1:
        return _projective(match.group(1), int(match.group(2)))
    raise UnknownExample(f"unknown example {name!r}; choose from {', '.join(BUILTIN_NAMES)}")
