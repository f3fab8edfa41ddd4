"""Parsers for manifold spec strings and coordinate lists."""

from __future__ import annotations

import re

import numpy as np

from ..errors import InvalidInputError, ManifoldSpecError
from ..geometry.models import UnitVector
from .models import SPEC_PREFIXES, ManifoldPoint, ModelManifold

_SPEC_RE = re.compile(r"^(lens|cp|hp|s)(\d+)$")
_PREFIX_KINDS = {prefix: kind for kind, prefix in SPEC_PREFIXES.items()}


def parse_manifold(spec: str) -> ModelManifold:
    """Parse 's<n>', 'cp<n>', 'hp<n>' or 'lens<p>' into a manifold.

    Args:
        spec: Spec string, case-insensitive, e.g. 'S2' or 'lens7'.

    Returns:
        The matching ModelManifold.
    """
    match = _SPEC_RE.match(spec.strip().lower())
    if not match:
        raise ManifoldSpecError(f"cannot parse manifold spec {spec!r}; expected s<n>, cp<n>, hp<n> or lens<p>")
    kind = _PREFIX_KINDS[match.group(1)]
    value = int(match.group(2))
    try:
        return ModelManifold(kind, value)
    except InvalidInputError as exc:
        raise ManifoldSpecError(f"{spec!r}: {exc}") from exc


def parse_vector(text: str) -> np.ndarray:
    """Parse a comma separated list of floats."""
    parts = [p for p in re.split(r"[,\s]+", text.strip()) if p]
    if not parts:
        raise InvalidInputError("empty coordinate list")
    try:
        return np.array([float(p) for p in parts])
    except ValueError as exc:
        raise InvalidInputError(f"cannot parse coordinates {text!r}") from exc


def parse_point(manifold: ModelManifold, text: str, normalize: bool = False) -> ManifoldPoint:
    """Parse ambient lift coordinates into a point.

    Args:
        manifold: Target manifold.
        text: Comma separated coordinates of the lift.
        normalize: Rescale to unit norm instead of requiring it.
    """
    coords = parse_vector(text)
    if normalize:
        return ManifoldPoint.from_coords(manifold, coords)
    return ManifoldPoint(manifold, UnitVector(coords))
