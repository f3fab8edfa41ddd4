"""Utility functions for Geodesic Planner.

Deterministic JSON and CSV emission and seeded generators shared by the
library and the command-line front end.
"""

from __future__ import annotations

import csv
import json
import math
from enum import Enum
from pathlib import Path
from typing import Any, TextIO

import numpy as np

from .constants import JSON_SIGNIFICANT_DIGITS


def make_rng(seed: int | np.random.Generator) -> np.random.Generator:
    """Generator for an explicit seed; generators pass through unchanged."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def format_float(value: float) -> str:
    """Format a float with 17 significant digits, JSON style.

    Non-finite values have no JSON literal and become null.
    """
    if not math.isfinite(value):
        return "null"
    text = format(value, f".{JSON_SIGNIFICANT_DIGITS}g")
    if "e" not in text and "." not in text and "inf" not in text:
        text += ".0"
    return text


def to_json(value: Any, indent: int = 2, _level: int = 0) -> str:
    """Serialize nested dicts, lists and scalars with fixed float formatting.

    Keys keep insertion order, so identical inputs give byte-identical text.
    """
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {to_json(v, indent, _level + 1)}" for k, v in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        if all(isinstance(v, (int, float, np.floating, np.integer)) and not isinstance(v, bool) for v in value):
            return "[" + ", ".join(to_json(v, indent, _level + 1) for v in value) + "]"
        items = [f"{pad}{to_json(v, indent, _level + 1)}" for v in value]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    if isinstance(value, np.ndarray):
        return to_json(value.tolist(), indent, _level)
    if isinstance(value, Enum):
        return json.dumps(value.value)
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format_float(float(value))
    if value is None:
        return "null"
    return json.dumps(str(value))


def write_document(doc: dict[str, Any], path: Path | None, stream: TextIO) -> None:
    """Write a JSON document to path, or to stream when no path is given."""
    text = to_json(doc) + "\n"
    if path is None:
        stream.write(text)
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")


def write_samples_csv(path: Path, times: np.ndarray, points: np.ndarray) -> None:
    """Write path samples as rows 'index,t,c0,...,c{d-1}'."""
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(["index", "t", *(f"c{i}" for i in range(points.shape[1]))])
        for i, (t, row) in enumerate(zip(times, points)):
            writer.writerow([i, format_float(float(t)), *(format_float(float(c)) for c in row)])
