"""Tests for JSON/CSV emission and run configuration."""

from __future__ import annotations

import argparse
import io
import json
import math
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from geodesic_planner.config import RunConfig
from geodesic_planner.constants import DEFAULT_SEED, TIE_TOL
from geodesic_planner.spaces import StratumTag
from geodesic_planner.utils import format_float, make_rng, to_json, write_document, write_samples_csv


class TestFormatFloat:
    @pytest.mark.parametrize(
        "value, expected",
        [(0.0, "0.0"), (1.0, "1.0"), (-2.0, "-2.0"), (0.1, "0.10000000000000001"), (0.5, "0.5"), (1e20, "1e+20")],
    )
    def test_values(self, value, expected):
        assert format_float(value) == expected

    @pytest.mark.parametrize("value", [math.inf, -math.inf, math.nan])
    def test_non_finite(self, value):
        assert format_float(value) == "null"

    @given(st.floats(allow_nan=False, allow_infinity=False))
    @settings(max_examples=200)
    def test_exact_round_trip(self, value):
        assert float(format_float(value)) == value


class TestToJson:
    def test_nested_document_parses(self):
        doc = {
            "b": [1.5, 2],
            "a": {"flag": True, "none": None, "tag": StratumTag.LENS_C1},
            "arr": np.array([0.25, 0.5]),
            "rows": [[1.0, 0.0], [0.0, 1.0]],
        }
        parsed = json.loads(to_json(doc))
        assert list(parsed) == ["b", "a", "arr", "rows"]
        assert parsed["a"] == {"flag": True, "none": None, "tag": "LensC1"}
        assert parsed["arr"] == [0.25, 0.5]

    def test_numeric_lists_are_inline(self):
        assert to_json({"v": [1.0, 2.0]}) == '{\n  "v": [1.0, 2.0]\n}'

    def test_numpy_scalars(self):
        assert to_json([np.float64(0.5), np.int64(3), np.bool_(False)]) == "[\n  0.5,\n  3,\n  false\n]"

    def test_empty_containers(self):
        assert to_json({"a": [], "b": {}}) == '{\n  "a": [],\n  "b": {}\n}'

    def test_deterministic(self):
        doc = {"x": [math.pi, math.e], "y": {"z": 1e-300}}
        assert to_json(doc) == to_json(json.loads(to_json(doc)))


class TestWriters:
    def test_write_document_to_stream(self):
        stream = io.StringIO()
        write_document({"a": 1}, None, stream)
        assert stream.getvalue() == '{\n  "a": 1\n}\n'

    def test_write_document_to_path(self, tmp_path):
        target = tmp_path / "nested" / "doc.json"
        stream = io.StringIO()
        write_document({"a": 1}, target, stream)
        assert stream.getvalue() == ""
        assert json.loads(target.read_text(encoding="utf-8")) == {"a": 1}

    def test_samples_csv(self, tmp_path):
        target = tmp_path / "s.csv"
        write_samples_csv(target, np.array([0.0, 0.5]), np.array([[1.0, 0.0], [0.0, 1.0]]))
        assert target.read_text(encoding="utf-8").splitlines() == [
            "index,t,c0,c1",
            "0,0.0,1.0,0.0",
            "1,0.5,0.0,1.0",
        ]


class TestMakeRng:
    def test_seed_is_reproducible(self):
        assert make_rng(5).random() == make_rng(5).random()

    def test_generator_passes_through(self):
        rng = np.random.default_rng(1)
        assert make_rng(rng) is rng


class TestRunConfig:
    def test_defaults_for_missing_flags(self):
        config = RunConfig.from_args(argparse.Namespace(command="plan", manifold="s2", seed=None, samples=None))
        assert config.seed == DEFAULT_SEED
        assert config.tie_tol == TIE_TOL
        assert config.manifold == "s2"

    def test_lens_parameter_names_manifold(self):
        config = RunConfig.from_args(argparse.Namespace(command="verify-lens", p=7))
        assert config.manifold == "lens7"

    def test_effective_stringifies_paths(self):
        config = RunConfig(command="plan", output=Path("out.json"))
        doc = config.effective()
        assert doc["output"] == "out.json"
        assert doc["csv"] is None
        assert list(doc)[0] == "command"
