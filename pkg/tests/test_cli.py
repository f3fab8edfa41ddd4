"""Tests for the geoplan command line."""

from __future__ import annotations

import functools
import json
import math
from pathlib import Path

import pytest
from jsonschema import Draft202012Validator, ValidationError
from referencing import Registry, Resource

from geodesic_planner.__main__ import COMMANDS, build_parser, run

SCHEMA_DIR = Path(__file__).parents[1] / "docs" / "schemas"

COMMAND_SCHEMAS = {
    "plan": "plan.schema.json",
    "classify": "classify.schema.json",
    "geodesics": "enumeration.schema.json",
    "cut-time": "cut_time.schema.json",
    "verify-lens": "verify_lens.schema.json",
    "bounds": "bounds.schema.json",
    "oracle": "oracle.schema.json",
    "decompose": "decomposition.schema.json",
    "continuity": "continuity.schema.json",
}


def _load_schema(name: str) -> dict:
    return json.loads((SCHEMA_DIR / name).read_text(encoding="utf-8"))


@functools.cache
def schema_registry() -> Registry:
    resources = [(path.name, Resource.from_contents(_load_schema(path.name))) for path in SCHEMA_DIR.glob("*.json")]
    return Registry().with_resources(resources)


def validate(doc: dict, schema_name: str) -> None:
    Draft202012Validator(_load_schema(schema_name), registry=schema_registry()).validate(doc)


def invoke(capsys: pytest.CaptureFixture[str], *argv: str) -> tuple[int, dict | None]:
    """Run a command and check its document against the shipped schemas."""
    code = run(list(argv))
    out = capsys.readouterr().out
    doc = json.loads(out) if out.strip() else None
    if doc is not None:
        validate(doc, "document.schema.json")
        if "result" in doc:
            validate(doc["result"], COMMAND_SCHEMAS[doc["command"]])
    return code, doc


class TestSchemas:
    @pytest.mark.parametrize("path", sorted(SCHEMA_DIR.glob("*.json")), ids=lambda p: p.name)
    def test_schema_is_valid(self, path):
        contents = _load_schema(path.name)
        Draft202012Validator.check_schema(contents)
        assert contents["$id"] == path.name

    def test_every_command_has_a_schema(self):
        assert set(COMMAND_SCHEMAS) == set(COMMANDS)
        envelope = _load_schema("document.schema.json")
        assert set(envelope["properties"]["command"]["enum"]) == set(COMMANDS)

    def test_rejects_malformed_result(self, capsys):
        _, doc = invoke(capsys, "classify", "s2", "--from", "1,0,0", "--to", "0,1,0")
        doc["result"]["stratum"]["tag"] = "Elsewhere"
        with pytest.raises(ValidationError, match="Elsewhere"):
            validate(doc["result"], "classify.schema.json")

    @pytest.mark.parametrize("builtin", ["gr2c4", "lens", "cpn(2)", "hpn(3)"])
    def test_builtin_bounds(self, capsys, builtin):
        code, doc = invoke(capsys, "bounds", "--builtin", builtin)
        assert code == 0
        assert doc["result"]["kind"] == "builtin"


class TestParser:
    def test_requires_command(self):
        with pytest.raises(SystemExit) as exc:
            build_parser().parse_args([])
        assert exc.value.code == 2

    def test_missing_required_option(self):
        with pytest.raises(SystemExit) as exc:
            run(["plan", "s2", "--from", "1,0,0"])
        assert exc.value.code == 2

    def test_version(self, capsys):
        with pytest.raises(SystemExit) as exc:
            run(["--version"])
        assert exc.value.code == 0
        assert capsys.readouterr().out.startswith("geoplan ")


class TestPlanCommand:
    def test_lens_circle_pair(self, capsys):
        code, doc = invoke(capsys, "plan", "lens3", "--from", "1,0,0,0", "--to", "0,0,1,0", "--samples", "5")
        assert code == 0
        assert doc["command"] == "plan"
        assert doc["passed"] is True
        assert doc["config"]["manifold"] == "lens3"
        assert doc["config"]["samples"] == 5
        result = doc["result"]
        assert result["distance"] == pytest.approx(math.pi / 2)
        assert 2 <= result["piece_id"] <= 5
        assert result["stratum"]["tag"] == "LensCpMinus1"
        assert len(result["samples"]) == 5

    def test_byte_identical_runs(self, capsys):
        argv = ["plan", "cp2", "--from", "1,0,0.3,0,0,0.2", "--to", "0,1,0,0,1,0"]
        run(argv)
        first = capsys.readouterr().out
        run(argv)
        assert capsys.readouterr().out == first

    def test_csv_output(self, capsys, tmp_path):
        target = tmp_path / "samples.csv"
        code, _ = invoke(
            capsys, "plan", "s2", "--from", "1,0,0", "--to", "0,1,0", "--samples", "4", "--csv", str(target)
        )
        assert code == 0
        lines = target.read_text(encoding="utf-8").splitlines()
        assert lines[0] == "index,t,c0,c1,c2"
        assert len(lines) == 5
        assert lines[1].startswith("0,0.0,1.0,")

    def test_output_file(self, capsys, tmp_path):
        target = tmp_path / "out" / "plan.json"
        code = run(["plan", "s2", "--from", "1,0,0", "--to", "0,1,0", "-o", str(target)])
        assert code == 0
        assert capsys.readouterr().out == ""
        assert json.loads(target.read_text(encoding="utf-8"))["result"]["piece_id"] == 0

    def test_bad_manifold_spec(self, capsys):
        code = run(["plan", "torus2", "--from", "1,0", "--to", "0,1"])
        captured = capsys.readouterr()
        assert code == 2
        assert captured.out == ""
        assert "torus2" in captured.err

    def test_sphere_point_must_be_unit(self, capsys):
        code, doc = invoke(capsys, "plan", "s2", "--from", "1,1,0", "--to", "0,1,0")
        assert code == 2
        assert doc is None

    def test_ambiguous_pair_reports_error(self, capsys):
        eps = math.sqrt(1e-11)
        code, doc = invoke(
            capsys,
            "classify",
            "s2",
            "--from",
            "1,0,0",
            f"--to=-{math.cos(eps)!r},{math.sin(eps)!r},0",
        )
        assert code == 1
        assert doc["passed"] is False
        assert doc["error"]["type"] == "AmbiguousNearCut"
        assert "margin" in doc["error"]
        assert "result" not in doc


class TestQueryCommands:
    def test_classify(self, capsys):
        code, doc = invoke(capsys, "classify", "cp1", "--from", "1,0,0,0", "--to", "0,0,1,0")
        assert code == 0
        assert doc["result"]["stratum"]["tag"] == "ProjectiveCut"
        assert doc["result"]["distance"] == pytest.approx(math.pi / 2)

    def test_geodesics(self, capsys):
        code, doc = invoke(capsys, "geodesics", "lens3", "--from", "1,0,0,0", "--to", "0,0,1,0")
        assert code == 0
        assert doc["result"]["count"] == 3

    def test_geodesics_family(self, capsys):
        code, doc = invoke(capsys, "geodesics", "s2", "--from", "1,0,0", "--to=-1,0,0")
        assert code == 0
        assert doc["result"]["count"] is None

    def test_cut_time(self, capsys):
        code, doc = invoke(capsys, "cut-time", "lens3", "--from", "1,0,0,0", "--velocity", "0,1,0,0")
        assert code == 0
        assert doc["result"]["cut_time"] == pytest.approx(math.pi / 3)


class TestVerifyLens:
    def test_passes(self, capsys):
        code, doc = invoke(
            capsys,
            "verify-lens",
            "3",
            "--emptiness-samples",
            "500",
            "--consistency-samples",
            "50",
            "--trig-p-max",
            "50",
        )
        assert code == 0
        assert doc["config"]["manifold"] == "lens3"
        result = doc["result"]
        assert result["covering"] == {"C1": 2, "Cp-1": 3}
        assert result["violations"] == 0
        assert result["passed"] is True
        assert result["trig_min_margin"] > 0.0

    def test_rejects_small_p(self, capsys):
        assert run(["verify-lens", "2"]) == 2

    def test_summary_table(self, capsys):
        code = run(
            [
                "verify-lens",
                "4",
                "--emptiness-samples",
                "200",
                "--consistency-samples",
                "20",
                "--trig-p-max",
                "10",
                "--summary",
            ]
        )
        assert code == 0
        assert "covering Cp-1" in capsys.readouterr().err


class TestBounds:
    def test_builtin_grassmannian(self, capsys):
        code, doc = invoke(capsys, "bounds", "--builtin", "gr2c4")
        assert code == 0
        assert doc["result"]["result"] == 16
        assert doc["result"]["trace"] == [8, 7, "+1"]
        assert doc["result"]["matches"] is True

    def test_fibered(self, capsys):
        code, doc = invoke(capsys, "bounds", "--fibered", "1,5")
        assert code == 0
        assert doc["result"]["result"] == 7

    def test_fibered_rejects_fractions(self, capsys):
        assert run(["bounds", "--fibered", "1.5,2"]) == 2

    def test_unknown_builtin(self, capsys):
        assert run(["bounds", "--builtin", "gr3c6"]) == 2

    def test_exclusive_sources(self):
        with pytest.raises(SystemExit):
            run(["bounds", "--builtin", "lens", "--fibered", "1,5"])

    @pytest.mark.parametrize(
        "payload, expected",
        [
            ({"groups": {"1": [7, 5], "2": [8]}}, 16),
            ({"groups": {"1": [4]}, "rank": 1}, 5),
            ({"secat_bounds": [1, 5]}, 7),
            ({"builtin": "cpn(3)"}, 7),
        ],
    )
    def test_input_file(self, capsys, tmp_path, payload, expected):
        source = tmp_path / "bounds.json"
        source.write_text(json.dumps(payload), encoding="utf-8")
        code, doc = invoke(capsys, "bounds", "--input", str(source))
        assert code == 0
        assert doc["result"]["result"] == expected

    def test_root_data_input(self, capsys, tmp_path):
        source = tmp_path / "roots.json"
        source.write_text(json.dumps({"root_system": "B", "rank": 2}), encoding="utf-8")
        code, doc = invoke(capsys, "bounds", "--input", str(source))
        assert code == 0
        result = doc["result"]
        assert result["kind"] == "root_data"
        assert result["count"] == 3
        assert [s["s_delta_dim"] for s in result["subsets"]["2"]] == [1]
        assert "result" not in result

    def test_rank_mismatch(self, capsys, tmp_path):
        source = tmp_path / "bounds.json"
        source.write_text(json.dumps({"groups": {"1": [3]}, "rank": 2}), encoding="utf-8")
        assert run(["bounds", "--input", str(source)]) == 2

    def test_unreadable_input(self, capsys, tmp_path):
        source = tmp_path / "broken.json"
        source.write_text("{not json", encoding="utf-8")
        assert run(["bounds", "--input", str(source)]) == 2
        assert run(["bounds", "--input", str(tmp_path / "missing.json")]) == 2


class TestDecompose:
    def test_lens(self, capsys):
        code, doc = invoke(capsys, "decompose", "lens5")
        assert code == 0
        result = doc["result"]
        assert len(result["pieces"]) == 6
        assert result["gc_ledger"]["upper_reference"] == 7
        assert result["gc_ledger"]["lower"] == 6

    def test_complex_projective(self, capsys):
        code, doc = invoke(capsys, "decompose", "cp2")
        assert code == 0
        assert doc["result"]["gc_ledger"]["constructive_gap"] == 1


class TestOracleCommand:
    def test_cp1(self, capsys):
        code, doc = invoke(
            capsys, "oracle", "cp1", "--from", "1,0,0,0", "--to", "1,0,1,0", "--grid-size", "2000"
        )
        assert code == 0
        assert doc["config"]["grid_size"] == 2000
        assert doc["result"]["comparison"]["count_match"] is True
        assert len(doc["result"]["clusters"]) == 1

    def test_unsupported_manifold(self, capsys):
        code = run(["oracle", "hp2", "--from", "1,0,0,0,0,0,0,0,0,0,0,0", "--to", "0,0,0,0,1,0,0,0,0,0,0,0"])
        assert code == 2

    def test_cut_pair_document(self, capsys):
        code, doc = invoke(
            capsys, "oracle", "cp1", "--from", "1,0,0,0", "--to", "0,0,1,0", "--grid-size", "2000"
        )
        assert code in (0, 1)
        assert doc["result"]["comparison"]["closed_form_count"] is None


class TestContinuityCommand:
    def test_lens_circle_pair(self, capsys):
        code, doc = invoke(
            capsys,
            "continuity",
            "lens3",
            "--from",
            "1,0,0,0",
            "--to",
            "0,0,1,0",
            "--continuity-samples",
            "40",
        )
        assert code == 0
        assert doc["config"]["radii"] == [1e-3, 2e-3, 4e-3]
        result = doc["result"]
        assert result["piece_id"] == 5
        assert result["conclusive"] is True
        assert result["linear"] is True
        assert [r["radius"] for r in result["reports"]] == [1e-3, 2e-3, 4e-3]
        assert all(r["retained_samples"] > 0 for r in result["reports"])

    def test_off_cut_pair_with_radii(self, capsys):
        code, doc = invoke(
            capsys,
            "continuity",
            "s2",
            "--from",
            "1,0,0",
            "--to",
            "0,1,0",
            "--radii",
            "1e-4,2e-4",
            "--continuity-samples",
            "20",
        )
        assert code == 0
        reports = doc["result"]["reports"]
        assert [r["escaped_samples"] for r in reports] == [0, 0]
        assert reports[1]["max_velocity_deviation"] <= 2.5 * reports[0]["max_velocity_deviation"]

    def test_summary_table(self, capsys):
        code = run(
            ["continuity", "cp1", "--from", "1,0,0,0", "--to", "0,0,1,0", "--continuity-samples", "10", "--summary"]
        )
        assert code == 0
        assert "retained" in capsys.readouterr().err

    def test_piece_must_hold_the_pair(self, capsys):
        code, doc = invoke(capsys, "continuity", "s2", "--from", "1,0,0", "--to", "0,1,0", "--piece", "1")
        assert code == 2
        assert doc is None

    def test_rejects_nonpositive_radius(self, capsys):
        assert run(["continuity", "s2", "--from", "1,0,0", "--to", "0,1,0", "--radii", "0,1e-3"]) == 2
