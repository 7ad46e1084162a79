"""The batch front door: exit codes, reports, CSV sampling."""

import json

from kappalab.cli import main, shipped_scenarios


def test_shipped_corpus_is_present():
    names = shipped_scenarios()
    assert "niemytzki_kappa_full.json" in names
    assert "doublearrow_condition_d.json" in names
    assert len(names) >= 7


def test_small_scenario_runs_green(tmp_path):
    scenario = {
        "name": "mini",
        "plan": {"seed": 3, "n_points": 80, "n_set_pairs": 20, "n_sequences": 6},
        "checks": [
            {"check": "condition_1", "family": "sorgenfrey_kappa"},
            {"check": "refute", "target": "g-extend", "n": 1, "expect": "refuted"},
        ],
    }
    path = tmp_path / "mini.json"
    path.write_text(json.dumps(scenario))
    code = main(["check", "--scenario", str(path), "--out", str(tmp_path / "out")])
    assert code == 0
    report = json.loads((tmp_path / "out" / "mini.json").read_text())
    assert report["all_expected"] is True


def test_expected_fail_scenario_is_green(tmp_path):
    scenario = {
        "name": "expected_fail",
        "plan": {"seed": 3},
        "checks": [{"check": "condition_3_negative_control", "expect": "fail"}],
    }
    path = tmp_path / "s.json"
    path.write_text(json.dumps(scenario))
    assert main(["check", "--scenario", str(path)]) == 0


def test_unexpected_verdict_exits_3(tmp_path):
    scenario = {
        "name": "surprise",
        "plan": {"seed": 3},
        "checks": [{"check": "condition_3_negative_control", "expect": "pass"}],
    }
    path = tmp_path / "s.json"
    path.write_text(json.dumps(scenario))
    assert main(["check", "--scenario", str(path)]) == 3


def test_malformed_json_exits_2(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    assert main(["check", "--scenario", str(path)]) == 2


def test_unknown_fields_exit_2(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"name": "x", "checks": [], "surprise": 1}))
    assert main(["check", "--scenario", str(path)]) == 2


def test_missing_scenario_file_exits_2():
    assert main(["check", "--scenario", "/nonexistent/path.json"]) == 2


def test_refute_subcommand(tmp_path):
    out = tmp_path / "bundle.json"
    code = main(["refute", "g-extend", "--n", "1", "--expect", "refuted", "--out", str(out)])
    assert code == 0
    bundle = json.loads(out.read_text())
    assert bundle["verdict"] == "refuted"
    assert main(["refute", "sorgenfrey-a", "--candidate", "clopen_only", "--expect", "refuted"]) == 3


def test_sample_grid_dimensions(tmp_path):
    out = tmp_path / "grid.csv"
    code = main(
        [
            "sample-grid",
            "--family",
            "niemytzki_kappa",
            "--set",
            '{"kind": "tangent_disc", "a": "0", "r": "1"}',
            "--bbox=-3/2,3/2,0,11/5",
            "--res",
            "300x220",
            "--out",
            str(out),
        ]
    )
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "x,y,value"
    assert len(lines) == 1 + 300 * 220
    assert "0,0,1" in lines  # full value at the tangency point


def test_sample_grid_empty_bbox(tmp_path):
    out = tmp_path / "empty.csv"
    code = main(
        [
            "sample-grid",
            "--family",
            "niemytzki_kappa",
            "--set",
            '{"kind": "tangent_disc", "a": "0", "r": "1"}',
            "--bbox",
            "0,1,0,1",
            "--res",
            "0x0",
            "--out",
            str(out),
        ]
    )
    assert code == 0
    assert out.read_text() == "x,y,value\n"


def test_sample_grid_values_match_library(tmp_path):
    out = tmp_path / "g.csv"
    main(
        [
            "sample-grid",
            "--family",
            "niemytzki_kappa",
            "--set",
            '{"kind": "interior_disc", "cx": "0", "cy": "2", "r": "1"}',
            "--bbox",
            "0,1,3/2,2",
            "--res",
            "4x2",
            "--out",
            str(out),
        ]
    )
    from fractions import Fraction as F

    from kappalab import InteriorDisc, NiemytzkiPoint, niemytzki_basic_f

    disc = InteriorDisc(F(0), F(2), F(1))
    for line in out.read_text().splitlines()[1:]:
        xs, ys, vs = line.split(",")
        v = niemytzki_basic_f(disc, NiemytzkiPoint(F(xs), F(ys)))
        assert abs(float(vs) - float(v)) < 1e-15


def test_scenario_seed_override_changes_reports(tmp_path):
    scenario = {
        "name": "seeded",
        "plan": {"seed": 5, "n_points": 60, "n_set_pairs": 10, "n_sequences": 4},
        "checks": [{"check": "condition_1", "family": "sorgenfrey_kappa"}],
    }
    path = tmp_path / "s.json"
    path.write_text(json.dumps(scenario))
    assert main(["check", "--scenario", str(path), "--out", str(tmp_path / "a")]) == 0
    assert main(["check", "--scenario", str(path), "--out", str(tmp_path / "b")]) == 0
    assert (tmp_path / "a" / "seeded.json").read_text() == (
        tmp_path / "b" / "seeded.json"
    ).read_text()
