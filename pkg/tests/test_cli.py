"""Scenario parsing, report generation, exit codes and determinism of the
command-line front end."""

import json
import math

import pytest

from ndistal.cli import ScenarioError, main, parse_scenario

ANNULUS_SCENARIO = """\
# full annulus3 audit
system = annulus3
seed = 0
cloud_size = 64

[distality_report]
N_max = 3
assert_max_cell_size = 3

[theorem_3_5_audit]
N = 3
gap_c = 16
assert_passed = true
assert_details.n_minimal = 2
"""

SHIFT_SCENARIO = """\
system = shift2

[word_count_entropy]
n = 12
"""


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_parse_scenario_roundtrip(tmp_path):
    path = write(tmp_path, "s.scn", ANNULUS_SCENARIO)
    header, analyses = parse_scenario(path)
    assert header == {"system": "annulus3", "seed": 0, "cloud_size": 64}
    assert [op for op, _, _ in analyses] == ["distality_report",
                                             "theorem_3_5_audit"]
    assert analyses[1][1]["gap_c"] == 16


def test_parse_errors_carry_line_numbers(tmp_path):
    path = write(tmp_path, "bad.scn", "system = annulus3\n\nnot a kv line\n")
    with pytest.raises(ScenarioError, match="line 3"):
        parse_scenario(path)
    path = write(tmp_path, "empty.scn", "system = annulus3\n")
    with pytest.raises(ScenarioError, match="no analyses"):
        parse_scenario(path)


def test_missing_file_and_bad_usage_exit_2(tmp_path, capsys):
    assert main(["run", str(tmp_path / "nope.scn")]) == 2
    assert "cannot read" in capsys.readouterr().err


def test_unknown_system_exits_2(tmp_path, capsys):
    path = write(tmp_path, "s.scn",
                 "system = moebius\n\n[distality_report]\n")
    assert main(["run", path]) == 2
    assert "moebius" in capsys.readouterr().err


def test_unknown_op_exits_2_with_line(tmp_path, capsys):
    path = write(tmp_path, "s.scn",
                 "system = annulus3\n\n[frobnicate]\n")
    assert main(["run", path]) == 2
    assert "line 3" in capsys.readouterr().err


def test_annulus_scenario_passes(tmp_path):
    path = write(tmp_path, "s.scn", ANNULUS_SCENARIO)
    out = tmp_path / "out"
    assert main(["run", path, "--out", str(out)]) == 0
    report = json.loads((out / "report.json").read_text())
    assert report["summary"]["passed"]
    dist = report["analyses"][0]["result"]
    assert dist["max_cell_size"] == 3
    assert (out / "timings.json").exists()


def test_failed_assert_exits_1(tmp_path):
    path = write(tmp_path, "s.scn", ANNULUS_SCENARIO.replace(
        "assert_max_cell_size = 3", "assert_max_cell_size = 2"))
    out = tmp_path / "out"
    assert main(["run", path, "--out", str(out)]) == 1
    report = json.loads((out / "report.json").read_text())
    assert not report["summary"]["passed"]


def test_shift_word_entropy_value(tmp_path):
    path = write(tmp_path, "s.scn", SHIFT_SCENARIO)
    out = tmp_path / "out"
    assert main(["run", path, "--out", str(out)]) == 0
    report = json.loads((out / "report.json").read_text())
    value = report["analyses"][0]["result"]["value"]
    assert abs(value - math.log(2.0)) <= 1e-12


def test_reports_are_byte_identical(tmp_path):
    path = write(tmp_path, "s.scn", ANNULUS_SCENARIO)
    outs = []
    for name in ("a", "b"):
        out = tmp_path / name
        assert main(["run", path, "--out", str(out)]) == 0
        outs.append((out / "report.json").read_bytes())
    assert outs[0] == outs[1]


def test_list_systems_facts(capsys):
    assert main(["list-systems"]) == 0
    text = capsys.readouterr().out
    assert "3-distal, not 2-distal" in text
    assert "distal, minimal, not N-equicontinuous" in text
    assert "expansive, not N-distal" in text


def test_oneoff_subcommand(capsys):
    assert main(["ndiam", "--system", "rotation", "--size", "16",
                 "--N", "2"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["exact"]
    assert out["value_lower"] == out["value_upper"] >= 0.0
    assert len(out["witness"]) == 3
