"""End-to-end CLI behavior: exit codes, output formats, strict mode."""

import json

import pytest

from ultraharmonic.cli import main
from ultraharmonic.report import SCHEMA


def test_classify_text_success(capsys):
    code = main(["classify", "ap(3,4)"])
    out = capsys.readouterr().out
    assert code == 0
    assert "harmonicity: Harmonic" in out
    assert "- AP harmonic" in out


def test_classify_parse_error_exits_1(capsys):
    code = main(["classify", "ap(3;4)"])
    captured = capsys.readouterr()
    assert code == 1
    assert "error" in captured.out


def test_classify_json_carries_schema(capsys):
    code = main(["classify", "primes", "--format", "json"])
    payload = json.loads(capsys.readouterr().out)
    assert code == 0
    assert payload["schema"] == SCHEMA
    assert payload["results"][0]["verdict"]["value"] == "harmonic"


def test_strict_flags_unknowns(capsys):
    probe = ["classify", "primes & ap(1,4)", "--checkpoints", "1000"]
    code = main(probe + ["--strict"])
    assert code == 2
    code = main(probe)
    assert code == 0
    code = main(["classify", "ap(3,4)", "--strict"])
    assert code == 0
    capsys.readouterr()


def test_usage_error_exits_1(capsys):
    with pytest.raises(SystemExit) as info:
        main(["classify"])
    assert info.value.code == 1
    with pytest.raises(SystemExit) as info:
        main(["no-such-command"])
    assert info.value.code == 1
    capsys.readouterr()


def test_checkpoints_flag_shapes_diagnostic(capsys):
    code = main(
        ["classify", "file(\"/nonexistent\")", "--checkpoints", "100,1000"]
    )
    assert code == 1  # missing file is an input error
    capsys.readouterr()
    code = main(["classify", "primes & ap(1,4)", "--checkpoints", "100,1000"])
    out = capsys.readouterr().out
    assert code == 0
    assert "horizon        100" in out
    assert "horizon       1000" in out


def test_config_file_overrides_horizon(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("horizon = 5000\ncheckpoints = 100,5000\n")
    code = main(["classify", "primes", "--config", str(cfg), "--format", "json"])
    payload = json.loads(capsys.readouterr().out)
    assert code == 0
    assert payload["config"]["horizon"] == 5000
    assert payload["config"]["checkpoints"] == [100, 5000]


def test_gaps_command(capsys):
    code = main(["gaps", "primes", "--horizon", "100"])
    out = capsys.readouterr().out
    assert code == 0
    assert "horizon 100: 25 elements, max gap 8" in out
    assert "gap histogram: 1x1, 2x8, 4x7, 6x7, 8x1" in out


def test_ap_find_and_longest(capsys):
    code = main(["ap", "primes", "-k", "10", "--horizon", "2100"])
    out = capsys.readouterr().out
    assert code == 0
    assert "start 199, difference 210, length 10" in out

    code = main(["ap", "finite{1,2,3,5,7,9}", "--longest"])
    out = capsys.readouterr().out
    assert code == 0
    assert "start 1, difference 2, length 5" in out


def test_ap_absent_witness_reports_none(capsys):
    code = main(["ap", "pow(2)", "-k", "3", "--horizon", "4000"])
    out = capsys.readouterr().out
    assert code == 0
    assert "no progression found" in out


def test_extract_command(capsys):
    code = main(["extract", "primes", "pow(2)", "-k", "5"])
    out = capsys.readouterr().out
    assert code == 0
    assert "elements: 3, 5, 11, 17, 37" in out


def test_glazer_add_with_membership(capsys):
    code = main(["glazer", "add", "7", "5", "--member", "ap(2,2)"])
    out = capsys.readouterr().out
    assert code == 0
    assert "e(7) + e(5) = e(12)" in out
    assert "member ap(2,2): True" in out


def test_glazer_member_json(capsys):
    code = main(
        [
            "glazer", "member", "ap(8,2)",
            "--left", "ap(3,4)", "--right", "ap(5,6)",
            "--format", "json",
        ]
    )
    payload = json.loads(capsys.readouterr().out)
    assert code == 0
    assert payload["results"][0]["verdict"]["value"] == "yes"


def test_glazer_sum_lists_base(capsys):
    code = main(["glazer", "sum", "--left", "ap(1,2)", "--right", "ap(1,3)"])
    out = capsys.readouterr().out
    assert code == 0
    assert "sum base:" in out
    assert "(+)" in out


def test_report_round_trip(tmp_path, capsys):
    code = main(["classify", "ap(3,4)", "--format", "json"])
    text = capsys.readouterr().out
    assert code == 0
    path = tmp_path / "saved.json"
    path.write_text(text)

    code = main(["report", str(path)])
    out = capsys.readouterr().out
    assert code == 0
    assert "harmonicity: Harmonic" in out

    code = main(["report", str(path), "--format", "json"])
    assert capsys.readouterr().out == text
    assert code == 0


def test_report_rejects_garbage(tmp_path, capsys):
    path = tmp_path / "junk.json"
    path.write_text("not json at all")
    code = main(["report", str(path)])
    captured = capsys.readouterr()
    assert code == 1
    assert "error:" in captured.err


def test_experiment_command(capsys):
    code = main(["experiment", "extraction"])
    out = capsys.readouterr().out
    assert code == 0
    assert "PASS" in out
    assert "FAIL" not in out
