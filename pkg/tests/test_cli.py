"""Tests for the command-line front end.

The CLI is exercised in process through its ``main`` entry point, which
keeps the tests fast and lets them assert on exact byte-for-byte output
and on exit codes.
"""

import json

import pytest

from dcpoly import cli

SMALL_BFILE = "4 1\n6 2\n8 7\n10 28\n12 122\n"


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    return code, capsys.readouterr().out


def test_series_bfile_prefix(capsys):
    code, out = run_cli(capsys, "series", "--max-perimeter", "12", "--format", "bfile")
    assert code == 0
    assert out == SMALL_BFILE


def test_series_minimal_bound(capsys):
    code, out = run_cli(capsys, "series", "--max-perimeter", "4", "--format", "bfile")
    assert code == 0
    assert out == "4 1\n"


def test_series_rejects_odd_bound():
    with pytest.raises(SystemExit) as exc:
        cli.main(["series", "--max-perimeter", "13"])
    assert exc.value.code == 2


def test_series_rejects_bfile_for_refined_keys():
    with pytest.raises(SystemExit) as exc:
        cli.main(["series", "--by", "noses", "--format", "bfile"])
    assert exc.value.code == 2


def test_series_json_nose_breakdown(capsys):
    code, out = run_cli(
        capsys, "series", "--max-perimeter", "8", "--by", "noses", "--format", "json"
    )
    assert code == 0
    assert json.loads(out) == {
        "4": {"none": 1},
        "6": {"one": 2},
        "8": {"one": 4, "two": 1, "zero": 2},
    }


def test_census_matches_series(capsys):
    code, out = run_cli(capsys, "census", "--max-perimeter", "12", "--format", "bfile")
    assert code == 0
    assert out == SMALL_BFILE


def test_census_threads_do_not_change_output(capsys):
    base = run_cli(
        capsys,
        "census", "--max-perimeter", "14", "--classify", "--format", "csv",
        "--threads", "1",
    )
    wide = run_cli(
        capsys,
        "census", "--max-perimeter", "14", "--classify", "--format", "csv",
        "--threads", "2",
    )
    assert base == wide
    assert base[1].startswith("key,count\n4/1/none/1,1\n")


def test_ratios_csv_rows(capsys):
    code, out = run_cli(capsys, "ratios", "--max-perimeter", "16", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "perimeter,column_convex,diagonally_convex,ratio"
    assert "14,558,556,1.0036" in lines
    assert lines[-1] == "16,2641,2618,1.0088"


def test_ratios_rejects_small_bound():
    with pytest.raises(SystemExit) as exc:
        cli.main(["ratios", "--max-perimeter", "12"])
    assert exc.value.code == 2


def test_verify_directed_suite_passes(capsys):
    code, out = run_cli(capsys, "verify", "--suite", "directed")
    assert code == 0
    assert "PASS [directed] fixed point matches the binomial formula" in out
    assert out.rstrip().endswith("2 checks, 0 failed")


def test_verify_twonose_suite_passes(capsys):
    code, out = run_cli(capsys, "verify", "--suite", "twonose", "--order", "20")
    assert code == 0
    assert "0 failed" in out


def test_out_file_written_atomically(tmp_path, capsys):
    target = tmp_path / "series.bfile"
    code, out = run_cli(
        capsys,
        "series", "--max-perimeter", "12", "--format", "bfile",
        "--out", str(target),
    )
    assert code == 0
    assert out == ""
    assert target.read_text() == SMALL_BFILE
    leftovers = [p for p in tmp_path.iterdir() if p.name.startswith(".dcpoly")]
    assert leftovers == []


def test_bfile_round_trip():
    counts = {4: 1, 6: 2, 20: 62128, 24: 1568495}
    assert cli.parse_bfile(cli.emit_bfile(counts)) == counts


def test_parse_bfile_rejects_malformed_lines():
    with pytest.raises(ValueError):
        cli.parse_bfile("4  1\n")
    with pytest.raises(ValueError):
        cli.parse_bfile("4\n")
