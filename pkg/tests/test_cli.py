import csv
from pathlib import Path

import pytest

from conesel.cli import main, parse_zones

FIX = Path(__file__).parent / "fixtures"
TINY = ["--zones", "4,10", "--envs", "2", "--selectors", "ICA,LCS5,B1,B2", "--seed", "0",
        "--no-timing"]


def test_parse_zones():
    assert parse_zones("2:10:2") == [2, 4, 6, 8, 10]
    assert parse_zones("4,8") == [4, 8]
    assert parse_zones("100") == [100]


def test_sweep_golden(tmp_path):
    assert main(["sweep", *TINY, "--out", str(tmp_path)]) == 0
    got = (tmp_path / "sweep.csv").read_bytes()
    assert got == (FIX / "golden_sweep.csv").read_bytes()
    assert b"\r" not in got
    for col in ("avg_drop_pct", "max_drop_pct", "avg_time_s", "max_time_s"):
        rows = list(csv.reader(open(tmp_path / f"sweep_{col}.csv", encoding="utf-8")))
        assert rows[0] == ["zones", "ICA", "LCS5", "B1", "B2"]
        assert [r[0] for r in rows[1:]] == ["4", "10"]


def test_sweep_parallel_matches_serial(tmp_path):
    main(["sweep", *TINY, "--jobs", "2", "--out", str(tmp_path)])
    assert (tmp_path / "sweep.csv").read_bytes() == (FIX / "golden_sweep.csv").read_bytes()


def test_single_row(tmp_path):
    main(["sweep", "--zones", "2", "--envs", "1", "--selectors", "ICA", "--out", str(tmp_path)])
    rows = list(csv.DictReader(open(tmp_path / "sweep.csv", encoding="utf-8")))
    assert len(rows) == 1 and rows[0]["selector"] == "ICA"
    assert float(rows[0]["avg_time_s"]) > 0


def test_bad_configs(tmp_path):
    with pytest.raises(SystemExit) as e:
        main(["sweep", "--selectors", "", "--out", str(tmp_path)])
    assert e.value.code == 2
    with pytest.raises(SystemExit):
        main(["sweep", "--zones", "3", "--out", str(tmp_path)])
    with pytest.raises(SystemExit):
        main(["fixed", "--zones", "4,6", "--out", str(tmp_path)])
    with pytest.raises(SystemExit):
        main(["sweep", "--selectors", "FOO", "--out", str(tmp_path)])


def test_config_file_and_override(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("zones = 4\nenvs = 1\nselectors = ICA,B2\nno_timing = true\n"
                   f"out = {tmp_path / 'from_file'}\n")
    main(["sweep", "--config", str(cfg)])
    rows = list(csv.DictReader(open(tmp_path / "from_file" / "sweep.csv", encoding="utf-8")))
    assert [r["selector"] for r in rows] == ["ICA", "B2"]
    main(["sweep", "--config", str(cfg), "--selectors", "B1", "--out", str(tmp_path / "flag")])
    rows = list(csv.DictReader(open(tmp_path / "flag" / "sweep.csv", encoding="utf-8")))
    assert [r["selector"] for r in rows] == ["B1"]


def test_fixed_outputs(tmp_path):
    main(["fixed", "--zones", "10", "--envs", "1", "--selectors", "ICA,LCS1", "--out",
          str(tmp_path)])
    table = list(csv.DictReader(open(tmp_path / "fixed_table.csv", encoding="utf-8")))
    assert [r["selector"] for r in table] == ["ICA", "LCS1"]
    hist = list(csv.DictReader(open(tmp_path / "fixed_hist.csv", encoding="utf-8")))
    assert len(hist) == 200
    assert sum(int(r["count"]) for r in hist if r["selector"] == "ICA") == 300
    assert hist[0]["bin_lo"] == "0" and hist[99]["bin_hi"] == "100"


def test_once_outputs(tmp_path, capsys):
    main(["once", "--zones", "6", "--seed", "1", "--selectors", "ICA", "--out", str(tmp_path)])
    assert (tmp_path / "scenario.txt").read_text().startswith("seed = 1\n")
    rows = list(csv.DictReader(open(tmp_path / "once_ICA.csv", encoding="utf-8")))
    assert len(rows) == 300 and len(rows[0]["config"]) == 11
    assert "reached_goal" in capsys.readouterr().out


@pytest.mark.parametrize("name, verdict", [("interval.txt", "True"),
                                           ("empty_interval.txt", "False"),
                                           ("independent.txt", "True")])
def test_check_fixtures(name, verdict, capsys):
    assert main(["check", str(FIX / name)]) == 0
    out = capsys.readouterr().out
    assert f"feasible: {verdict}" in out
    assert "ICA configuration:" in out


def test_check_interval_values(capsys):
    main(["check", str(FIX / "interval.txt")])
    out = capsys.readouterr().out
    assert "boundary distance bounds: [1.41421, 1.41421]" in out
    assert "ICA configuration: 11" in out


def test_selftest_quick(capsys):
    assert main(["selftest", "--scale", "0.02"]) == 0
    out = capsys.readouterr().out
    assert out.count("PASS") == 6 and "FAIL" not in out
