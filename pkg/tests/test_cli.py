import csv
import json
import subprocess
import sys

import pytest

from verlinde.cli import main
from verlinde.formulas import VerlindeResult


def run(capsys, *args):
    code = main(list(args))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize(
    "args,expected",
    [
        (["--group", "SO(3)", "--level", "4", "--genus", "2", "--mode", "ns"], "5"),
        (["--group", "A1", "--level", "1", "--genus", "2", "--mode", "closed"], "4"),
        (["--group", "A1", "--level", "2", "--mode", "sc", "--genus", "0", "--markings", "1,1"], "1"),
        (["--group", "PSU(3)", "--level", "3", "--genus", "2", "--mode", "ns"], "6"),
        (["--group", "SU(2)xSU(2)", "--level", "2,2", "--genus", "2"], "100"),
    ],
)
def test_compute_examples(capsys, args, expected):
    code, out, _ = run(capsys, "compute", *args)
    assert code == 0
    assert out.splitlines()[0] == expected


def test_exit_codes(capsys):
    assert run(capsys, "compute", "--group", "SO(3)", "--level", "2", "--genus", "1", "--mode", "ns")[0] == 3
    assert run(capsys, "compute", "--group", "XX(3)", "--level", "2")[0] == 2
    assert run(capsys, "compute", "--group", "A1", "--level", "two")[0] == 2
    assert run(capsys, "compute", "--group", "A1", "--level", "2", "--markings", "5")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["compute", "--level", "2"])
    assert exc.value.code == 2


def test_unsafe_weaker_predicate(capsys):
    code, out, _ = run(capsys, "compute", "--group", "SO(3)", "--level", "2", "--genus", "1",
                       "--mode", "ns", "--variant", "c", "--unsafe")
    assert code == 0 and out.strip() == "3/2"


def test_breakdown_and_determinism(capsys):
    args = ["compute", "--group", "SO(3)", "--level", "4", "--genus", "1", "--mode", "ns", "--breakdown"]
    first = run(capsys, *args)[1]
    second = run(capsys, *args, "--threads", "1")[1]
    assert first == second
    assert first.splitlines()[0] == "2"
    assert len(first.splitlines()) == 6


def test_json_round_trip(capsys):
    code, out, _ = run(capsys, "compute", "--group", "PSU(3)", "--level", "3", "--genus", "2",
                       "--mode", "ns", "--breakdown", "--json")
    payload = json.loads(out)
    res = VerlindeResult.from_dict(payload["result"])
    assert res.exact == 6
    assert json.dumps(res.to_dict(), sort_keys=True) == json.dumps(payload["result"], sort_keys=True)


def test_csv_output(capsys):
    code, out, _ = run(capsys, "compute", "--group", "A2", "--level", "3", "--genus", "2", "--csv")
    rows = list(csv.reader(out.splitlines()))
    assert rows[0] == ["group", "level", "genus", "mode", "value"]
    assert rows[1] == ["A2", "3", "2", "sc", "166"]


def test_phi_changes_result(capsys):
    base = ["compute", "--group", "SO(3)", "--level", "4", "--genus", "1", "--mode", "ns"]
    assert run(capsys, *base)[1].strip() == "2"
    assert run(capsys, *base, "--phi", "1/0")[1].strip() == "1"


def test_levels_table(capsys):
    code, out, _ = run(capsys, "levels")
    assert code == 0
    assert "MISMATCH" not in out
    assert any(line.split()[:2] == ["E7", "4"] for line in out.splitlines())
    code, out, _ = run(capsys, "levels", "E7'", "SO(8)", "Sp(3)'", "--json")
    got = {r["group"]: r["l0"] for r in json.loads(out)}
    assert got == {"E7'": 4, "SO(8)": 4, "Sp(3)'": 4}


def test_sweep_writes_csv_and_png(tmp_path, capsys):
    cfg = tmp_path / "grid.toml"
    cfg.write_text('group = "SO(3)"\nmode = "ns"\nlevels = [4, 8, 12]\ngenera = [1, 2]\n')
    out = tmp_path / "res"
    code, text, _ = run(capsys, "sweep", "--config", str(cfg), "--genera", "2,3", "--out", str(out))
    assert code == 0
    rows = list(csv.DictReader(open(str(out) + ".csv")))
    assert [(r["genus"], r["level"]) for r in rows][:3] == [("2", "4"), ("2", "8"), ("2", "12")]
    assert rows[0]["value"] == "5"
    png = (tmp_path / "res.png").read_bytes()
    assert png[:8] == b"\x89PNG\r\n\x1a\n"


def test_sweep_skips_inadmissible_levels(tmp_path, capsys):
    out = tmp_path / "s"
    code, _, _ = run(capsys, "sweep", "--group", "SO(3)", "--mode", "ns", "--levels", "1,2,3,4", "--genera", "1",
                     "--out", str(out))
    rows = list(csv.DictReader(open(str(out) + ".csv")))
    assert code == 0 and [r["level"] for r in rows] == ["4"]


def test_bad_config(tmp_path, capsys):
    cfg = tmp_path / "bad.toml"
    cfg.write_text("group = \n")
    assert run(capsys, "sweep", "--config", str(cfg), "--out", str(tmp_path / "x"))[0] == 2


def test_selfcheck_fast_passes(tmp_path, capsys):
    report = tmp_path / "report.json"
    code, out, _ = run(capsys, "selfcheck", "--suite", "fast", "--report", str(report))
    assert code == 0
    data = json.loads(report.read_text())
    assert data["all_ok"] and data["suite"] == "fast"
    assert data["seconds"] < 60


def test_selfcheck_weaker_predicate_fails(tmp_path, capsys):
    report = tmp_path / "report.json"
    code, out, _ = run(capsys, "selfcheck", "--suite", "fast", "--variant", "c", "--report", str(report))
    assert code == 4
    data = json.loads(report.read_text())
    integ = next(c for c in data["checks"] if c["name"] == "integrality")
    assert not integ["ok"]
    assert ["A1", 2, 2, 1, [0], 0, "3/2"] in integ["details"]["failures"]


def test_console_script_entry():
    res = subprocess.run([sys.executable, "-m", "verlinde.cli", "compute", "--group", "A1", "--level", "1",
                          "--genus", "2", "--mode", "closed"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.strip() == "4"
