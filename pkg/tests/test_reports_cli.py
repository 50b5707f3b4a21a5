import json
import subprocess
import sys

import pytest

from qcholder import reports
from qcholder.cli import EXIT_CONFIG, EXIT_IO, EXIT_OK, EXIT_VIOLATION, main
from qcholder.grid import load_gridfield
from qcholder.maps import identity_map
from qcholder.verify import SearchBudget, check_bound, constants
from qcholder import geometry


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_report_csv_row_has_ten_columns():
    rep = check_bound(identity_map(), 2.0, SearchBudget(radii=8, angles=16))
    text = reports.emit(rep, "csv")
    header, row = text.splitlines()
    assert header.split(",") == list(reports.CSV_COLUMNS)
    assert len(row.split(",")) == 10
    assert text.endswith("\n")


def test_constants_json_object():
    d = json.loads(reports.emit(constants(2), "json"))
    assert list(d) == ["K", "mori", "conjecture", "sharp", "vz"]
    assert d["mori"] == 16 and d["sharp"] == pytest.approx(2)


def test_sweep_round_trip_is_byte_identical():
    text = reports.to_csv(reports.sweep_rows(geometry.DEFAULT_K_GRID, geometry.DEFAULT_R_GRID))
    assert reports.to_csv(reports.read_csv(text)) == text


def test_emit_to_path(tmp_path):
    path = tmp_path / "c.json"
    text = reports.emit(constants(3), "json", path)
    assert path.read_text(encoding="utf-8") == text


def test_cli_constants(capsys):
    code, out, _ = run(["constants", "--K", "2", "--format", "json"], capsys)
    assert code == EXIT_OK
    d = json.loads(out)
    assert (d["mori"], d["conjecture"], d["sharp"], d["vz"]) == pytest.approx((16, 4, 2, 4),
                                                                               abs=1e-12)


def test_cli_sweep_ratio_increases(capsys):
    code, out, _ = run(["sweep", "--K", "2", "--R", "10,100,1000,10000"], capsys)
    assert code == EXIT_OK
    rows = reports.read_csv(out)
    ratios = [r["ratio"] for r in rows]
    assert len(ratios) == 4
    assert all(a < b for a, b in zip(ratios, ratios[1:])) and ratios[-1] < 1


def test_cli_verify_identity(capsys):
    code, out, _ = run(["verify", "--map", "identity", "--K", "1", "--radii", "8",
                        "--angles", "16"], capsys)
    assert code == EXIT_OK
    d = json.loads(out)
    assert d["estimate"] == 1 and d["violated"] is False


def test_cli_verify_violation_exit_code(capsys, monkeypatch):
    code, out, _ = run(["verify", "--map", "extremal", "--K", "4", "--R", "1e4",
                        "--radii", "8", "--angles", "16", "--format", "csv"], capsys)
    assert code == EXIT_OK
    assert reports.read_csv(out)[0]["violated"] is False
    # every map the CLI builds satisfies its bound, so force a violating report
    import qcholder.cli as cli
    real = cli.check_bound
    monkeypatch.setattr(cli, "check_bound", lambda f, K, *a, **kw: real(f, 1.0, *a, **kw))
    code, out, _ = run(["verify", "--map", "radial", "--K", "2", "--radii", "8",
                        "--angles", "16"], capsys)
    assert code == EXIT_VIOLATION
    assert json.loads(out)["violated"] is True


@pytest.mark.parametrize("argv", [
    ["constants", "--K", "0.5"],
    ["sweep", "--R", "1,10"],
    ["sweep", "--K", "two"],
    ["nonsense"],
    ["solve", "--n", "100"],
    [],
])
def test_cli_config_errors(argv, capsys):
    code, out, err = run(argv, capsys)
    assert code == EXIT_CONFIG
    assert out == ""
    assert len(err.strip().splitlines()) == 1


def test_cli_unwritable_output(tmp_path, capsys):
    target = tmp_path / "missing" / "out.json"
    code, _, err = run(["constants", "--output", str(target)], capsys)
    assert code == EXIT_IO and "I/O" in err


def test_cli_config_file_and_precedence(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# comment\nK = 4\nformat = json\n")
    code, out, _ = run(["constants", "--config", str(cfg)], capsys)
    assert code == EXIT_OK and json.loads(out)["K"] == 4
    code, out, _ = run(["constants", "--config", str(cfg), "--K", "2"], capsys)
    assert json.loads(out)["K"] == 2
    bad = tmp_path / "bad.cfg"
    bad.write_text("K\n")
    code, _, err = run(["constants", "--config", str(bad)], capsys)
    assert code == EXIT_CONFIG
    code, _, _ = run(["constants", "--config", str(tmp_path / "none.cfg")], capsys)
    assert code == EXIT_CONFIG


def test_cli_output_dir_env(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("QCHOLDER_OUTPUT_DIR", str(tmp_path))
    code, out, _ = run(["sweep", "--K", "2", "--R", "10"], capsys)
    assert code == EXIT_OK and out == ""
    assert (tmp_path / "sweep.csv").read_text().startswith("K,R,estimate")


def test_cli_extremal(capsys):
    code, out, _ = run(["extremal", "--K", "2", "--R", "100", "--radii", "2",
                        "--angles", "4"], capsys)
    d = json.loads(out)
    assert code == EXIT_OK
    assert abs(d["quotient"] - 1.98030) < 1e-5
    assert len(d["table"]) == 1 + 2 * 4


def test_cli_solve_dump(tmp_path, capsys):
    dump = tmp_path / "f.bin"
    code, out, _ = run(["solve", "--mu", "constant", "--n", "128", "--dump", str(dump)],
                       capsys)
    assert code == EXIT_OK
    d = json.loads(out)
    assert d["iterations"] >= 1 and d["final_increment"] < 1e-10
    field = load_gridfield(dump)
    assert field.spec.n == 128


def test_cli_is_deterministic(tmp_path):
    outs = []
    for i in range(2):
        path = tmp_path / f"s{i}.csv"
        subprocess.run([sys.executable, "-m", "qcholder", "sweep", "--output", str(path)],
                       check=False)
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]
