import csv
import io
import json
import subprocess
import sys

import pytest

from fqsquares.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def stable(text):
    report = json.loads(text)
    report.pop("timing")
    return report


def test_verify_all_small(capsys):
    code, out, _ = run(capsys, "verify-all", "--field", "3", "--n-max", "2")
    assert code == 0
    report = json.loads(out)
    assert report["result"]["all_passed"] is True
    assert report["tool"] == "fqsquares" and report["version"]
    assert report["config"]["n_max"] == 2
    assert len(report["result"]["checks"]) == 8


@pytest.mark.parametrize("argv", [
    ("variance", "--field", "4", "--n", "2", "--m", "1", "--h", "0"),
    ("ncount", "--field", "3", "--n", "1", "--m", "1", "--h", "0"),
    ("variance", "--field", "9", "--n", "2", "--m", "1", "--h", "0"),
    ("variance", "--field", "3", "--n", "2", "--m", "1"),
    ("variance", "--field", "3", "--n", "2", "--m", "1", "--h", "0", "--gamma", "0"),
    ("hankel", "reduce", "--field", "3", "--seq", "1,0"),
    ("multiset", "--field", "3", "--seq", "1,0,0", "--mode", "sideways"),
    ("hankel", "reduce", "--field", "3", "--seq", "1,0,0", "--format", "csv"),
    ("nonsense", "--field", "3"),
])
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert "error" in err


def test_even_characteristic_reported(capsys):
    _, _, err = run(capsys, "variance", "--field", "4", "--n", "2", "--m", "1", "--h", "0")
    assert json.loads(err)["error"] == "EvenCharacteristic"


def test_variance_report(capsys):
    code, out, _ = run(capsys, "variance", "--field", "3", "--n", "2", "--m", "1", "--h", "0",
                       "--gamma", "2", "--method", "both")
    assert code == 0
    r = json.loads(out)["result"]
    assert r["match"] is True
    assert r["closed"]["num"] == r["brute"]["num"] == "18"
    assert r["closed"]["scale"] == {"q": 3, "exponent": 4}
    assert "elapsed_ms" in json.loads(out)["timing"]


def test_reports_are_deterministic(capsys):
    argv = ("ncount", "--field", "3", "--n", "3", "--m", "1", "--h", "0", "--mode", "both")
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert stable(first) == stable(second)
    a, b = json.loads(first), json.loads(second)
    for r in (a, b):
        r.pop("timing")
    assert json.dumps(a, indent=2) == json.dumps(b, indent=2)
    assert list(json.loads(first)) == ["tool", "version", "config", "result", "timing"]


def test_ncount_table(capsys):
    code, out, _ = run(capsys, "ncount", "--field", "3", "--n", "3", "--m", "1", "--h", "0",
                       "--mode", "both", "--shards", "2")
    assert code == 0
    r = json.loads(out)["result"]
    assert r["all_match"] is True
    cells = {(c["rho2"], c["rho1"]): c for c in r["cells"]}
    assert cells[(0, 0)]["closed"] == "3"
    assert all(c["match"] for c in r["cells"])


def test_theorem_check_csv(capsys):
    code, out, _ = run(capsys, "theorem-check", "--field", "3", "--n-max", "2")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["n", "m", "h", "gamma", "case", "subcase", "closed", "brute", "match"]
    assert len(rows) - 1 == 2 * (3 + 5 + 5)
    assert all(r[8] == "True" for r in rows[1:])


def test_mismatch_rows_sort_first(monkeypatch, capsys):
    from fqsquares import cli
    from fqsquares.variance import ScaledRational

    real = cli.variance_closed

    def skewed(q, n, m, h):
        v = real(q, n, m, h)
        return ScaledRational(v.numerator + 1, v.q, v.exponent) if (n, h) == (2, 3) else v

    monkeypatch.setattr(cli, "variance_closed", skewed)
    code, out, err = run(capsys, "theorem-check", "--field", "3", "--n-max", "2")
    assert code == 1 and "mismatch" in err
    rows = list(csv.reader(io.StringIO(out)))[1:]
    flags = [r[8] for r in rows]
    assert flags == sorted(flags)  # "False" sorts before "True"
    assert {(r[0], r[2]) for r in rows if r[8] == "False"} == {("2", "3")}


def test_hankel_reduce(capsys):
    code, out, _ = run(capsys, "hankel", "reduce", "--field", "3", "--seq", "1,0,0,0,1")
    assert code == 0
    r = json.loads(out)["result"]
    assert r["reduced"] == [[1, 0, 0], [0, 0, 0], [0, 0, 1]]
    assert r["partition"] == {"p1_prime": 1, "p1_dblprime": 1, "tail": [1]}
    assert (r["rho_s"], r["pi_s"], r["rank"]) == (1, 1, 2)


def test_multiset_compare(capsys):
    code, out, _ = run(capsys, "multiset", "--field", "3", "--seq", "1,0,0,0,1", "--mode", "monic",
                       "--compare", "closed")
    assert code == 0
    r = json.loads(out)["result"]
    assert r["enumerated"] == r["closed"] == ["0", "3", "6"] and r["match"]


def test_charsum_routes(capsys):
    code, out, _ = run(capsys, "charsum", "--field", "3", "--seq", "0,0,1,0,0")
    r = json.loads(out)["result"]
    assert code == 0 and r["closed"] == r["direct"] == r["multiset"] == "0"
    code, out, _ = run(capsys, "charsum", "--field", "3", "--n", "2", "--m", "1", "--h", "2")
    r = json.loads(out)["result"]
    assert code == 0 and r["square_sum_characters"] == "729"


def test_out_file_and_pretty(tmp_path, capsys):
    path = tmp_path / "report.json"
    code, out, _ = run(capsys, "variance", "--field", "3^2:1,0,1", "--n", "2", "--m", "1", "--h", "1",
                       "--out", str(path))
    assert code == 0 and out == ""
    assert json.loads(path.read_text())["result"]["match"] is True
    code, out, _ = run(capsys, "hankel", "reduce", "--field", "3", "--seq", "0,0,1", "--format", "pretty")
    assert code == 0 and "rho_s: 0" in out
    code, _, _ = run(capsys, "variance", "--field", "3", "--n", "2", "--m", "1", "--h", "1",
                     "--out", str(tmp_path / "missing" / "x.json"))
    assert code == 2


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "fqsquares.cli", "--version"], capture_output=True, text=True)
    assert proc.returncode == 0 and "fqsquares" in proc.stdout
