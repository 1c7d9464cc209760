import csv
import io
import json

import pytest

from dqcomm.cli import main, parse_grid


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_curves_header_and_order(capsys):
    code, out, _ = run(capsys, "curves", "--schemes", "proposed7,proposed1", "--p", "0.2,0")
    assert code == 0
    assert out.splitlines()[0] == "p,scheme,qber,yield,goodput"
    got = [(r["scheme"], r["p"]) for r in rows(out)]
    assert got == [("proposed1", "0"), ("proposed1", "0.2"), ("proposed7", "0"), ("proposed7", "0.2")]


def test_curve_values(capsys):
    _, out, _ = run(capsys, "curves", "--schemes", "proposed1,proposed7", "--p", "0")
    by = {r["scheme"]: r for r in rows(out)}
    assert (by["proposed1"]["qber"], by["proposed1"]["yield"], by["proposed1"]["goodput"]) == ("0", "0.5", "0.5")
    assert float(by["proposed7"]["yield"]) == pytest.approx(1 / 7, abs=1e-12)


def test_exact_columns(capsys):
    _, out, _ = run(capsys, "curves", "--schemes", "proposed1", "--p", "3/10", "--exact")
    (row,) = rows(out)
    num, den = map(int, row["yield_exact"].split("/"))
    assert num / den == pytest.approx(float(row["yield"]), rel=1e-11)
    # (1/2)(1 - 4p/3 + 8p^2/9) at p = 3/10
    assert row["yield_exact"] == "17/50"


def test_identical_runs_are_byte_identical(capsys):
    argv = ["mc", "--schemes", "proposed2", "--p", "0.1", "--trials", "2000", "--seed", "4"]
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]
    assert run(capsys, "curves")[1] == run(capsys, "curves")[1]


def test_mc_reports_undefined(capsys):
    seen = []
    for seed in range(20):
        _, out, _ = run(capsys, "mc", "--schemes", "proposed1", "--p", "1", "--trials", "1",
                        "--seed", str(seed))
        seen += [r for r in rows(out) if r["retained"] == "0"]
    assert seen
    assert all(r["qber"] == r["goodput"] == r["stderr"] == "undefined" for r in seen)


def test_thresholds(capsys):
    _, out, _ = run(capsys, "threshold", "--schemes", "proposed1,proposed7,noisefree_elim")
    got = {r["scheme"]: r["p_th"] for r in rows(out)}
    assert abs(float(got["proposed1"]) - 0.5) <= 1e-6
    assert abs(float(got["proposed7"]) - 0.081) <= 1e-3
    assert got["noisefree_elim"] == "none"


@pytest.mark.parametrize("argv", [
    ["curves", "--schemes", "nosuch"],
    ["curves", "--p-grid", "0:2:3"],
    ["curves", "--p-grid", "nonsense"],
    ["mc", "--trials", "0"],
    ["verify", "--criteria", "11"],
    ["lut", "proposed1"],
])
def test_usage_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == "" and "error" in err


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["curves", "--format", "xml"])
    assert exc.value.code == 2


def test_verify_subset(capsys):
    code, out, err = run(capsys, "verify", "--criteria", "1,3")
    assert code == 0
    assert json.loads(out)["passed"] is True
    assert "criterion  1 PASS" in err


def test_verify_reports_failure(capsys):
    code, out, err = run(capsys, "verify", "--criteria", "4")
    assert code == 1
    (crit,) = json.loads(out)["criteria"]
    assert [c["name"] for c in crit["checks"] if not c["passed"]] == ["success polynomial"]
    assert "FAIL" in err


def test_resources(capsys):
    _, out, _ = run(capsys, "resources", "--table", "correction")
    assert out.splitlines()[0] == "scheme,n,k,e,c,cnot"
    assert "Proposed,7,1,6,6,22" in out.splitlines()
    _, out, _ = run(capsys, "resources", "--format", "json")
    assert len(json.loads(out)) == 7


def test_exports(capsys, tmp_path):
    target = tmp_path / "lut.json"
    assert run(capsys, "lut", "proposed7", "--out", str(target))[0] == 0
    table = json.loads(target.read_text())
    assert json.dumps(table)
    _, out, _ = run(capsys, "scheme", "proposed2q")
    assert json.loads(out)["name"] == "proposed2q"


def test_grid():
    assert parse_grid("0:0.5:11")[1] == parse_grid("0:0.5:11")[2] / 2
    assert len(parse_grid("0:1:1")) == 1
