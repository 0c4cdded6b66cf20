import csv
import io
import json

import pytest

from dualdefect.certificate import loads
from dualdefect.cli import main, parse_range


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def load(path):
    return loads(path.read_text(encoding="utf-8"))


def test_verify_with_propagation(tmp_path, capsys):
    code, out, _ = run(["verify", "--codim", "3", "--N", "10..12", "--propagate", "--out", str(tmp_path)], capsys)
    assert code == 0
    rows = json.loads(out)
    assert [(r["N"], r["resolution"], r["verdict"]) for r in rows] == [
        ("10", "searched", "True"),
        ("11", "propagated-from(N-1)", "True"),
        ("12", "searched", "True"),
        ("13", "propagated-from(N-1)", "True"),
    ]
    prop = load(tmp_path / "codim3_N11.json")
    assert prop.provenance["source_file"] == "codim3_N10.json"
    assert (tmp_path / "summary.csv").exists()


def test_propagation_soundness_gate(tmp_path, capsys):
    run(["verify", "--codim", "3", "--N", "10..30", "--even-only", "--propagate", "--out", str(tmp_path)], capsys)
    for path in tmp_path.glob("codim3_N*.json"):
        cert = load(path)
        if cert.resolution == "propagated-from(N-1)":
            src = tmp_path / cert.provenance["source_file"]
            source = load(src)
            assert source.verdict and source.resolution == "searched"
            assert source.case.N == cert.case.N - 1 and source.case.N % 2 == 0 and source.case.m == 3


def test_propagation_from_prior_certificate(tmp_path, capsys):
    run(["verify", "--codim", "3", "--N", "12", "--out", str(tmp_path)], capsys)
    assert not (tmp_path / "codim3_N13.json").exists()
    code, out, _ = run(["verify", "--codim", "3", "--N", "13", "--propagate", "--out", str(tmp_path)], capsys)
    assert code == 0 and json.loads(out)[0]["resolution"] == "propagated-from(N-1)"


def test_no_propagation_without_flag(tmp_path, capsys):
    code, out, _ = run(["verify", "--codim", "3", "--N", "10..11", "--out", str(tmp_path)], capsys)
    assert code == 0
    assert {r["resolution"] for r in json.loads(out)} == {"searched"}


def test_general_propagation(tmp_path, capsys):
    code, out, _ = run(
        ["verify", "--codim", "4", "--N", "16..17", "--propagate-general", "--out", str(tmp_path)], capsys
    )
    rows = {r["N"]: r for r in json.loads(out)}
    assert rows["16"]["resolution"] == "searched"
    assert rows["17"]["resolution"] == "searched"  # 17 - 4 is odd: no propagation
    assert code == (0 if rows["16"]["verdict"] == rows["17"]["verdict"] == "True" else 1)


def test_constraint_violation_exits_2(tmp_path, capsys):
    code, _, err = run(["verify", "--codim", "4", "--N", "13", "--out", str(tmp_path)], capsys)
    assert code == 2 and "N >= 4m - 2" in err
    assert not list(tmp_path.glob("*.json"))


def test_candidates_exit_1(tmp_path, capsys):
    code, out, _ = run(["verify", "--codim", "4", "--N", "14", "--format", "csv", "--out", str(tmp_path)], capsys)
    assert code == 1
    (row,) = list(csv.DictReader(io.StringIO(out)))
    assert row["verdict"] == "False" and row["candidates"] == "1"


def test_theorem51(tmp_path, capsys):
    code, out, _ = run(["verify", "--codim", "3", "--N", "11", "--theorem51", "--out", str(tmp_path)], capsys)
    assert code == 0
    (row,) = json.loads(out)
    assert row["resolution"] == "deduced-theorem51" and row["enumerated"] == "0"
    cert = load(tmp_path / "codim3_N11.json")
    assert cert.provenance["pattern_index"] == "9"


def test_theorem51_other_codim_is_usage_error(tmp_path, capsys):
    code, _, _ = run(["verify", "--codim", "4", "--N", "15", "--theorem51", "--out", str(tmp_path)], capsys)
    assert code == 2


def test_resource_failure_cleans_up(tmp_path, capsys, monkeypatch):
    import dualdefect.cli as cli
    from dualdefect.errors import SearchResourceError

    real = cli.run_case

    def flaky(case, options):
        if case.N == 12:
            raise SearchResourceError("simulated")
        return real(case, options)

    monkeypatch.setattr(cli, "run_case", flaky)
    code, _, err = run(["verify", "--codim", "3", "--N", "10..12", "--out", str(tmp_path)], capsys)
    assert code == 4 and "simulated" in err
    assert not list(tmp_path.glob("*.json"))


def test_existing_files_survive_failure(tmp_path, capsys, monkeypatch):
    import dualdefect.cli as cli
    from dualdefect.errors import SearchResourceError

    run(["verify", "--codim", "3", "--N", "10", "--out", str(tmp_path)], capsys)

    def broken(case, options):
        raise SearchResourceError("simulated")

    monkeypatch.setattr(cli, "run_case", broken)
    assert run(["verify", "--codim", "3", "--N", "10", "--out", str(tmp_path)], capsys)[0] == 4
    assert (tmp_path / "codim3_N10.json").exists()


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "--codim", "3", "--N", "12..10"],
        ["verify", "--codim", "3", "--N", "x"],
        ["verify", "--codim", "3", "--N", "10", "--even-only", "--odd-only"],
        ["seq", "--coeffs", "1,a"],
        ["seq", "--coeffs", "1,-1"],
        ["bound", "--codim", "3", "--N", "10", "--r", "2"],
        ["classify", "--cmax", "-1"],
    ],
)
def test_usage_errors_exit_2(argv, capsys, tmp_path):
    if argv[0] == "verify":
        argv = argv + ["--out", str(tmp_path)]
    assert run(argv, capsys)[0] == 2


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--codim", "3", "--N", "10", "--threads", "0"])
    assert exc.value.code == 2


@pytest.mark.parametrize(
    "N, m, lines", [(11, 3, ["r=2: 40"]), (10, 3, ["r=1: 40"]), (18, 5, ["r=1: 9331", "r=3: 3906"])]
)
def test_bound(N, m, lines, capsys):
    code, out, _ = run(["bound", "--codim", str(m), "--N", str(N)], capsys)
    assert code == 0 and out.splitlines() == lines


def test_seq(capsys):
    code, out, _ = run(["seq", "--coeffs", "3,9,27", "--len", "11"], capsys)
    assert code == 0
    s, u = out.splitlines()
    assert s == "s: 1 3 0 0 81 243 0 0 6561 19683 0 0"
    assert u == "u: 0 0 1 3 0 0 81 243 0 0 6561 19683 0 0"
    _, out, _ = run(["seq", "--coeffs", "1,0,0", "--len", "5"], capsys)
    assert out.splitlines() == ["s: 1 1 1 1 1 1"]
    _, out, _ = run(["seq", "--coeffs", "4,8,8", "--len", "11"], capsys)
    assert out.splitlines()[0] == "s: 1 4 8 8 0 0 64 256 512 512 0 0"


def test_classify(capsys):
    code, out, _ = run(["classify", "--cmax", "12", "--horizon", "60"], capsys)
    lines = out.splitlines()
    assert code == 0 and "anomalies: 0" in lines
    assert {l.split(":")[0] for l in lines if l.startswith("m=")} == {"m=4", "m=6"}
    code, out, _ = run(["classify", "--cmax", "1", "--horizon", "20", "--list"], capsys)
    assert code == 0 and "(1,1,1) -> 4" in out
    code, out, _ = run(["classify", "--cmax", "0"], capsys)
    assert code == 0 and "anomalies: 0" in out and "m=" not in out


def test_classify_anomaly_exits_3(capsys, monkeypatch):
    import dualdefect.codim3 as mod

    monkeypatch.setattr(mod, "ALLOWED_PATTERN_INDICES", (4,))
    code, _, err = run(["classify", "--cmax", "8"], capsys)
    assert code == 3 and "ANOMALY" in err


def test_parse_range():
    assert parse_range("10..12") == [10, 11, 12]
    assert parse_range("7") == [7]
