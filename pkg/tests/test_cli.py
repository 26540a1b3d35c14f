import io
import json
import sys

import pytest

from hermtensor.cli import main, run
from hermtensor.quadrature import NonFiniteIntegrandError


def invoke(argv):
    buf = io.StringIO()
    code = main(argv, buf)
    return code, buf.getvalue()


def invoke_json(argv):
    code, text = invoke(argv)
    return code, json.loads(text)


# --- basis ----------------------------------------------------------------


def test_basis_rank_one_point():
    code, report = invoke_json(["basis", "--rank", "1", "--point", "1,0,0"])
    assert code == 0
    assert report["command"] == "basis"
    assert [c["value"] for c in report["components"]] == [2.0, 0.0, 0.0]


def test_basis_rank_zero_defaults_to_origin():
    code, report = invoke_json(["basis", "--rank", "0"])
    assert code == 0
    assert report["components"] == [{"index": [], "value": 1.0}]


def test_basis_symbolic_rank_two_table():
    code, report = invoke_json(["basis", "--rank", "2", "--symbolic"])
    assert code == 0
    by_index = {tuple(c["index"]): c["terms"] for c in report["components"]}
    assert by_index[(0, 0)] == [
        {"exponents": [2, 0, 0], "coefficient": 4},
        {"exponents": [0, 0, 0], "coefficient": -2},
    ]
    assert by_index[(0, 1)] == [{"exponents": [1, 1, 0], "coefficient": 4}]


def test_basis_probabilist_convention():
    code, report = invoke_json(["basis", "--rank", "1", "--point", "1,0,0", "--convention", "probabilist"])
    assert code == 0
    assert [c["value"] for c in report["components"]] == [1.0, 0.0, 0.0]


def test_basis_rank_overflow_exits_2():
    assert invoke(["basis", "--rank", "7", "--point", "0,0,0"])[0] == 2
    assert invoke(["basis", "--rank", "5", "--symbolic"])[0] == 2


def test_basis_symbolic_point_conflict():
    assert invoke(["basis", "--rank", "2", "--symbolic", "--point", "1,0,0"])[0] == 2


def test_basis_malformed_point():
    assert invoke(["basis", "--rank", "1", "--point", "1,0"])[0] == 2


# --- window ---------------------------------------------------------------


def test_window_plain_interval():
    code, report = invoke_json(["window", "--ti", "2000", "--tn", "1000"])
    assert code == 0
    assert report["window"] == [1000.0, 2000.0]
    assert report["message"] == "(1000, 2000)"


def test_window_equal_temperatures():
    code, report = invoke_json(["window", "--ti", "1000", "--tn", "1000"])
    assert code == 0
    assert report["message"] == "(500, 2000)"


def test_window_empty_at_factor_four():
    code, report = invoke_json(["window", "--ti", "4000", "--tn", "1000"])
    assert code == 0
    assert report["window"] is None
    assert report["message"].startswith("EMPTY: collision-term criterion violated")


def test_window_bad_ordering_exits_2():
    assert invoke(["window", "--ti", "100", "--tn", "200"])[0] == 2


# --- verify suites --------------------------------------------------------


def test_verify_ortho_passes():
    code, report = invoke_json(["verify", "ortho", "--max-rank", "3", "--quad-order", "12"])
    assert code == 0
    assert report["pass"] is True
    for row in report["results"]:
        assert set(row) >= {"check", "value", "tolerance", "mode", "pass"}
        assert row["value"] <= row["tolerance"]


def test_verify_ortho_low_order_exits_2():
    assert invoke(["verify", "ortho", "--max-rank", "4", "--quad-order", "6"])[0] == 2


def test_verify_scale_reports_expected_divergence():
    code, report = invoke_json(["verify", "scale", "--alpha", "2.0"])
    assert code == 0
    (row,) = report["results"]
    assert row["classification"] == "divergent"
    assert row["pass"] is True


def test_verify_scale_default_set():
    code, report = invoke_json(["verify", "scale"])
    assert code == 0
    got = {r["check"]: r["classification"] for r in report["results"]}
    assert got == {
        "probe-alpha-0.5": "finite",
        "probe-alpha-1": "finite",
        "probe-alpha-1.3": "finite",
        "probe-alpha-1.5": "divergent",
        "probe-alpha-2": "divergent",
    }


def test_verify_translate_passes():
    code, report = invoke_json(["verify", "translate", "--seed", "3"])
    assert code == 0
    rows = {r["check"]: r for r in report["results"]}
    assert rows["broken-orthogonality"]["mode"] == "min"
    assert rows["broken-orthogonality"]["value"] > 1e-3
    assert report["config"]["seed"] == 3


def test_verify_rotate_passes():
    code, report = invoke_json(["verify", "rotate", "--ms", "16", "--msp", "16", "--max-rank", "3"])
    assert code == 0
    assert report["pass"] is True


def test_verify_rotate_rank_overflow_exits_2():
    assert invoke(["verify", "rotate", "--max-rank", "4"])[0] == 2


def test_verify_runs_are_byte_identical():
    argv = ["verify", "translate", "--seed", "42"]
    assert invoke(argv) == invoke(argv)
    argv = ["verify", "rotate", "--seed", "9", "--points", "5"]
    assert invoke(argv) == invoke(argv)


def test_csv_output_shape():
    code, text = invoke(["verify", "ortho", "--format", "csv"])
    assert code == 0
    lines = text.strip().splitlines()
    assert lines[0] == "check,value,tolerance,mode,pass"
    assert len(lines) == 3
    assert "{" not in text


# --- expand ---------------------------------------------------------------


def test_expand_drifting_maxwellian():
    code, report = invoke_json(
        ["expand", "--mass", "28", "--temperature", "300", "--drift", "300,0,0", "--max-rank", "2"]
    )
    assert code == 0
    assert report["admissible"] is True
    s = report["z_drift"][0]
    ranks = {r["rank"]: r["components"] for r in report["coefficients"]}
    assert ranks[0][0]["value"] == pytest.approx(1.0, rel=1e-10)
    assert ranks[1][0]["value"] == pytest.approx(s, rel=1e-10)
    assert ranks[2][0]["value"] == pytest.approx(s * s / 2.0, rel=1e-8)


def test_expand_rejects_bad_config():
    assert invoke(["expand", "--mass", "28", "--temperature", "300", "--max-rank", "9"])[0] == 2
    assert invoke(["expand", "--mass", "-1", "--temperature", "300"])[0] == 2
    assert invoke(["expand", "--mass", "28", "--temperature", "300", "--quad-order", "40"])[0] == 2


def test_numeric_error_exits_3(monkeypatch):
    def boom(*args, **kwargs):
        raise NonFiniteIntegrandError((0.0, 0.0, 0.0))

    monkeypatch.setattr("hermtensor.cli.expand", boom)
    assert invoke(["expand", "--mass", "28", "--temperature", "300"])[0] == 3


# --- entry point ----------------------------------------------------------


def test_missing_subcommand_exits_2():
    assert main([], io.StringIO()) == 2


def test_run_wrapper_raises_system_exit(monkeypatch, capsys):
    monkeypatch.setattr(sys, "argv", ["hermtensor", "window", "--ti", "2000", "--tn", "1000"])
    with pytest.raises(SystemExit) as err:
        run()
    assert err.value.code == 0
    assert '"message": "(1000, 2000)"' in capsys.readouterr().out
