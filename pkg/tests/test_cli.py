"""End-to-end command-line behavior: output, JSON artifacts, exit codes."""

import json

import pytest

from sftlab.builtins import make_builtin
from sftlab.cli import main
from sftlab.systems import save_system


@pytest.fixture
def swap_file(tmp_path):
    shift, auto = make_builtin("vertex_swap_B")
    path = tmp_path / "swap.json"
    save_system(path, shift, {"t": auto})
    return str(path)


@pytest.fixture
def tau_file(tmp_path):
    shift, auto = make_builtin("tau_golden")
    path = tmp_path / "tau.json"
    save_system(path, shift, {"tau": auto})
    return str(path)


# -- analyze ----------------------------------------------------------------


def test_analyze_prints_a_report(swap_file, capsys):
    assert main(["analyze", swap_file]) == 0
    out = capsys.readouterr().out
    assert "logs: nats" in out
    assert "t/coding-range" in out
    assert "t/dimension-action" in out
    assert "exit code: 0" in out


def test_analyze_json_artifact(swap_file, tmp_path, capsys):
    json_path = tmp_path / "report.json"
    assert main(["analyze", swap_file, "--json", str(json_path)]) == 0
    doc = json.loads(json_path.read_text())
    assert doc["exit_code"] == 0
    assert doc["payload"]["t"]["S_phi"] == [["0", "1"], ["1", "0"]]
    assert doc["payload"]["t"]["profile"]["W_minus"] == [0, 0, 0]


def test_analyze_single_automorphism_with_entropy_bound(tau_file, capsys):
    assert main(["analyze", tau_file, "--auto", "tau"]) == 0
    out = capsys.readouterr().out
    assert "tau/entropy-bound" in out
    assert "tau/main-bounds" in out


def test_analyze_census_option(tau_file, tmp_path):
    json_path = tmp_path / "census.json"
    assert main(["analyze", tau_file, "--w", "1", "--steps", "2", "--json", str(json_path)]) == 0
    census = json.loads(json_path.read_text())["payload"]["tau"]["census"]
    assert census == {
        "w": 1,
        "n": 2,
        "count": 104,
        "estimate": pytest.approx(0.5 * 4.644390899),
        "certified": True,
        "method": "product-form",
    }


def test_analyze_unknown_automorphism(swap_file, capsys):
    assert main(["analyze", swap_file, "--auto", "ghost"]) == 2
    err = capsys.readouterr().err
    assert "input error" in err
    assert "['t']" in err


def test_analyze_missing_file(capsys):
    assert main(["analyze", "/nonexistent/system.json"]) == 2
    assert "input error: $:" in capsys.readouterr().err


def test_analyze_bad_matrix_entry(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"shift": {"matrix": [[1, -1], [1, 0]]}}))
    assert main(["analyze", str(path)]) == 2
    assert "$.shift.matrix[0][1]" in capsys.readouterr().err


def test_analyze_honors_budget_env(tau_file, monkeypatch, capsys):
    monkeypatch.setenv("SFTLAB_BUDGET", "10")
    assert main(["analyze", tau_file]) == 3
    assert "budget exceeded" in capsys.readouterr().err


def test_analyze_wrong_inverse_is_an_input_error(tmp_path, capsys):
    _, shift_auto = make_builtin("shift")
    doc = {
        "shift": {"full_shift": 2},
        "automorphisms": {
            "bad": {
                "forward": {
                    "memory": 1,
                    "anticipation": 1,
                    "rule": [
                        {"window": [a, b, c], "out": c}
                        for a in (0, 1)
                        for b in (0, 1)
                        for c in (0, 1)
                    ],
                },
                "inverse": {
                    "memory": 0,
                    "anticipation": 0,
                    "rule": [
                        {"window": [0], "out": 0},
                        {"window": [1], "out": 1},
                    ],
                },
            }
        },
    }
    path = tmp_path / "noninverse.json"
    path.write_text(json.dumps(doc))
    assert main(["analyze", str(path)]) == 2
    assert "input error" in capsys.readouterr().err


# -- suite ------------------------------------------------------------------


def test_suite_profile(capsys):
    assert main(["suite", "profile", "--auto", "shift", "--n-max", "3"]) == 0
    assert "lyapunov-enclosure" in capsys.readouterr().out


def test_suite_rejects_unknown_name(capsys):
    with pytest.raises(SystemExit) as info:
        main(["suite", "nope"])
    assert info.value.code == 2


def test_suite_spectra_accepts_poly(tmp_path):
    json_path = tmp_path / "suite.json"
    code = main(["suite", "spectra", "--poly", "[1,-5,-6,1]", "--json", str(json_path)])
    assert code == 0
    doc = json.loads(json_path.read_text())
    assert doc["payload"]["matrix"] == [[5, 1, 0], [5, 0, 1], [4, 1, 0]]


# -- spectra check ----------------------------------------------------------


def test_spectra_check_passes_on_cubic(capsys):
    assert main(["spectra", "check", "--poly", "[1,-5,-6,1]"]) == 0
    out = capsys.readouterr().out
    assert "condition-reciprocal" in out
    assert "Violated" not in out


def test_spectra_check_flags_full_shift(capsys):
    assert main(["spectra", "check", "--poly", "[1,-2]"]) == 1
    assert "Violated" in capsys.readouterr().out


def test_spectra_check_bad_poly_inputs(capsys):
    assert main(["spectra", "check", "--poly", "not json"]) == 2
    assert main(["spectra", "check", "--poly", "[2,-1]"]) == 2
    err = capsys.readouterr().err
    assert "input error: --poly" in err
    assert "leading coefficient is 2" in err


# -- spectra search ---------------------------------------------------------


def test_spectra_search_prints_matrix_and_verdict(tmp_path, capsys):
    json_path = tmp_path / "search.json"
    code = main(
        ["spectra", "search", "--poly", "[1,-5,-6,1]", "--json", str(json_path)]
    )
    assert code == 0
    out = capsys.readouterr().out
    assert "[5, 1, 0]" in out
    assert "characteristic polynomial: t^3 - 5t^2 - 6t + 1" in out
    assert "inverse-spectral-radius check: Confirmed" in out
    doc = json.loads(json_path.read_text())
    assert doc["matrix"] == [[5, 1, 0], [5, 0, 1], [4, 1, 0]]
    assert doc["eb_failure"]["status"] == "Confirmed"


def test_spectra_search_padding_case(capsys):
    assert main(["spectra", "search", "--poly", "[1,-9]", "--max-entry", "8"]) == 0
    assert "[8, 1]" in capsys.readouterr().out


def test_spectra_search_exhaustion_is_not_an_error(tmp_path, capsys):
    json_path = tmp_path / "empty.json"
    code = main(
        ["spectra", "search", "--poly", "[1,-5,-6,1]", "--budget", "0",
         "--json", str(json_path)]
    )
    assert code == 0
    assert "no primitive realization" in capsys.readouterr().out
    assert json.loads(json_path.read_text())["matrix"] is None


def test_spectra_search_precondition_failure(capsys):
    assert main(["spectra", "search", "--poly", "[1,0,1]"]) == 2
    assert "dominant-root and net-trace" in capsys.readouterr().err
