"""Report structure, determinism, and the named verification suites."""

import json
from fractions import Fraction

import pytest

from sftlab.reports import (
    ACCEPTANCE_CRITERIA,
    CheckRecord,
    Recorder,
    Report,
    SUITE_NAMES,
    builtin_bundle,
    builtin_pair,
    profile_payload,
    run_criterion,
    run_suite,
)
from sftlab.coding_range import coding_range_profile, lyapunov_bounds

STATUS_VOCABULARY = {
    "Confirmed",
    "Consistent",
    "Inconclusive",
    "Violated",
    "NotStrict",
    "Indeterminate",
}


def make_report(records):
    return Report(suite="spectra", records=records, tol=1e-9, budget=1000)


# -- records and reports ----------------------------------------------------


def test_record_serializes_fractions_and_rounds_runtime():
    record = CheckRecord(
        "x", "Confirmed", lhs=Fraction(-1, 3), rhs=(Fraction(1), 2), runtime_ms=1.23456
    )
    doc = record.to_dict()
    assert doc["lhs"] == "-1/3"
    assert doc["rhs"] == ["1", 2]
    assert doc["runtime_ms"] == 1.235


def test_exit_code_only_trips_on_violated():
    ok = make_report([CheckRecord("a", s) for s in sorted(STATUS_VOCABULARY - {"Violated"})])
    assert ok.exit_code == 0
    bad = make_report([CheckRecord("a", "Confirmed"), CheckRecord("b", "Violated")])
    assert bad.exit_code == 1
    assert bad.counts() == {"Confirmed": 1, "Violated": 1}


def test_report_json_shape():
    report = make_report([CheckRecord("a", "Confirmed", lhs=0.5, rhs=0.5, tol=1e-9)])
    doc = json.loads(report.to_json())
    assert doc["log_base"] == "nats"
    assert doc["summary"] == {"total": 1, "Confirmed": 1}
    assert doc["exit_code"] == 0
    assert doc["records"][0]["name"] == "a"


def test_mask_runtime_hides_the_only_wall_clock_field():
    report = make_report([CheckRecord("a", "Confirmed", runtime_ms=17.0)])
    assert report.to_dict()["records"][0]["runtime_ms"] == 17.0
    assert report.to_dict(mask_runtime=True)["records"][0]["runtime_ms"] is None


def test_render_layout():
    report = make_report(
        [
            CheckRecord("short", "Confirmed", lhs=1.0, rhs=None),
            CheckRecord("long", "Violated", lhs="x" * 40),
        ]
    )
    text = report.render()
    lines = text.splitlines()
    assert "logs: nats" in lines[0]
    assert "-" in lines[2]  # None renders as a dash
    assert "x" * 13 + "..." in lines[3]
    assert lines[-1] == "exit code: 1"
    assert "summary: 2 checks" in lines[-2]


def test_recorder_helpers():
    rec = Recorder()
    rec.exact("eq", True, lhs=1, rhs=1)
    rec.exact("neq", False)
    rec.close("near", 1.0, 1.0 + 1e-12, 1e-9)
    rec.close("far", 1.0, 2.0, 1e-9)
    rec.wrap("wrapped", {"status": "NotStrict", "gap": 0.0, "tol": 1e-9})
    statuses = [r.status for r in rec.records]
    assert statuses == ["Confirmed", "Violated", "Confirmed", "Violated", "NotStrict"]
    assert rec.records[4].lhs == 0.0
    assert all(r.runtime_ms >= 0 for r in rec.records)


# -- builtin caches ---------------------------------------------------------


def test_builtin_pair_is_cached():
    assert builtin_pair("shift") is builtin_pair("shift")
    bundle = builtin_bundle("shift")
    assert len(bundle) == 5
    assert bundle is builtin_bundle("shift")


# -- criteria ---------------------------------------------------------------


def test_criteria_table_shape():
    assert len(ACCEPTANCE_CRITERIA) == 12
    ids = [cid for cid, _, _ in ACCEPTANCE_CRITERIA]
    assert ids == sorted(ids)
    assert ids[0] == "01-golden-entropy"
    assert ids[-1] == "12-oracle-equivalence"


def test_run_criterion_prefixes_names():
    records = run_criterion("01-golden-entropy")
    assert records
    assert all(r.name.startswith("01-golden-entropy/") for r in records)
    assert all(r.status == "Confirmed" for r in records)


def test_run_criterion_unknown_id():
    with pytest.raises(KeyError):
        run_criterion("99-nope")


# -- suites -----------------------------------------------------------------


def test_run_suite_rejects_unknown_name():
    with pytest.raises(ValueError) as info:
        run_suite("nope")
    assert "unknown suite" in str(info.value)
    assert set(SUITE_NAMES) == {"acceptance", "theorem-3", "theorem-4", "spectra", "profile"}


def test_profile_suite_is_deterministic_modulo_runtime():
    first = run_suite("profile", {"auto": "tau_golden"})
    second = run_suite("profile", {"auto": "tau_golden"})
    assert first.to_json(mask_runtime=True) == second.to_json(mask_runtime=True)
    assert first.exit_code == 0


def test_profile_suite_payload_fields():
    report = run_suite("profile", {"auto": "tau_golden"})
    payload = report.payload["profile"]
    assert payload["W_plus"] == [1, 2, 3, 4]
    assert payload["alpha_minus"] == {"lo": "0", "hi": "0"}
    assert payload["alpha_plus"] == {"lo": "1", "hi": "1"}
    assert payload["method"] == "exact-product"
    # the rendered payload matches a direct computation
    shift, auto = builtin_pair("tau_golden")
    profile = coding_range_profile(auto, 4)
    bounds = lyapunov_bounds(auto, 4, profile=profile)
    assert payload == profile_payload(profile, bounds)


def test_profile_suite_marks_distortion_candidates_consistent():
    report = run_suite("profile", {"auto": "vertex_swap_B", "n_max": 3})
    enclosure = [r for r in report.records if r.name == "lyapunov-enclosure"]
    assert enclosure[0].status == "Consistent"
    assert report.exit_code == 0


def test_spectra_suite_default_polynomial():
    report = run_suite("spectra")
    names = [r.name for r in report.records]
    assert names == [
        "condition-dominant-root",
        "condition-net-traces",
        "condition-reciprocal",
        "realization",
        "entropy-bound-failure",
    ]
    assert report.exit_code == 0
    assert report.payload["matrix"] == [[5, 1, 0], [5, 0, 1], [4, 1, 0]]
    assert report.payload["conditions"]["net_traces"][:2] == [5, 32]


def test_spectra_suite_flags_reciprocal_failure():
    report = run_suite("spectra", {"poly": [1, -2], "search": False})
    by_name = {r.name: r.status for r in report.records}
    assert by_name["condition-dominant-root"] == "Confirmed"
    assert by_name["condition-reciprocal"] == "Violated"
    assert report.exit_code == 1


def test_spectra_suite_reports_indeterminate_band():
    report = run_suite("spectra", {"poly": [1, -1, -1], "search": False})
    by_name = {r.name: r.status for r in report.records}
    assert by_name["condition-reciprocal"] == "Indeterminate"
    assert report.exit_code == 0


def test_theorem_suites_run_clean():
    for name in ("theorem-3", "theorem-4"):
        report = run_suite(name)
        assert report.records, name
        assert {r.status for r in report.records} <= STATUS_VOCABULARY
        assert report.exit_code == 0, name
