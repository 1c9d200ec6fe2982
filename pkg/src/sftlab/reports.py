"""Verification suites and machine-readable reports.

Every check lands in a :class:`CheckRecord` with a status from the fixed
vocabulary {Confirmed, Consistent, Inconclusive, Violated, NotStrict,
Indeterminate}; a suite is a named list of records wrapped in a
:class:`Report`.  All logarithms are natural (nats), stated in every report
header.  Reports are deterministic given identical inputs -- byte-identical
once ``runtime_ms`` is masked, which is the one wall-clock field.

The acceptance suite is the package's contract: each criterion is a
standalone function usable from the test suite, and `run_suite("acceptance")`
executes them all.
"""

from __future__ import annotations

import json
import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import ratmat
from .builtins import (
    DEFAULT_SUITE,
    FIVE_SYMBOL_COMPLETIONS,
    five_symbol_code,
    five_symbol_no_wall_edges,
    make_builtin,
    shift_builtin,
)
from .codes import (
    automorphism_power,
    codes_equal,
    compose,
    infer_inverse,
    pad_code,
    power,
    resolve_budget,
    shift_code,
    inverse_shift_code,
    identity_code,
    SlidingBlockCode,
)
from .coding_range import (
    coded_minus,
    coded_minus_naive,
    coded_plus,
    coded_plus_naive,
    coding_range_profile,
    lyapunov_bounds,
    reverse_automorphism,
    w_values,
)
from .dimension import (
    Beam,
    apply_automorphism_to_ray,
    canonical_zero_ray,
    dimension_matrix,
    distortion_spectrum_check,
    refine_ray,
    theta,
    unstable_measure,
    verify_entropy_bound,
    verify_main_bounds,
)
from .entropy import (
    c_phi_diagnostic,
    column_census,
    exact_entropy_of,
    restrict_code_to_subsystem,
)
from .errors import NotInvertibleWithin, SftlabError
from .shifts import DEFAULT_TOL, build_edge_shift, count_words, dimension_data, perron_data
from .spectra import (
    IntPolynomial,
    check_conditions,
    search_primitive_realization,
    verify_eb_failure,
)
from .systems import format_fraction

GOLDEN_RATIO = (1 + math.sqrt(5)) / 2

SUITE_NAMES = ("acceptance", "theorem-3", "theorem-4", "spectra", "profile")


# -- records and reports ------------------------------------------------------


@dataclass
class CheckRecord:
    name: str
    status: str
    lhs: object = None
    rhs: object = None
    tol: object = None
    runtime_ms: float = 0.0
    detail: str = ""

    def to_dict(self):
        return {
            "name": self.name,
            "status": self.status,
            "lhs": _json_value(self.lhs),
            "rhs": _json_value(self.rhs),
            "tol": self.tol,
            "runtime_ms": round(self.runtime_ms, 3),
            "detail": self.detail,
        }


def _json_value(value):
    if isinstance(value, Fraction):
        return format_fraction(value)
    if isinstance(value, (tuple, list)):
        return [_json_value(v) for v in value]
    return value


@dataclass
class Report:
    suite: str
    records: list
    tol: float
    budget: int
    options: dict = field(default_factory=dict)
    payload: dict = field(default_factory=dict)

    @property
    def exit_code(self):
        return 1 if any(r.status == "Violated" for r in self.records) else 0

    def counts(self):
        out = {}
        for r in self.records:
            out[r.status] = out.get(r.status, 0) + 1
        return dict(sorted(out.items()))

    def to_dict(self, mask_runtime=False):
        records = [r.to_dict() for r in self.records]
        if mask_runtime:
            for r in records:
                r["runtime_ms"] = None
        doc = {
            "suite": self.suite,
            "log_base": "nats",
            "tol": self.tol,
            "budget": self.budget,
            "options": {k: _json_value(v) for k, v in sorted(self.options.items())},
            "records": records,
            "summary": {"total": len(self.records), **self.counts()},
            "exit_code": self.exit_code,
        }
        if self.payload:
            doc["payload"] = _json_value_deep(self.payload)
        return doc

    def to_json(self, mask_runtime=False):
        return json.dumps(self.to_dict(mask_runtime=mask_runtime), indent=2, sort_keys=True)

    def render(self):
        lines = [
            f"suite: {self.suite}   logs: nats   tol: {self.tol:g}   budget: {self.budget}"
        ]
        lines.append(f"{'check':44} {'status':13} {'lhs':>16} {'rhs':>16}")
        for r in self.records:
            lines.append(
                f"{r.name:44} {r.status:13} {_cell(r.lhs):>16} {_cell(r.rhs):>16}"
            )
        summary = ", ".join(f"{k}: {v}" for k, v in self.counts().items())
        lines.append(f"summary: {len(self.records)} checks -- {summary}")
        lines.append(f"exit code: {self.exit_code}")
        return "\n".join(lines)


def _json_value_deep(obj):
    if isinstance(obj, dict):
        return {k: _json_value_deep(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_value_deep(v) for v in obj]
    return _json_value(obj)


def _cell(value):
    if value is None:
        return "-"
    if isinstance(value, float):
        return f"{value:.9g}"
    if isinstance(value, Fraction):
        return format_fraction(value)
    text = str(value)
    return text if len(text) <= 16 else text[:13] + "..."


class Recorder:
    """Collects records, stamping each with the wall time since the last."""

    def __init__(self):
        self.records = []
        self._mark = time.perf_counter()

    def add(self, name, status, lhs=None, rhs=None, tol=None, detail=""):
        now = time.perf_counter()
        elapsed = (now - self._mark) * 1000.0
        self._mark = now
        record = CheckRecord(name, status, lhs, rhs, tol, elapsed, detail)
        self.records.append(record)
        return record

    def exact(self, name, ok, lhs=None, rhs=None, detail=""):
        return self.add(name, "Confirmed" if ok else "Violated", lhs, rhs, 0, detail)

    def close(self, name, lhs, rhs, tol, detail=""):
        ok = abs(lhs - rhs) <= tol
        return self.add(
            name, "Confirmed" if ok else "Violated", float(lhs), float(rhs), tol, detail
        )

    def wrap(self, name, verdict, detail=""):
        """Adopt a verifier's dict-shaped result as a record."""
        return self.add(
            name,
            verdict["status"],
            verdict.get("lhs", verdict.get("gap")),
            verdict.get("rhs"),
            verdict.get("tol"),
            detail,
        )


# -- shared builtin construction (cached per process) -------------------------

_BUILTIN_CACHE = {}
_BUNDLE_CACHE = {}


def _suite_key(name, params):
    return name, tuple(sorted(params.items()))


def builtin_pair(name, params=None):
    key = _suite_key(name, params or {})
    if key not in _BUILTIN_CACHE:
        _BUILTIN_CACHE[key] = make_builtin(name, dict(params or {}))
    return _BUILTIN_CACHE[key]


def builtin_bundle(name, params=None):
    """(shift, auto, dim, perron, action) with everything computed once."""
    key = _suite_key(name, params or {})
    if key not in _BUNDLE_CACHE:
        shift, auto = builtin_pair(name, params)
        dim = dimension_data(shift)
        perron = perron_data(shift)
        action = dimension_matrix(auto, dim=dim, perron=perron)
        _BUNDLE_CACHE[key] = (shift, auto, dim, perron, action)
    return _BUNDLE_CACHE[key]


# -- acceptance criteria ------------------------------------------------------


def _criterion_golden_entropy(rec, tol):
    shift = shift_builtin("golden_mean")
    perron = perron_data(shift)
    rec.close("entropy", perron.entropy, math.log(GOLDEN_RATIO), 1e-9)
    p0, p2 = count_words(shift, 0), count_words(shift, 2)
    rec.exact("word-counts", p0 == 1 and p2 == 5, lhs=f"P(0)={p0}, P(2)={p2}", rhs="1, 5")


def _criterion_shift_sharpness(rec, tol):
    shift, auto, dim, perron, action = builtin_bundle("shift")
    profile = coding_range_profile(auto, 4)
    expect = (-1, -2, -3, -4)
    rec.exact(
        "w-values",
        profile.w_minus == expect and profile.w_plus == expect,
        lhs=f"W-={profile.w_minus} W+={profile.w_plus}",
        rhs="both (-1,-2,-3,-4)",
    )
    bounds = lyapunov_bounds(auto, 4, profile=profile)
    rec.exact(
        "alpha-intervals",
        bounds.alpha_minus == (-1, -1) and bounds.alpha_plus == (-1, -1),
        lhs=f"{_interval_text(bounds.alpha_minus)} {_interval_text(bounds.alpha_plus)}",
        rhs="[-1,-1] twice",
    )
    rec.close("lambda-phi", action.lambda_phi, 2.0, 1e-9)
    rec.close("rho-S-phi", action.rho, 2.0, 1e-9)
    verdict = verify_main_bounds(auto, profile, action, dim, perron, tol=tol)
    sharp = verdict["status"] == "Confirmed" and abs(verdict["gap"]) <= 1e-9
    rec.add(
        "main-bounds-sharp",
        "Confirmed" if sharp else "Violated",
        verdict["gap"],
        0.0,
        1e-9,
        detail=f"verify_main_bounds: {verdict['status']}",
    )


def _criterion_tau_example(rec, tol):
    shift, auto, dim, perron, action = builtin_bundle("tau_golden")
    bounds = lyapunov_bounds(auto, 4)
    bounds_inv = lyapunov_bounds(auto.inverse_automorphism(), 4)
    rec.exact(
        "alpha-minus-tau",
        bounds.alpha_minus == (0, 0),
        lhs=_interval_text(bounds.alpha_minus),
        rhs="[0,0]",
    )
    rec.exact(
        "alpha-minus-tau-inverse",
        bounds_inv.alpha_minus == (-1, -1),
        lhs=_interval_text(bounds_inv.alpha_minus),
        rhs="[-1,-1]",
    )
    rec.close("log-rho-vs-entropy", math.log(action.rho), math.log(GOLDEN_RATIO), 1e-6)
    profile = coding_range_profile(auto, 4)
    verdict = verify_main_bounds(auto, profile, action, dim, perron, tol=tol)
    rec.add(
        "main-bounds",
        "Confirmed" if verdict["status"] == "Confirmed" else "Violated",
        verdict["gap"],
        None,
        tol,
        detail=f"verify_main_bounds: {verdict['status']}",
    )


def _criterion_product_entropy(rec, tol):
    shift, auto, dim, perron, action = builtin_bundle("sigma_x_sigma_inv")
    rec.close("lambda-phi", action.lambda_phi, 1.0, 1e-9)
    census = column_census(auto, 2, 6)
    rec.add(
        "column-census",
        "Confirmed" if census.estimate >= math.log(4) - 1e-9 else "Violated",
        census.estimate,
        math.log(4),
        1e-9,
        detail=f"count={census.count} method={census.method} certified={census.certified}",
    )
    entropy = exact_entropy_of(auto)
    verdict = verify_entropy_bound(auto, entropy, action, tol=tol)
    rec.wrap("entropy-bound", verdict, detail=f"exact h_top = {entropy:.6f}")


def _criterion_vertex_swap(rec, tol):
    shift, auto, dim, perron, action = builtin_bundle("vertex_swap_B")
    swap = ((Fraction(0), Fraction(1)), (Fraction(1), Fraction(0)))
    rec.exact("S-phi", action.S_phi == swap, lhs=_matrix_text(action.S_phi), rhs="[[0,1],[1,0]]")
    square = ratmat.mat_mul(action.S_phi, action.S_phi)
    rec.exact("S-phi-squared", square == ratmat.identity(2), lhs=_matrix_text(square), rhs="I")
    rec.exact("not-inert", action.inert is False, lhs=str(action.inert), rhs="False")
    rec.close("lambda-phi", action.lambda_phi, 1.0, 1e-9)
    spectrum = distortion_spectrum_check(action, tol=tol)
    rec.exact(
        "unit-circle-spectrum",
        spectrum["unit_circle"],
        lhs=spectrum["deviation"],
        rhs=0.0,
        detail="max | |eig| - 1 |",
    )


def _criterion_sum_and_reverse(rec, tol):
    bad_sum, bad_rev, total = [], [], 0
    for name, params in DEFAULT_SUITE:
        shift, auto = builtin_pair(name, dict(params))
        _tshift, rev, _bij = reverse_automorphism(auto)
        for n in (1, 2, 3):
            wv = w_values(auto, n)
            wr = w_values(rev, n)
            total += 1
            if wv.minus + wv.minus_inv > 0 or wv.plus + wv.plus_inv < 0:
                bad_sum.append((name, n))
            if wr.minus != -wv.plus:
                bad_rev.append((name, n, wr.minus, -wv.plus))
    rec.exact(
        "sum-inequalities",
        not bad_sum,
        lhs=f"{len(bad_sum)} violations",
        rhs="0",
        detail=f"{total} (builtin, n) pairs",
    )
    rec.exact(
        "reverse-identity",
        not bad_rev,
        lhs=f"{len(bad_rev)} violations",
        rhs="0",
        detail="W^-(n, reverse) = -W^+(n, phi)",
    )


def _criterion_cubic(rec, tol, supplied_matrix=None):
    poly = IntPolynomial([1, -5, -6, 1])
    traces = check_conditions(poly).traces
    rec.exact(
        "power-traces",
        traces[0] == 5 and traces[1] == 37,
        lhs=f"tr1={traces[0]}, tr2={traces[1]}",
        rhs="5, 37",
    )
    report = check_conditions(poly, tol=tol)
    rec.exact(
        "net-trace-n2", report.net_traces[1] == 32, lhs=report.net_traces[1], rhs=32
    )
    rec.exact(
        "conditions",
        report.all_ok and 5.9 < report.lambda_dominant < 6.0,
        lhs=f"lambda_d={report.lambda_dominant:.6f}, 1/min={1 / report.min_modulus:.6f}",
        rhs="dominant in (5.9, 6.0); reciprocal above it",
    )
    matrix = supplied_matrix
    if matrix is None:
        matrix = search_primitive_realization(poly)
    if matrix is None:
        rec.add(
            "realization",
            "Inconclusive",
            detail="search exhausted; supply a matrix to finish the criterion",
        )
        return
    rec.exact(
        "realization",
        ratmat.char_poly(matrix) == [1, -5, -6, 1],
        lhs=str(matrix),
        rhs="char poly t^3-5t^2-6t+1",
    )
    verdict = verify_eb_failure(matrix, tol=tol)
    ok = verdict["status"] == "Confirmed" and verdict["gap"] > 0
    rec.add(
        "entropy-bound-failure",
        "Confirmed" if ok else "Violated",
        verdict["lhs"],
        verdict["rhs"],
        tol,
        detail=f"gap={verdict['gap']:.6f}",
    )


def _criterion_functoriality(rec, tol):
    bad_sq, bad_inv, bad_comm, bad_theta = [], [], [], []
    for name, params in DEFAULT_SUITE:
        shift, auto, dim, perron, action = builtin_bundle(name, dict(params))
        squared = automorphism_power(auto, 2)
        s_sq = dimension_matrix(squared, dim=dim, perron=perron).S_phi
        if s_sq != ratmat.mat_mul(action.S_phi, action.S_phi):
            bad_sq.append(name)
        s_inv = dimension_matrix(
            auto.inverse_automorphism(), dim=dim, perron=perron
        ).S_phi
        if s_inv != ratmat.inverse(action.S_phi):
            bad_inv.append(name)
        delta = dim.delta_restricted
        if ratmat.mat_mul(action.S_phi, delta) != ratmat.mat_mul(delta, action.S_phi):
            bad_comm.append(name)
        ray = canonical_zero_ray(shift, 0)
        base = theta(Beam(level=0, rays=(ray,)), dim)
        for depth in range(1, 5):
            if theta(refine_ray(ray, depth), dim) != base:
                bad_theta.append((name, depth))
    rec.exact("S-of-square", not bad_sq, lhs=f"{len(bad_sq)} mismatches", rhs="0")
    rec.exact("S-of-inverse", not bad_inv, lhs=f"{len(bad_inv)} mismatches", rhs="0")
    rec.exact("delta-commutation", not bad_comm, lhs=f"{len(bad_comm)} mismatches", rhs="0")
    rec.exact(
        "theta-level-independence",
        not bad_theta,
        lhs=f"{len(bad_theta)} mismatches",
        rhs="0",
        detail="refinement depths 1..4",
    )


def _criterion_measure_coherence(rec, tol):
    bad_scale, bad_pair, total = [], [], 0
    for name, params in DEFAULT_SUITE:
        shift, auto, dim, perron, action = builtin_bundle(name, dict(params))
        for state in range(shift.k):
            ray = canonical_zero_ray(shift, state)
            beam = Beam(level=0, rays=(ray,))
            base = unstable_measure(beam, perron)
            image = apply_automorphism_to_ray(auto, 1, ray)
            scaled = unstable_measure(image, perron)
            total += 1
            if abs(scaled / base - action.lambda_phi) > 1e-6:
                bad_scale.append((name, state))
            for b in (beam, image):
                row = theta(b, dim)
                paired = sum(
                    float(row[i]) * perron.v_right[i] for i in range(shift.k)
                )
                if abs(paired - unstable_measure(b, perron)) > 1e-9:
                    bad_pair.append((name, state))
    rec.exact(
        "measure-scaling",
        not bad_scale,
        lhs=f"{len(bad_scale)} violations",
        rhs="0",
        detail=f"{total} canonical rays, tol 1e-6",
    )
    rec.exact(
        "theta-pairing",
        not bad_pair,
        lhs=f"{len(bad_pair)} violations",
        rhs="0",
        detail="measure = theta . v_right, tol 1e-9",
    )


def _criterion_five_symbol(rec, tol):
    _, sigma_pair = builtin_pair("sigma_x_sigma_inv")
    reference = sigma_pair.forward
    no_wall = five_symbol_no_wall_edges()
    bad = []
    certified = []
    for completion in sorted(FIVE_SYMBOL_COMPLETIONS):
        shift, code = five_symbol_code(completion)
        sub, restricted, _ = restrict_code_to_subsystem(code, no_wall)
        if sub.matrix != ((4,),) or not codes_equal(restricted, reference):
            bad.append(completion)
        try:
            infer_inverse(code, r_max=3)
            certified.append(completion)
        except (NotInvertibleWithin, SftlabError):
            pass
    rec.exact(
        "no-wall-restriction",
        not bad,
        lhs=f"{len(bad)} completions differ",
        rhs="0",
        detail="restriction equals the paired shift/inverse-shift product",
    )
    entropy = exact_entropy_of(sigma_pair)
    rec.close("certified-lower-bound", entropy, math.log(4), 1e-12)
    rec.add(
        "completion-certification",
        "Consistent",
        lhs=", ".join(certified) if certified else "none",
        detail="completions whose full rule certifies as an automorphism (recorded, not asserted)",
    )


def _criterion_unit_circle(rec, tol):
    for name in ("identity", "vertex_swap_B"):
        shift, auto, dim, perron, action = builtin_bundle(name)
        bounds = lyapunov_bounds(auto, 3)
        zero = (0, 0)
        rec.exact(
            f"{name}/alpha-zero",
            bounds.alpha_minus == zero and bounds.alpha_plus == zero,
            lhs=f"{_interval_text(bounds.alpha_minus)} {_interval_text(bounds.alpha_plus)}",
            rhs="[0,0] twice",
        )
        spectrum = distortion_spectrum_check(action, tol=1e-9)
        rec.exact(
            f"{name}/unit-circle",
            spectrum["deviation"] <= 1e-9,
            lhs=spectrum["deviation"],
            rhs=0.0,
            detail="max | |eig S_phi| - 1 |",
        )


def _random_code(rng, shift, sigma_pool):
    """A random certified-valid sliding block code with window <= 7."""
    kind = rng.randrange(4)
    if kind == 0:
        code = identity_code(shift)
    elif kind == 1:
        code = power(shift_code(shift), rng.randint(1, 3))
    elif kind == 2:
        code = power(inverse_shift_code(shift), rng.randint(1, 3))
    else:
        n = shift.n_edges
        if shift.k == 1:
            perm = list(range(n))
            rng.shuffle(perm)
            code = SlidingBlockCode(
                shift, shift, 0, 0, {(e,): perm[e] for e in range(n)}, check=False
            )
        else:
            code = identity_code(shift)
    if rng.random() < 0.5 and shift.k == 1:
        other = power(
            (shift_code if rng.random() < 0.5 else inverse_shift_code)(shift),
            rng.randint(1, 2),
        )
        if code.window + other.window - 1 <= 7:
            code = compose(code, other)
    room = 7 - code.window
    if room > 0 and rng.random() < 0.6:
        code = pad_code(
            code,
            extra_memory=rng.randint(0, min(2, room)),
            extra_anticipation=rng.randint(0, max(0, min(2, room - 2))),
        )
    return code


def _criterion_oracle_equivalence(rec, tol):
    rng = random.Random(20260823)
    pool = [
        build_edge_shift([[2]]),
        build_edge_shift([[3]]),
        build_edge_shift([[4]]),
        shift_builtin("golden_mean"),
    ]
    mismatches = 0
    cases = 0
    for _ in range(500):
        shift = pool[rng.randrange(len(pool))]
        code = _random_code(rng, shift, pool)
        j = rng.randint(-5, 5)
        cases += 1
        if coded_minus(code, j) != coded_minus_naive(code, j):
            mismatches += 1
        if coded_plus(code, j) != coded_plus_naive(code, j):
            mismatches += 1
    rec.exact(
        "coded-vs-naive",
        mismatches == 0,
        lhs=f"{mismatches} discrepancies",
        rhs="0",
        detail=f"{cases} randomized (code, j) cases, seeded",
    )


#: (criterion id, title, function) in acceptance order.
ACCEPTANCE_CRITERIA = (
    ("01-golden-entropy", "Golden mean entropy and word counts", _criterion_golden_entropy),
    ("02-shift-sharpness", "Shift coding ranges and sharp bounds", _criterion_shift_sharpness),
    ("03-tau-example", "Identity-times-inverse-shift slopes and rho", _criterion_tau_example),
    ("04-product-entropy", "Shift-times-inverse-shift census and bound", _criterion_product_entropy),
    ("05-vertex-swap", "Order-two non-inert action", _criterion_vertex_swap),
    ("06-sum-reverse", "Sum inequalities and reverse identity", _criterion_sum_and_reverse),
    ("07-cubic-witness", "Cubic spectrum conditions and failure witness", _criterion_cubic),
    ("08-functoriality", "Dimension action functoriality", _criterion_functoriality),
    ("09-measure-coherence", "Unstable measure scaling and pairing", _criterion_measure_coherence),
    ("10-five-symbol", "Five-symbol no-wall restriction", _criterion_five_symbol),
    ("11-unit-circle", "Distortion forces unit-circle spectrum", _criterion_unit_circle),
    ("12-oracle-equivalence", "Half-line coding scan vs naive oracle", _criterion_oracle_equivalence),
)


def run_criterion(cid, tol=DEFAULT_TOL):
    """Records for one acceptance criterion, names prefixed with its id."""
    table = {c: fn for c, _, fn in ACCEPTANCE_CRITERIA}
    rec = Recorder()
    table[cid](rec, tol)
    for record in rec.records:
        record.name = f"{cid}/{record.name}"
    return rec.records


# -- suites -------------------------------------------------------------------


def _suite_acceptance(options):
    tol = options.get("tol", DEFAULT_TOL)
    records = []
    for cid, _, _fn in ACCEPTANCE_CRITERIA:
        records.extend(run_criterion(cid, tol=tol))
    return records, {}


def _suite_theorem_3(options):
    tol = options.get("tol", DEFAULT_TOL)
    rec = Recorder()
    for name, params in DEFAULT_SUITE:
        shift, auto, dim, perron, action = builtin_bundle(name, dict(params))
        entropy = exact_entropy_of(auto)
        if entropy is not None:
            verdict = verify_entropy_bound(auto, entropy, action, tol=tol)
            rec.wrap(f"entropy-bound/{name}", verdict, detail=f"exact h_top={entropy:.6f}")
        else:
            diag = c_phi_diagnostic(auto, 2, action)
            rec.add(
                f"iterate-windows/{name}",
                diag["status"],
                diag["rate"],
                diag["log_lambda_phi"],
                detail=f"card={diag['card']} at n=2 (no certified entropy)",
            )
    _criterion_five_symbol(rec, tol)
    _criterion_cubic(rec, tol)
    return rec.records, {}


def _suite_theorem_4(options):
    tol = options.get("tol", DEFAULT_TOL)
    n_max = options.get("n_max", 3)
    rec = Recorder()
    for name, params in DEFAULT_SUITE:
        shift, auto, dim, perron, action = builtin_bundle(name, dict(params))
        profile = coding_range_profile(auto, n_max)
        verdict = verify_main_bounds(auto, profile, action, dim, perron, tol=tol)
        rec.add(
            f"main-bounds/{name}",
            verdict["status"],
            verdict["gap"],
            None,
            tol,
            detail=f"{len(verdict['checks'])} component checks, n_max={n_max}",
        )
    _criterion_sum_and_reverse(rec, tol)
    _criterion_unit_circle(rec, tol)
    return rec.records, {}


def _suite_spectra(options):
    tol = options.get("tol", DEFAULT_TOL)
    poly = IntPolynomial(options.get("poly", [1, -5, -6, 1]))
    n_max = options.get("N", 12)
    rec = Recorder()
    report = check_conditions(poly, n_max=n_max, tol=tol)

    def condition_status(ok, name):
        if name in report.indeterminate:
            return "Indeterminate"
        return "Confirmed" if ok else "Violated"

    rec.add(
        "condition-dominant-root",
        condition_status(report.perron_ok, "perron"),
        report.lambda_dominant,
        None,
        tol,
        detail=f"margin {report.dominance_margin:.3g}",
    )
    rec.add(
        "condition-net-traces",
        "Confirmed" if report.net_trace_ok else "Violated",
        f"n<={report.n_checked}",
        ">= 0",
        0,
        detail=f"first values {report.net_traces[:4]}",
    )
    rec.add(
        "condition-reciprocal",
        condition_status(report.reciprocal_ok, "reciprocal"),
        1.0 / report.min_modulus,
        report.lambda_dominant,
        tol,
        detail=f"min-modulus root {report.min_modulus:.6f}",
    )
    payload = {"conditions": _conditions_payload(report)}
    if options.get("search", True) and report.perron_ok and report.net_trace_ok:
        matrix = search_primitive_realization(
            poly,
            max_size=options.get("max_size", 6),
            max_entry=options.get("max_entry", 8),
            budget=options.get("search_budget", 10_000_000),
        )
        if matrix is None:
            rec.add("realization", "Inconclusive", detail="no matrix within bounds")
        else:
            rec.exact(
                "realization",
                ratmat.char_poly(matrix)[: poly.degree + 1] == list(poly.coeffs),
                lhs=str(matrix),
                rhs=f"char poly t^m * ({poly})",
            )
            payload["matrix"] = [list(r) for r in matrix]
            verdict = verify_eb_failure(matrix, tol=tol)
            rec.add(
                "entropy-bound-failure",
                verdict["status"],
                verdict["lhs"],
                verdict["rhs"],
                tol,
                detail=f"gap={verdict['gap']:.6f}",
            )
    return rec.records, payload


def _conditions_payload(report):
    return {
        "polynomial": list(report.polynomial),
        "n_checked": report.n_checked,
        "perron_ok": report.perron_ok,
        "lambda_dominant": report.lambda_dominant,
        "net_trace_ok": report.net_trace_ok,
        "net_traces": list(report.net_traces),
        "traces": list(report.traces),
        "reciprocal_ok": report.reciprocal_ok,
        "min_modulus": report.min_modulus,
        "indeterminate": list(report.indeterminate),
    }


def profile_payload(profile, bounds):
    """Coding-range profile as JSON: integers plus 'p/q' interval endpoints."""
    return {
        "n_max": profile.n_max,
        "W_minus": list(profile.w_minus),
        "W_plus": list(profile.w_plus),
        "W_minus_inv": list(profile.w_minus_inv),
        "W_plus_inv": list(profile.w_plus_inv),
        "A_minus": list(profile.a_minus),
        "A_plus": list(profile.a_plus),
        "alpha_minus": {
            "lo": format_fraction(bounds.alpha_minus[0]),
            "hi": format_fraction(bounds.alpha_minus[1]),
        },
        "alpha_plus": {
            "lo": format_fraction(bounds.alpha_plus[0]),
            "hi": format_fraction(bounds.alpha_plus[1]),
        },
        "method": bounds.method,
        "verdict": bounds.verdict,
    }


def _suite_profile(options):
    name = options.get("auto", "tau_golden")
    n_max = options.get("n_max", 4)
    params = options.get("params")
    if params is None:
        params = dict(DEFAULT_SUITE).get(name, {})
    shift, auto = builtin_pair(name, dict(params))
    profile = coding_range_profile(auto, n_max)
    bounds = lyapunov_bounds(auto, n_max, profile=profile)
    rec = Recorder()
    rec.add(
        "profile",
        "Confirmed",
        lhs=f"n_max={n_max}",
        detail=f"{name}: W^- {profile.w_minus}, W^+ {profile.w_plus}",
    )
    rec.add(
        "lyapunov-enclosure",
        "Confirmed" if not bounds.distorted_candidate() else "Consistent",
        lhs=f"alpha- {_interval_text(bounds.alpha_minus)}",
        rhs=f"alpha+ {_interval_text(bounds.alpha_plus)}",
        detail=f"method={bounds.method} verdict={bounds.verdict}",
    )
    return rec.records, {"profile": profile_payload(profile, bounds)}


_SUITES = {
    "acceptance": _suite_acceptance,
    "theorem-3": _suite_theorem_3,
    "theorem-4": _suite_theorem_4,
    "spectra": _suite_spectra,
    "profile": _suite_profile,
}


def run_suite(name, options=None):
    """Execute a named suite; returns a Report (never raises on Violated)."""
    if name not in _SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {SUITE_NAMES}")
    options = dict(options or {})
    records, payload = _SUITES[name](options)
    return Report(
        suite=name,
        records=records,
        tol=options.get("tol", DEFAULT_TOL),
        budget=resolve_budget(options.get("budget")),
        options=options,
        payload=payload,
    )


def _matrix_text(matrix):
    return "[" + ",".join(
        "[" + ",".join(format_fraction(x) for x in row) + "]" for row in matrix
    ) + "]"


def _interval_text(interval):
    lo, hi = interval
    return f"[{format_fraction(lo)},{format_fraction(hi)}]"
