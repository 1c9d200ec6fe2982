"""Tools for automorphisms of edge shifts of finite type.

Build edge shifts from nonnegative integer matrices, define sliding block
codes and certified automorphisms on them, measure how far coding windows
propagate under iteration, push ray/beam classes through the induced action
on the eventual-range group, and run the spectral checks and verification
suites from the command line via ``sftlab``.
"""

from .shifts import (
    DEFAULT_BUDGET,
    DEFAULT_TOL,
    EdgeShift,
    PerronData,
    DimensionData,
    build_edge_shift,
    count_words,
    dimension_data,
    kronecker_product,
    perron_data,
    transpose_shift,
)
from .codes import (
    Automorphism,
    SlidingBlockCode,
    automorphism_power,
    codes_equal,
    compose,
    compose_automorphisms,
    identity_code,
    infer_inverse,
    inverse_shift_code,
    pad_code,
    power,
    product_code,
    resolve_budget,
    shift_code,
    verify_automorphism,
)
from .coding_range import (
    CodingRangeProfile,
    LyapunovBounds,
    coding_range_profile,
    lyapunov_bounds,
    reverse_automorphism,
    w_values,
)
from .dimension import (
    Beam,
    DimensionAction,
    Ray,
    canonical_zero_ray,
    dimension_matrix,
    distortion_spectrum_check,
    theta,
    unstable_measure,
    verify_entropy_bound,
    verify_main_bounds,
)
from .entropy import (
    ColumnCensus,
    c_phi_count,
    column_census,
    exact_entropy_of,
    restrict_to_subsystem,
)
from .spectra import (
    IntPolynomial,
    SpectralConditionsReport,
    check_conditions,
    net_trace,
    power_traces,
    search_primitive_realization,
    verify_eb_failure,
)
from .builtins import DEFAULT_SUITE, make_builtin
from .systems import SystemFile, load_system, load_system_file, save_system
from .reports import (
    ACCEPTANCE_CRITERIA,
    CheckRecord,
    Report,
    SUITE_NAMES,
    run_criterion,
    run_suite,
)
from .errors import (
    InconsistentSystem,
    InternalInvariantViolation,
    NonMonic,
    NotInverse,
    NotInvertibleWithin,
    NotPrimitive,
    ParseError,
    PreconditionFailed,
    SftlabError,
    UnknownBuiltin,
    WindowBudgetExceeded,
    ZeroConstantTerm,
)

__version__ = "0.1.0"

__all__ = [
    "ACCEPTANCE_CRITERIA",
    "Automorphism",
    "Beam",
    "CheckRecord",
    "CodingRangeProfile",
    "ColumnCensus",
    "DEFAULT_BUDGET",
    "DEFAULT_SUITE",
    "DEFAULT_TOL",
    "DimensionAction",
    "DimensionData",
    "EdgeShift",
    "InconsistentSystem",
    "IntPolynomial",
    "InternalInvariantViolation",
    "LyapunovBounds",
    "NonMonic",
    "NotInverse",
    "NotInvertibleWithin",
    "NotPrimitive",
    "ParseError",
    "PerronData",
    "PreconditionFailed",
    "Ray",
    "Report",
    "SUITE_NAMES",
    "SftlabError",
    "SlidingBlockCode",
    "SpectralConditionsReport",
    "SystemFile",
    "UnknownBuiltin",
    "WindowBudgetExceeded",
    "ZeroConstantTerm",
    "automorphism_power",
    "build_edge_shift",
    "c_phi_count",
    "canonical_zero_ray",
    "check_conditions",
    "codes_equal",
    "coding_range_profile",
    "column_census",
    "compose",
    "compose_automorphisms",
    "count_words",
    "dimension_data",
    "dimension_matrix",
    "distortion_spectrum_check",
    "exact_entropy_of",
    "identity_code",
    "infer_inverse",
    "inverse_shift_code",
    "kronecker_product",
    "load_system",
    "load_system_file",
    "lyapunov_bounds",
    "make_builtin",
    "net_trace",
    "pad_code",
    "perron_data",
    "power",
    "power_traces",
    "product_code",
    "resolve_budget",
    "restrict_to_subsystem",
    "reverse_automorphism",
    "run_criterion",
    "run_suite",
    "save_system",
    "search_primitive_realization",
    "shift_code",
    "theta",
    "transpose_shift",
    "unstable_measure",
    "verify_automorphism",
    "verify_eb_failure",
    "verify_entropy_bound",
    "verify_main_bounds",
    "w_values",
]
