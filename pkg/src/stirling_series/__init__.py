"""Exact series expansions and high-precision checks for Stirling-type
factorial approximations."""

from .algebra import ParamPoly, PolyRing, format_rational, poly_add, poly_mul, poly_substitute, rat
from .bigfloat import (
    BigFloat,
    ExactFactorial,
    bf_exp,
    bf_ln,
    bf_pow,
    bf_sqrt,
    const_e,
    const_pi,
    factorial,
)
from .catalog import (
    CATALOG,
    ErrorRecord,
    FormulaDescriptor,
    FormulaId,
    check_bounds,
    evaluate,
    log_error,
    relative_error,
)
from .errors import (
    ContextMismatchError,
    DomainError,
    OptimizationError,
    PrecisionError,
    RateHypothesisError,
    StirlingSeriesError,
    TruncationError,
)
from .families import (
    FamilyId,
    FamilySpec,
    build_difference_series,
    make_family,
    mortici_a,
    mortici_ab,
    sqrt_correction,
    validate_cancellation,
)
from .rates import (
    OptimizationResult,
    RateReport,
    estimate_rate_empirical,
    infer_rate,
    optimize_family,
)
from .series import (
    LaurentSeries,
    leading_term,
    series_add,
    series_log1p,
    series_mul,
    series_shift_n,
    series_shift_x,
)

__version__ = "0.1.0"
