"""Numeric evaluation of the factorial approximations and their errors.

Every formula is evaluated through its logarithm with guard digits, then
exponentiated and rounded to the requested precision. ``n!`` is always the
exact integer.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping

from .algebra import Scalar
from .bigfloat import (
    DEFAULT_PRECISION,
    BigFloat,
    bf_exp,
    bf_ln,
    bf_sqrt,
    const_e,
    const_pi,
    factorial,
    ln_factorial,
)
from .errors import PrecisionError
from .families import ALPHA_OPT, BETA_OPT, SQRT_B_OPT, FamilySpec, mortici_ab, sqrt_correction


class FormulaId(str, enum.Enum):
    STIRLING = "stirling"
    BURNSIDE = "burnside"
    GOSPER = "gosper"
    MORTICI_LOWER = "mortici-lower"
    MORTICI_UPPER = "mortici-upper"
    MORTICI_EQ1 = "mortici-eq1"
    MORTICI_EQ2_OPT = "mortici-eq2-opt"
    RAMANUJAN = "ramanujan"
    EQ5 = "eq5"


@dataclass(frozen=True)
class FormulaDescriptor:
    id: FormulaId
    display_name: str
    expression: str
    parameters: Mapping[str, str] = field(default_factory=dict)
    # k such that ln(n!) - ln(approx) ~ C n^-k
    error_order: int = 1
    # the family slice this formula is, when it is one
    family: FamilySpec | None = None


CATALOG: dict[FormulaId, FormulaDescriptor] = {
    d.id: d
    for d in [
        FormulaDescriptor(
            FormulaId.STIRLING, "Stirling", "sqrt(2 pi n) (n/e)^n",
            error_order=1, family=mortici_ab(alpha=0, beta=0),
        ),
        FormulaDescriptor(
            FormulaId.BURNSIDE, "Burnside", "sqrt(2 pi) ((n + 1/2)/e)^(n + 1/2)",
            error_order=1,
        ),
        FormulaDescriptor(
            FormulaId.GOSPER, "Gosper", "sqrt(2 pi (n + 1/6)) (n/e)^n",
            error_order=2,
        ),
        FormulaDescriptor(
            FormulaId.MORTICI_LOWER, "Mortici lower bound",
            "sqrt(2 pi e) e^-omega ((n + omega)/e)^(n + 1/2)",
            parameters={"omega": "(3 - sqrt(3))/6"}, error_order=2,
        ),
        FormulaDescriptor(
            FormulaId.MORTICI_UPPER, "Mortici upper bound",
            "sqrt(2 pi e) e^-zeta ((n + zeta)/e)^(n + 1/2)",
            parameters={"zeta": "(3 + sqrt(3))/6"}, error_order=2,
        ),
        FormulaDescriptor(
            FormulaId.MORTICI_EQ1, "Mortici (a = 1/(12e))", "sqrt(2 pi n) (n/e + a/n)^n",
            parameters={"a": "1/(12e)"}, error_order=3,
            family=mortici_ab(alpha=ALPHA_OPT, beta=0),
        ),
        FormulaDescriptor(
            FormulaId.MORTICI_EQ2_OPT, "Optimal two-parameter (w_n)",
            "sqrt(2 pi n) (n/e + a/n + b/n^3)^n",
            parameters={"a": "1/(12e)", "b": "1/(1440e)"}, error_order=5,
            family=mortici_ab(alpha=ALPHA_OPT, beta=BETA_OPT),
        ),
        FormulaDescriptor(
            FormulaId.RAMANUJAN, "Ramanujan",
            "sqrt(pi) (n/e)^n (8n^3 + 4n^2 + n + 1/30)^(1/6)",
            error_order=4,
        ),
        FormulaDescriptor(
            FormulaId.EQ5, "Square-root corrected",
            "sqrt(2 pi (n + c/n^4)) (n/e + a/n + b/n^3)^n",
            parameters={"a": "1/(12e)", "b": "1/(1440e)", "c": "239/181440"}, error_order=7,
            family=sqrt_correction(b=SQRT_B_OPT),
        ),
    ]
}

# table columns: mu_n, rho_n, tau_n
TABLE_FORMULAS = (FormulaId.MORTICI_EQ1, FormulaId.RAMANUJAN, FormulaId.EQ5)


def get_formula(formula: FormulaId | str) -> FormulaDescriptor:
    try:
        return CATALOG[FormulaId(formula)]
    except ValueError:
        raise KeyError(f"unknown formula {formula!r}; known: {[f.value for f in FormulaId]}") from None


def _guard_digits(n: int) -> int:
    return 10 + len(str(n))


def _check_args(n: int, precision: int) -> None:
    if n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")
    if precision < 10:
        raise ValueError(f"precision must be at least 10, got {precision}")


def family_log_value(
    n: int, alpha: Scalar, beta: Scalar, root_shift: Scalar = 0, precision: int = DEFAULT_PRECISION
) -> BigFloat:
    """``ln[sqrt(2 pi (n + c/n^4)) (n/e + alpha/(e n) + beta/(e n^3))^n]``.

    ``alpha`` and ``beta`` are the e-normalized parameters (``a = alpha/e``).
    """
    e = const_e(precision)
    pi = const_pi(precision)
    n_ = BigFloat(n, precision)
    inner = (n_ + BigFloat(Fraction(alpha) / n, precision) + BigFloat(Fraction(beta) / n ** 3, precision)) / e
    radicand = n_ + BigFloat(Fraction(root_shift) / n ** 4, precision)
    return (bf_ln(2 * pi * radicand) / 2) + n_ * bf_ln(inner)


def _log_mortici_bound(n: int, shift: BigFloat, p: int) -> BigFloat:
    e = const_e(p)
    pi = const_pi(p)
    half = BigFloat(Fraction(1, 2), p)
    return bf_ln(2 * pi * e) / 2 - shift + (n + half) * bf_ln((n + shift) / e)


def _omega(p: int) -> BigFloat:
    return (3 - bf_sqrt(BigFloat(3, p))) / 6


def _zeta(p: int) -> BigFloat:
    return (3 + bf_sqrt(BigFloat(3, p))) / 6


def _log_stirling(n: int, p: int) -> BigFloat:
    return family_log_value(n, 0, 0, 0, p)


def _log_burnside(n: int, p: int) -> BigFloat:
    m = BigFloat(n, p) + BigFloat(Fraction(1, 2), p)
    return bf_ln(2 * const_pi(p)) / 2 + m * bf_ln(m / const_e(p))


def _log_gosper(n: int, p: int) -> BigFloat:
    n_ = BigFloat(n, p)
    radicand = 2 * const_pi(p) * (n_ + BigFloat(Fraction(1, 6), p))
    return bf_ln(radicand) / 2 + n_ * bf_ln(n_ / const_e(p))


def _log_ramanujan(n: int, p: int) -> BigFloat:
    n_ = BigFloat(n, p)
    poly = BigFloat(8 * n ** 3 + 4 * n ** 2 + n + Fraction(1, 30), p)
    return bf_ln(const_pi(p)) / 2 + n_ * bf_ln(n_ / const_e(p)) + bf_ln(poly) / 6


_LOG_EVALUATORS: dict[FormulaId, Callable[[int, int], BigFloat]] = {
    FormulaId.STIRLING: _log_stirling,
    FormulaId.BURNSIDE: _log_burnside,
    FormulaId.GOSPER: _log_gosper,
    FormulaId.MORTICI_LOWER: lambda n, p: _log_mortici_bound(n, _omega(p), p),
    FormulaId.MORTICI_UPPER: lambda n, p: _log_mortici_bound(n, _zeta(p), p),
    FormulaId.MORTICI_EQ1: lambda n, p: family_log_value(n, ALPHA_OPT, 0, 0, p),
    FormulaId.MORTICI_EQ2_OPT: lambda n, p: family_log_value(n, ALPHA_OPT, BETA_OPT, 0, p),
    FormulaId.RAMANUJAN: _log_ramanujan,
    FormulaId.EQ5: lambda n, p: family_log_value(n, ALPHA_OPT, BETA_OPT, SQRT_B_OPT, p),
}


def log_value(formula: FormulaId | str, n: int, precision: int = DEFAULT_PRECISION) -> BigFloat:
    """Natural log of the approximation at ``n``."""
    desc = get_formula(formula)
    _check_args(n, precision)
    work = precision + _guard_digits(n)
    return _LOG_EVALUATORS[desc.id](n, work).with_precision(precision)


def evaluate(formula: FormulaId | str, n: int, precision: int = DEFAULT_PRECISION) -> BigFloat:
    """Value of the approximation to ``n!``."""
    desc = get_formula(formula)
    _check_args(n, precision)
    work = precision + _guard_digits(n)
    return bf_exp(_LOG_EVALUATORS[desc.id](n, work)).with_precision(precision)


def log_error(formula: FormulaId | str, n: int, precision: int = DEFAULT_PRECISION) -> BigFloat:
    """``ln(n!) - ln(approx)``, the sequence ``z_n`` with ``n! = approx * exp(z_n)``.

    The subtraction is carried out with guard digits large enough to absorb
    the size of ``ln(n!)``, so the result keeps about ``precision`` digits
    relative to ``ln(n!)``.
    """
    desc = get_formula(formula)
    _check_args(n, precision)
    work = precision + _guard_digits(n)
    return (ln_factorial(n, work) - _LOG_EVALUATORS[desc.id](n, work)).with_precision(precision)


@dataclass(frozen=True)
class ErrorRecord:
    n: int
    formula: FormulaId
    relative_error: BigFloat


def arithmetic_error_bound(precision: int) -> BigFloat:
    """Absolute error budget of ``n!/approx - 1`` computed at ``precision`` digits."""
    # evaluate() is within 10^-(p-2) relative; the ratio and the rounding of
    # n! add a few more units
    return BigFloat(Fraction(4, 10 ** (precision - 2)), precision)


def relative_error(formula: FormulaId | str, n: int, precision: int = DEFAULT_PRECISION) -> ErrorRecord:
    """``n!/approx - 1`` at the working precision.

    Raises :class:`PrecisionError` if the result is not larger than its own
    rounding error.
    """
    desc = get_formula(formula)
    approx = evaluate(desc.id, n, precision)
    exact = BigFloat(factorial(n).value, precision)
    err = exact / approx - 1
    bound = arithmetic_error_bound(precision)
    if abs(err) <= bound:
        raise PrecisionError(
            f"{desc.id.value} at n={n}: relative error is below the arithmetic error "
            f"{bound.to_sci(2)} at {precision} digits; raise the precision"
        )
    return ErrorRecord(n, desc.id, err)


@dataclass(frozen=True)
class BoundCheck:
    n: int
    lower_margin: BigFloat  # n!/lower - 1
    upper_margin: BigFloat  # 1 - n!/upper
    error_bound: BigFloat

    @property
    def holds(self) -> bool:
        return self.lower_margin > 0 and self.upper_margin > 0


def bound_margins(n: int, precision: int = DEFAULT_PRECISION) -> BoundCheck:
    """Relative margins of the omega/zeta two-sided inequality at ``n``.

    Raises :class:`PrecisionError` when a margin is not larger than the
    accumulated rounding error of the comparison.
    """
    _check_args(n, precision)
    lower = evaluate(FormulaId.MORTICI_LOWER, n, precision)
    upper = evaluate(FormulaId.MORTICI_UPPER, n, precision)
    exact = BigFloat(factorial(n).value, precision)
    bound = arithmetic_error_bound(precision)
    lower_margin = exact / lower - 1
    upper_margin = 1 - exact / upper
    for name, margin in (("lower", lower_margin), ("upper", upper_margin)):
        if abs(margin) <= bound:
            raise PrecisionError(
                f"n={n}: {name} margin {margin.to_sci(3)} is within the arithmetic "
                f"error {bound.to_sci(2)}; raise the precision"
            )
    return BoundCheck(n, lower_margin, upper_margin, bound)


def check_bounds(n: int, precision: int = DEFAULT_PRECISION) -> bool:
    """True iff lower(n) < n! < upper(n), with margins certified above rounding error."""
    return bound_margins(n, precision).holds
