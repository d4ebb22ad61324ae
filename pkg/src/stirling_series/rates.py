"""Convergence rates from difference expansions, and parameter elimination.

If ``n**k (x_n - x_{n+1}) -> l`` with ``k > 1`` and ``x_n -> 0``, then
``n**(k-1) x_n -> l/(k-1)``. :func:`infer_rate` applies that rule to the
leading term of a difference series; :func:`optimize_family` kills leading
coefficients one parameter at a time; :func:`estimate_rate_empirical`
checks the resulting predictions on numeric error sequences.
"""
from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from typing import Any, Sequence

from .algebra import ParamPoly, format_rational
from .bigfloat import BigFloat, bf_ln, bf_pow
from .errors import OptimizationError, RateHypothesisError
from .families import FamilySpec, build_difference_series
from .series import LaurentSeries, leading_term


def _render_value(p: ParamPoly) -> str:
    return format_rational(p.constant_value()) if p.is_constant() else str(p)


@dataclass(frozen=True)
class RateReport:
    difference_exponent: int
    difference_limit: ParamPoly
    sequence_exponent: int
    sequence_limit: ParamPoly

    def __post_init__(self) -> None:
        if self.sequence_exponent != self.difference_exponent - 1 or self.sequence_exponent < 1:
            raise ValueError("sequence_exponent must equal difference_exponent - 1 >= 1")
        if self.sequence_limit * self.sequence_exponent != self.difference_limit:
            raise ValueError("sequence_limit must equal difference_limit / (k - 1)")

    def to_dict(self) -> dict[str, Any]:
        return {
            "difference_exponent": self.difference_exponent,
            "difference_limit": _render_value(self.difference_limit),
            "sequence_exponent": self.sequence_exponent,
            "sequence_limit": _render_value(self.sequence_limit),
        }


@dataclass(frozen=True)
class OptimizationResult:
    family: FamilySpec
    assignments: tuple[tuple[str, Fraction], ...]
    final_series: LaurentSeries
    rate: RateReport

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "family": self.family.id.value,
            "assignments": [
                {"symbol": name, "value": format_rational(value)}
                for name, value in self.assignments
            ],
        }
        out.update(self.rate.to_dict())
        out["final_series"] = str(self.final_series)
        return out


def infer_rate(diff_series: LaurentSeries) -> RateReport:
    """Rate of ``x_n`` implied by the expansion of ``x_n - x_{n+1}``."""
    k, coeff = leading_term(diff_series)
    if k <= 1:
        raise RateHypothesisError(
            f"leading exponent {k} of the difference series must exceed 1"
        )
    return RateReport(k, coeff, k - 1, coeff / (k - 1))


def _solve_linear(coeff: ParamPoly, name: str) -> Fraction:
    if coeff.degree_in(name) != 1:
        raise OptimizationError(
            f"{name} enters the leading coefficient {coeff} with degree "
            f"{coeff.degree_in(name)}; only linear elimination is supported"
        )
    slope = coeff.coefficient_in(name, 1)
    offset = coeff.coefficient_in(name, 0)
    if not slope.is_constant() or not offset.is_constant():
        raise OptimizationError(
            f"cannot solve {coeff} = 0 for {name} with a rational value: "
            "other free parameters are involved"
        )
    return -offset.constant_value() / slope.constant_value()


def optimize_family(spec: FamilySpec, order: int = 10) -> OptimizationResult:
    """Choose the free parameters so the difference series starts as late as possible.

    Symbols are eliminated in the order of ``spec.symbols``: at each step the
    first free symbol present in the leading coefficient is solved for.
    """
    series = build_difference_series(spec, order)
    free = list(spec.symbols)
    assignments: list[tuple[str, Fraction]] = []
    while free:
        _, coeff = leading_term(series)
        present = [s for s in free if coeff.degree_in(s) > 0]
        if not present:
            raise OptimizationError(
                f"leading coefficient {coeff} does not involve any of {free}; "
                "family cannot be improved further at this order"
            )
        name = present[0]
        value = _solve_linear(coeff, name)
        series = series.substitute(name, value).normalize()
        assignments.append((name, value))
        free.remove(name)
    return OptimizationResult(spec, tuple(assignments), series, infer_rate(series))


@dataclass(frozen=True)
class EmpiricalRate:
    order: BigFloat
    limit: BigFloat

    def __iter__(self):
        return iter((self.order, self.limit))


def estimate_rate_empirical(
    errors: Sequence[tuple[int, Any]], precision: int | None = None
) -> EmpiricalRate:
    """Least-squares order of decay of ``|value|`` against ``n`` on log-log axes.

    The limit is ``n**round(order) * value`` at the largest ``n``.
    """
    if len(errors) < 3:
        raise ValueError("need at least three points to estimate a rate")
    ns = [int(n) for n, _ in errors]
    if any(b <= a for a, b in zip(ns, ns[1:])):
        raise ValueError("n values must be strictly increasing")
    if precision is None:
        precision = min(
            (v.precision for _, v in errors if isinstance(v, BigFloat)), default=60
        )
    values = [BigFloat(v if isinstance(v, (BigFloat, int, Fraction, Decimal)) else Fraction(v), precision)
              for _, v in errors]
    if any(v.is_zero() for v in values):
        raise ValueError("error values must be nonzero")
    xs = [bf_ln(BigFloat(n, precision)) for n in ns]
    ys = [bf_ln(abs(v)) for v in values]
    m = len(xs)
    x_mean = sum(xs[1:], xs[0]) / m
    y_mean = sum(ys[1:], ys[0]) / m
    sxy = sum(((x - x_mean) * (y - y_mean) for x, y in zip(xs, ys)), BigFloat(0, precision))
    sxx = sum(((x - x_mean) * (x - x_mean) for x in xs), BigFloat(0, precision))
    order = -(sxy / sxx)
    k = int(round(float(order)))
    limit = bf_pow(BigFloat(ns[-1], precision), k) * values[-1]
    return EmpiricalRate(order, limit)
