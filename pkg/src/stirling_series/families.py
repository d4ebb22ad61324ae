"""Expansions of consecutive-error differences for the factorial families.

Two families are supported, both written with ``x = 1/n``::

    MORTICI_AB       n! = sqrt(2 pi n) (n/e + a/n + b/n^3)^n exp(z_n)
    SQRT_CORRECTION  n! = sqrt(2 pi (n + b/n^4)) (n/e + a/n + c/n^3)^n exp(t_n)

and MORTICI_A is MORTICI_AB with ``b = 0``. The multiplicative parameters
are normalized as ``alpha = a e`` and ``beta = b e`` so that every
coefficient is rational. With ``M(x) = log1p(alpha x^2 + beta x^4)`` the
log n terms of ``z_n - z_{n+1}`` cancel by hand to::

    (x^-1 + 1/2) log1p(x) - 1 - x^-1 M(x) + (x^-1 + 1) M(x/(1+x))

and the square-root correction contributes
``-(1/2) log1p(b x^5) + (1/2) log1p(b x^5)|_{x -> x/(1+x)}`` on top.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .algebra import ParamPoly, PolyRing, Scalar, rat
from .errors import TruncationError, UnknownSymbolError
from .series import (
    LaurentSeries,
    series_log1p,
    series_shift_n,
    series_shift_x,
)

ALPHA_OPT = rat(1, 12)
BETA_OPT = rat(1, 1440)
SQRT_B_OPT = rat(239, 181440)


class FamilyId(str, enum.Enum):
    MORTICI_AB = "mortici-ab"
    MORTICI_A = "mortici-a"
    SQRT_CORRECTION = "sqrt-correction"


_PARAMETERS = {
    FamilyId.MORTICI_AB: ("alpha", "beta"),
    FamilyId.MORTICI_A: ("alpha", "beta"),
    FamilyId.SQRT_CORRECTION: ("alpha", "beta", "b"),
}

_DEFAULT_FIXED = {
    FamilyId.MORTICI_AB: {},
    FamilyId.MORTICI_A: {"beta": Fraction(0)},
    FamilyId.SQRT_CORRECTION: {"alpha": ALPHA_OPT, "beta": BETA_OPT},
}


@dataclass(frozen=True)
class FamilySpec:
    """A family together with which of its parameters are pinned."""

    id: FamilyId
    symbols: tuple[str, ...]
    fixed: Mapping[str, Fraction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "id", FamilyId(self.id))
        object.__setattr__(self, "symbols", tuple(self.symbols))
        object.__setattr__(self, "fixed", {k: Fraction(v) for k, v in self.fixed.items()})
        full = set(_PARAMETERS[self.id])
        given = set(self.symbols) | set(self.fixed)
        if given != full or set(self.symbols) & set(self.fixed):
            raise ValueError(
                f"{self.id.value}: free {self.symbols} and fixed {sorted(self.fixed)} "
                f"must partition {sorted(full)}"
            )

    @property
    def parameters(self) -> tuple[str, ...]:
        return _PARAMETERS[self.id]

    def ring(self) -> PolyRing:
        return PolyRing(self.symbols)

    def with_fixed(self, **values: Scalar) -> "FamilySpec":
        """Pin further free symbols."""
        for name in values:
            if name not in self.symbols:
                raise UnknownSymbolError(name)
        fixed = dict(self.fixed)
        fixed.update({k: Fraction(v) for k, v in values.items()})
        return FamilySpec(self.id, tuple(s for s in self.symbols if s not in values), fixed)

    def parameter_values(self, assignments: Mapping[str, Scalar] = ()) -> dict[str, Fraction]:
        """All parameter values once ``assignments`` cover the free symbols."""
        values = dict(self.fixed)
        values.update({k: Fraction(v) for k, v in dict(assignments).items()})
        missing = [s for s in self.parameters if s not in values]
        if missing:
            raise UnknownSymbolError(", ".join(missing))
        return values


def make_family(family: FamilyId | str, fixed: Mapping[str, Scalar] | None = None) -> FamilySpec:
    """The family with its default pinned parameters, overridden by ``fixed``."""
    fid = FamilyId(family)
    pinned = dict(_DEFAULT_FIXED[fid])
    for name, value in (fixed or {}).items():
        if name not in _PARAMETERS[fid]:
            raise UnknownSymbolError(name)
        pinned[name] = Fraction(value)
    free = tuple(s for s in _PARAMETERS[fid] if s not in pinned)
    return FamilySpec(fid, free, pinned)


def mortici_ab(**fixed: Scalar) -> FamilySpec:
    return make_family(FamilyId.MORTICI_AB, fixed)


def mortici_a(**fixed: Scalar) -> FamilySpec:
    return make_family(FamilyId.MORTICI_A, fixed)


def sqrt_correction(**fixed: Scalar) -> FamilySpec:
    return make_family(FamilyId.SQRT_CORRECTION, fixed)


def _param(spec: FamilySpec, ring: PolyRing, name: str) -> ParamPoly:
    if name in spec.fixed:
        return ring.const(spec.fixed[name])
    return ring.gen(name)


def _x_power(ring: PolyRing, k: int, trunc: int) -> LaurentSeries:
    return LaurentSeries.monomial(ring, 1, k, trunc)


def _shifted_difference(f: LaurentSeries) -> LaurentSeries:
    """``g(n+1) - g(n)`` style helper: returns ``f(x/(1+x)) - f(x)``."""
    return series_shift_n(f) - f


def difference_pieces(spec: FamilySpec, working_order: int) -> dict[str, LaurentSeries]:
    """The named summands of the pre-cancelled difference, each valid through ``working_order``."""
    ring = spec.ring()
    W = working_order
    alpha = _param(spec, ring, "alpha")
    beta = _param(spec, ring, "beta")

    log_x = series_log1p(_x_power(ring, 1, W + 1))
    pieces = {
        # (n + 1/2) ln(1 + 1/n)
        "log_ratio": series_shift_x(log_x, -1) + log_x * Fraction(1, 2),
        "constant": LaurentSeries.monomial(ring, -1, 0, W),
    }

    m = series_log1p(LaurentSeries.from_terms(ring, {2: alpha, 4: beta}, W + 1))
    m_shift = series_shift_n(m)
    pieces["correction"] = (
        -series_shift_x(m, -1) + series_shift_x(m_shift, -1) + m_shift
    )

    if spec.id is FamilyId.SQRT_CORRECTION:
        b = _param(spec, ring, "b")
        root = series_log1p(LaurentSeries.from_terms(ring, {5: b}, W))
        pieces["sqrt_correction"] = _shifted_difference(root) * Fraction(1, 2)
    return pieces


def _assemble(spec: FamilySpec, order: int, omit: Iterable[str] = ()) -> LaurentSeries:
    working = order + 2
    pieces = difference_pieces(spec, working)
    skip = set(omit)
    unknown = skip - set(pieces)
    if unknown:
        raise KeyError(f"unknown pieces {sorted(unknown)}")
    total = LaurentSeries.zero(spec.ring(), working)
    for name, piece in pieces.items():
        if name not in skip:
            total = total + piece
    return total.truncate(order)


def build_difference_series(spec: FamilySpec, order: int = 10) -> LaurentSeries:
    """Expansion of ``z_n - z_{n+1}`` (or ``t_n - t_{n+1}``) valid through ``x**order``."""
    if order < 2:
        raise ValueError(f"order must be at least 2, got {order}")
    series = _assemble(spec, order)
    if series.is_zero():
        raise TruncationError(
            f"{spec.id.value}: difference vanishes through x^{order}; increase the order"
        )
    return series.normalize()


def validate_cancellation(spec: FamilySpec, order: int = 10, omit: Iterable[str] = ()) -> bool:
    """True iff the assembled difference has no x^0, x^1 or polar residue.

    ``omit`` drops named pieces from the assembly, which is only useful for
    demonstrating that a broken pipeline is detected.
    """
    series = _assemble(spec, max(order, 2), omit).normalize()
    v = series.valuation()
    return v is None or v >= 2
