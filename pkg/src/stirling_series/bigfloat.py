"""Arbitrary-precision reals, exact factorials and the constants e and pi.

:class:`BigFloat` wraps a :class:`decimal.Decimal` together with the number
of significant decimal digits it is meant to carry. Every operation runs in
a private decimal context (wide exponent range, round-half-even), so the
global decimal context is never touched and concurrent use is safe.

Basic arithmetic, ``exp``, ``ln`` and ``sqrt`` are correctly rounded by the
decimal module; ``pow`` adds guard digits proportional to the size of the
exponent before rounding back.
"""
from __future__ import annotations

import decimal
import math
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from functools import lru_cache
from typing import Union

from .errors import DomainError

DEFAULT_PRECISION = 60
MIN_PRECISION = 10

Number = Union["BigFloat", int, Fraction, Decimal]


def _context(precision: int) -> decimal.Context:
    return decimal.Context(
        prec=precision,
        rounding=decimal.ROUND_HALF_EVEN,
        Emax=decimal.MAX_EMAX,
        Emin=decimal.MIN_EMIN,
        traps=[decimal.InvalidOperation, decimal.DivisionByZero, decimal.Overflow],
    )


def _check_precision(precision: int) -> int:
    precision = int(precision)
    if precision < MIN_PRECISION:
        raise ValueError(f"precision must be at least {MIN_PRECISION} digits, got {precision}")
    return precision


def _to_decimal(x: Number, ctx: decimal.Context) -> Decimal:
    if isinstance(x, BigFloat):
        return ctx.plus(x.value)
    if isinstance(x, Decimal):
        return ctx.plus(x)
    if isinstance(x, int):
        return ctx.create_decimal(x)
    if isinstance(x, Fraction):
        return ctx.divide(Decimal(x.numerator), Decimal(x.denominator))
    raise TypeError(f"cannot convert {type(x).__name__} to BigFloat")


class BigFloat:
    """A decimal real number that knows its working precision."""

    __slots__ = ("value", "precision")

    def __init__(self, value: Number, precision: int = DEFAULT_PRECISION):
        precision = _check_precision(precision)
        self.value = _to_decimal(value, _context(precision))
        self.precision = precision

    @classmethod
    def _raw(cls, value: Decimal, precision: int) -> "BigFloat":
        obj = cls.__new__(cls)
        obj.value = value
        obj.precision = precision
        return obj

    def with_precision(self, precision: int) -> "BigFloat":
        return BigFloat(self.value, precision)

    # -- arithmetic ---------------------------------------------------------

    def _binary(self, other: Number, op: str) -> "BigFloat":
        prec = self.precision
        if isinstance(other, BigFloat):
            prec = min(prec, other.precision)
        ctx = _context(prec)
        a = self.value
        b = _to_decimal(other, ctx)
        return BigFloat._raw(getattr(ctx, op)(a, b), prec)

    def __add__(self, other):
        return self._binary(other, "add")

    def __radd__(self, other):
        return self._binary(other, "add")

    def __sub__(self, other):
        return self._binary(other, "subtract")

    def __rsub__(self, other):
        return (-self)._binary(other, "add")

    def __mul__(self, other):
        return self._binary(other, "multiply")

    __rmul__ = __mul__

    def __truediv__(self, other):
        if _is_zero(other):
            raise ZeroDivisionError("BigFloat division by zero")
        return self._binary(other, "divide")

    def __rtruediv__(self, other):
        if self.value == 0:
            raise ZeroDivisionError("BigFloat division by zero")
        return BigFloat(other, self.precision)._binary(self, "divide")

    # Decimal's unary operators round to the global context; use our own
    def __neg__(self) -> "BigFloat":
        return BigFloat._raw(_context(self.precision).minus(self.value), self.precision)

    def __abs__(self) -> "BigFloat":
        return BigFloat._raw(_context(self.precision).abs(self.value), self.precision)

    def __pow__(self, y) -> "BigFloat":
        return bf_pow(self, y)

    # -- comparison ---------------------------------------------------------

    def _cmp_value(self, other) -> Decimal:
        if isinstance(other, BigFloat):
            return other.value
        return _to_decimal(other, _context(max(self.precision, 2 * MIN_PRECISION)))

    def __eq__(self, other) -> bool:
        try:
            return self.value == self._cmp_value(other)
        except TypeError:
            return NotImplemented

    def __lt__(self, other) -> bool:
        return self.value < self._cmp_value(other)

    def __le__(self, other) -> bool:
        return self.value <= self._cmp_value(other)

    def __gt__(self, other) -> bool:
        return self.value > self._cmp_value(other)

    def __ge__(self, other) -> bool:
        return self.value >= self._cmp_value(other)

    def __hash__(self) -> int:
        return hash(self.value)

    def is_zero(self) -> bool:
        return self.value == 0

    def sign(self) -> int:
        return (self.value > 0) - (self.value < 0)

    def __float__(self) -> float:
        return float(self.value)

    # -- rendering ----------------------------------------------------------

    def to_sci(self, sig_digits: int = 5) -> str:
        """Scientific notation with ``sig_digits`` significant digits, e.g. ``-5.7954e-11``."""
        if sig_digits < 1:
            raise ValueError("sig_digits must be positive")
        if self.value == 0:
            return "0." + "0" * (sig_digits - 1) + "e+0" if sig_digits > 1 else "0e+0"
        with decimal.localcontext(_context(self.precision)):
            return format(self.value, f".{sig_digits - 1}e")

    def __str__(self) -> str:
        return str(self.value)

    def __repr__(self) -> str:
        return f"BigFloat('{self.value}', precision={self.precision})"


def _is_zero(x) -> bool:
    if isinstance(x, BigFloat):
        return x.value == 0
    return x == 0


def _precision_of(x: Number, precision: int | None) -> int:
    if precision is not None:
        return _check_precision(precision)
    if isinstance(x, BigFloat):
        return x.precision
    return DEFAULT_PRECISION


# -- constants ------------------------------------------------------------


@lru_cache(maxsize=64)
def _e_scaled(digits: int) -> int:
    """floor-ish ``e * 10**digits`` from sum 1/k!; total error < k_max + 1 units."""
    scale = 10 ** digits
    total = 0
    term = scale  # floor(scale / k!)
    k = 0
    # tail after the last term k is below 1/(k! * k); stop once that is < 1 unit
    while True:
        total += term
        k += 1
        term //= k
        if term == 0:
            break
    return total


@lru_cache(maxsize=64)
def _atan_inv_scaled(m: int, digits: int) -> int:
    """``atan(1/m) * 10**digits`` by the alternating Gregory series."""
    scale = 10 ** digits
    power = scale // m  # floor(scale / m**(2j+1))
    m2 = m * m
    total = 0
    j = 0
    while power:
        term = power // (2 * j + 1)
        total += -term if j & 1 else term
        power //= m2
        j += 1
    return total


def const_e(precision: int = DEFAULT_PRECISION) -> BigFloat:
    """Euler's number to ``precision`` significant digits."""
    precision = _check_precision(precision)
    guard = 10
    digits = precision + guard
    ctx = _context(precision)
    return BigFloat._raw(ctx.scaleb(Decimal(_e_scaled(digits)), -digits), precision)


def const_pi(precision: int = DEFAULT_PRECISION) -> BigFloat:
    """pi from Machin's formula ``16 atan(1/5) - 4 atan(1/239)``."""
    precision = _check_precision(precision)
    guard = 10
    digits = precision + guard
    scaled = 16 * _atan_inv_scaled(5, digits) - 4 * _atan_inv_scaled(239, digits)
    ctx = _context(precision)
    return BigFloat._raw(ctx.scaleb(Decimal(scaled), -digits), precision)


# -- elementary functions ---------------------------------------------------


def bf_exp(x: Number, precision: int | None = None) -> BigFloat:
    p = _precision_of(x, precision)
    ctx = _context(p)
    return BigFloat._raw(ctx.exp(_to_decimal(x, _context(p + 5))), p)


def bf_ln(x: Number, precision: int | None = None) -> BigFloat:
    p = _precision_of(x, precision)
    d = _to_decimal(x, _context(p + 5))
    if d <= 0:
        raise DomainError(f"ln requires a positive argument, got {d}")
    return BigFloat._raw(_context(p).ln(d), p)


def bf_sqrt(x: Number, precision: int | None = None) -> BigFloat:
    p = _precision_of(x, precision)
    d = _to_decimal(x, _context(p + 5))
    if d < 0:
        raise DomainError(f"sqrt requires a non-negative argument, got {d}")
    return BigFloat._raw(_context(p).sqrt(d), p)


def bf_pow(x: Number, y: Number, precision: int | None = None) -> BigFloat:
    """``x**y = exp(y * ln x)`` for ``x > 0``.

    The product ``y * ln x`` is formed with extra digits so the absolute
    error in the exponent stays below ``10**-(precision + 2)``.
    """
    p = _precision_of(x, precision)
    wide = _context(p + 5)
    base = _to_decimal(x, wide)
    if base <= 0:
        raise DomainError(f"pow requires a positive base, got {base}")
    expo = _to_decimal(y, wide)
    mag = wide.abs(wide.multiply(expo, wide.ln(base)))
    guard = 5 + (max(mag.adjusted(), 0) if mag else 0)
    ctx = _context(p + guard)
    t = ctx.multiply(_to_decimal(y, ctx), ctx.ln(_to_decimal(x, ctx)))
    return BigFloat._raw(_context(p).exp(t), p)


# -- factorials -------------------------------------------------------------


@dataclass(frozen=True)
class ExactFactorial:
    n: int
    value: int

    def __int__(self) -> int:
        return self.value

    def to_bigfloat(self, precision: int = DEFAULT_PRECISION) -> BigFloat:
        return BigFloat(self.value, precision)


def factorial(n: int) -> ExactFactorial:
    """Exact ``n!``; ``factorial(0)`` is 1."""
    if not isinstance(n, int) or isinstance(n, bool):
        raise TypeError("factorial needs an integer")
    if n < 0:
        raise DomainError(f"factorial of negative number {n}")
    return ExactFactorial(n, math.factorial(n))


def ln_factorial(n: int, precision: int = DEFAULT_PRECISION) -> BigFloat:
    """``ln(n!)`` from the exact integer, correctly rounded."""
    return bf_ln(BigFloat(factorial(n).value, precision + 5), precision)
