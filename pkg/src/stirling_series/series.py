"""Truncated Laurent series in ``x = 1/n`` with polynomial coefficients.

A :class:`LaurentSeries` stores the coefficients of ``x**min_exp`` through
``x**trunc_order``; everything from ``x**(trunc_order + 1)`` on is unknown.
Each operation derives the truncation order of its result from the orders
and valuations of its inputs, so no global working order is assumed.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Callable, Mapping, Sequence, Union

from .algebra import ParamPoly, PolyRing, Scalar, format_rational
from .errors import ContextMismatchError, DomainError, TruncationError

Coeff = Union[ParamPoly, Scalar]


class LaurentSeries:
    """Immutable truncated Laurent series ``sum c_k x**k + O(x**(trunc_order+1))``."""

    __slots__ = ("ring", "min_exp", "coeffs", "trunc_order")

    def __init__(self, ring: PolyRing, min_exp: int, coeffs: Sequence[Coeff], trunc_order: int):
        if trunc_order < min_exp:
            raise ValueError(f"trunc_order {trunc_order} < min_exp {min_exp}")
        if len(coeffs) != trunc_order - min_exp + 1:
            raise ValueError(
                f"expected {trunc_order - min_exp + 1} coefficients, got {len(coeffs)}"
            )
        self.ring = ring
        self.min_exp = int(min_exp)
        self.trunc_order = int(trunc_order)
        self.coeffs = tuple(ring(c) for c in coeffs)

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_terms(cls, ring: PolyRing, terms: Mapping[int, Coeff], trunc_order: int) -> "LaurentSeries":
        """Build from ``{exponent: coefficient}``; terms past ``trunc_order`` are dropped."""
        kept = {k: c for k, c in terms.items() if k <= trunc_order}
        if not kept:
            return cls.zero(ring, trunc_order)
        lo = min(kept)
        coeffs = [kept.get(k, 0) for k in range(lo, trunc_order + 1)]
        return cls(ring, lo, coeffs, trunc_order)

    @classmethod
    def zero(cls, ring: PolyRing, trunc_order: int) -> "LaurentSeries":
        return cls(ring, trunc_order, [0], trunc_order)

    @classmethod
    def monomial(cls, ring: PolyRing, coeff: Coeff, exp: int, trunc_order: int) -> "LaurentSeries":
        return cls.from_terms(ring, {exp: coeff}, trunc_order)

    @classmethod
    def geometric_shift(cls, ring: PolyRing, trunc_order: int) -> "LaurentSeries":
        """``x/(1+x) = x - x**2 + x**3 - ...``, i.e. ``1/(n+1)`` in powers of ``1/n``."""
        return cls.from_terms(
            ring, {k: (-1) ** (k + 1) for k in range(1, trunc_order + 1)}, trunc_order
        )

    # -- inspection ---------------------------------------------------------

    def coeff(self, k: int) -> ParamPoly:
        if k > self.trunc_order:
            raise TruncationError(f"x^{k} lies beyond truncation order {self.trunc_order}")
        if k < self.min_exp:
            return self.ring.zero()
        return self.coeffs[k - self.min_exp]

    def __getitem__(self, k: int) -> ParamPoly:
        return self.coeff(k)

    def items(self):
        for i, c in enumerate(self.coeffs):
            yield self.min_exp + i, c

    def valuation(self) -> int | None:
        """Smallest exponent with a nonzero coefficient, or None if none is known."""
        for k, c in self.items():
            if not c.is_zero():
                return k
        return None

    def is_zero(self) -> bool:
        return self.valuation() is None

    def normalize(self) -> "LaurentSeries":
        """Trim leading zero coefficients without touching ``trunc_order``."""
        v = self.valuation()
        if v is None:
            return LaurentSeries.zero(self.ring, self.trunc_order)
        if v == self.min_exp:
            return self
        return LaurentSeries(self.ring, v, self.coeffs[v - self.min_exp:], self.trunc_order)

    def _effective_valuation(self) -> int:
        v = self.valuation()
        return self.trunc_order + 1 if v is None else v

    def truncate(self, order: int) -> "LaurentSeries":
        """Forget all terms above ``x**order`` (order may not exceed the current one)."""
        if order > self.trunc_order:
            raise TruncationError(
                f"cannot raise truncation order from {self.trunc_order} to {order}"
            )
        return LaurentSeries.from_terms(self.ring, dict(self.items()), order)

    def map_coeffs(self, fn: Callable[[ParamPoly], ParamPoly]) -> "LaurentSeries":
        return LaurentSeries(self.ring, self.min_exp, [fn(c) for c in self.coeffs], self.trunc_order)

    def substitute(self, name: str, value: Scalar) -> "LaurentSeries":
        return self.map_coeffs(lambda c: c.substitute(name, value))

    def evaluate(self, x: Fraction, values: Mapping[str, Scalar] | None = None) -> Fraction:
        """Exact value of the stored partial sum at ``x`` (the O-term is ignored)."""
        values = values or {}
        x = Fraction(x)
        return sum((c.evaluate(values) * x ** k for k, c in self.items()), Fraction(0))

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "LaurentSeries":
        if isinstance(other, LaurentSeries):
            if other.ring != self.ring:
                raise ContextMismatchError(
                    f"rings differ: {self.ring.symbols} vs {other.ring.symbols}"
                )
            return other
        if isinstance(other, (ParamPoly, int, Fraction)):
            return LaurentSeries.monomial(self.ring, other, 0, self.trunc_order)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return series_add(self, other)

    __radd__ = __add__

    def __neg__(self) -> "LaurentSeries":
        return self.map_coeffs(lambda c: -c)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return series_add(self, -other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return series_add(other, -self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) or (
            isinstance(other, ParamPoly) and other.ring == self.ring
        ):
            return self.map_coeffs(lambda c: c * other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return series_mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.map_coeffs(lambda c: c / other)
        return NotImplemented

    def __pow__(self, k: int) -> "LaurentSeries":
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers are supported")
        if k == 0:
            # relative precision of self carries over to the constant 1
            rel = self.trunc_order - self._effective_valuation()
            return LaurentSeries.monomial(self.ring, 1, 0, rel)
        result = self
        for _ in range(k - 1):
            result = series_mul(result, self)
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        a, b = self.normalize(), other.normalize()
        return (
            a.ring == b.ring
            and a.trunc_order == b.trunc_order
            and a.min_exp == b.min_exp
            and a.coeffs == b.coeffs
        )

    def __hash__(self) -> int:
        n = self.normalize()
        return hash((n.ring, n.min_exp, n.trunc_order, n.coeffs))

    # -- rendering ----------------------------------------------------------

    def __str__(self) -> str:
        pieces: list[str] = []
        for k, c in self.items():
            if c.is_zero():
                continue
            pieces.append(_render_term(c, k, first=not pieces))
        pieces.append(("" if not pieces else "+ ") + _power("O(", self.trunc_order + 1) + ")")
        return " ".join(pieces)

    def __repr__(self) -> str:
        return f"LaurentSeries({str(self)!r})"


def _power(prefix: str, k: int) -> str:
    if k == 0:
        return prefix + "1"
    if k == 1:
        return prefix + "x"
    return f"{prefix}x^{k}"


def _render_term(c: ParamPoly, k: int, first: bool) -> str:
    if c.num_terms() > 1:
        body = f"({c})" if k == 0 else f"({c})*{_power('', k)}"
        return body if first else f"+ {body}"
    (exps, q), = c.sorted_terms()
    negative = q < 0
    mag = c.ring.const(abs(q)) if all(e == 0 for e in exps) else c * (-1 if negative else 1)
    mag_str = str(mag)
    if k == 0:
        body = mag_str
    elif mag_str == "1":
        body = _power("", k)
    else:
        body = f"{mag_str}*{_power('', k)}"
    if first:
        return f"-{body}" if negative else body
    return f"- {body}" if negative else f"+ {body}"


def _check_same_ring(f: LaurentSeries, g: LaurentSeries) -> None:
    if f.ring != g.ring:
        raise ContextMismatchError(f"rings differ: {f.ring.symbols} vs {g.ring.symbols}")


def series_add(f: LaurentSeries, g: LaurentSeries) -> LaurentSeries:
    _check_same_ring(f, g)
    trunc = min(f.trunc_order, g.trunc_order)
    terms: dict[int, ParamPoly] = {}
    for s in (f, g):
        for k, c in s.items():
            if k <= trunc:
                terms[k] = terms[k] + c if k in terms else c
    return LaurentSeries.from_terms(f.ring, terms, trunc)


def series_mul(f: LaurentSeries, g: LaurentSeries) -> LaurentSeries:
    """Cauchy product, valid through ``min(tf + vg, tg + vf)``."""
    _check_same_ring(f, g)
    f, g = f.normalize(), g.normalize()
    vf, vg = f._effective_valuation(), g._effective_valuation()
    trunc = min(f.trunc_order + vg, g.trunc_order + vf)
    if f.is_zero() or g.is_zero():
        return LaurentSeries.zero(f.ring, trunc)
    terms: dict[int, ParamPoly] = {}
    for i, a in f.items():
        if i + vg > trunc:
            break
        if a.is_zero():
            continue
        for j, b in g.items():
            k = i + j
            if k > trunc:
                break
            if b.is_zero():
                continue
            prod = a * b
            terms[k] = terms[k] + prod if k in terms else prod
    return LaurentSeries.from_terms(f.ring, terms, trunc)


def series_shift_x(f: LaurentSeries, k: int) -> LaurentSeries:
    """Multiply by ``x**k`` (that is, by ``n**(-k)``)."""
    return LaurentSeries(f.ring, f.min_exp + k, f.coeffs, f.trunc_order + k)


def series_log1p(u: LaurentSeries) -> LaurentSeries:
    """``log(1 + u)`` for a series ``u`` with positive valuation."""
    u = u.normalize()
    v = u.valuation()
    if v is None:
        return LaurentSeries.zero(u.ring, u.trunc_order)
    if v < 1:
        raise DomainError(f"log1p needs a series without constant or polar part (valuation {v})")
    result = LaurentSeries.zero(u.ring, u.trunc_order)
    power = u
    for j in range(1, u.trunc_order // v + 1):
        result = result + power * Fraction((-1) ** (j + 1), j)
        power = series_mul(power, u)
    return result.truncate(u.trunc_order)


def series_exp(u: LaurentSeries) -> LaurentSeries:
    """``exp(u)`` for a series ``u`` with positive valuation."""
    u = u.normalize()
    v = u.valuation()
    T = u.trunc_order
    result = LaurentSeries.monomial(u.ring, 1, 0, T)
    if v is None:
        return result
    if v < 1:
        raise DomainError(f"exp needs a series with positive valuation (valuation {v})")
    power = LaurentSeries.monomial(u.ring, 1, 0, T)
    fact = 1
    for j in range(1, T // v + 1):
        power = series_mul(power, u)
        fact *= j
        result = result + power * Fraction(1, fact)
    return result.truncate(T)


def series_shift_n(f: LaurentSeries) -> LaurentSeries:
    """Re-expand ``f(1/n)`` at ``n + 1``: compose with ``x/(1+x)``."""
    f = f.normalize()
    v = f.valuation()
    T = f.trunc_order
    if v is not None and v < 0:
        raise DomainError("shift_n needs a power series; split off polar parts with series_shift_x")
    if v is None:
        return LaurentSeries.zero(f.ring, T)
    s = LaurentSeries.geometric_shift(f.ring, max(T, 1))
    acc = LaurentSeries.monomial(f.ring, f.coeff(T), 0, T)
    for k in range(T - 1, -1, -1):
        acc = series_mul(acc, s) + LaurentSeries.monomial(f.ring, f.coeff(k), 0, T)
    return acc.truncate(T)


def leading_term(f: LaurentSeries) -> tuple[int, ParamPoly]:
    """Smallest exponent with a nonzero coefficient, and that coefficient."""
    v = f.valuation()
    if v is None:
        raise TruncationError(
            f"series vanishes through x^{f.trunc_order}; increase the truncation order"
        )
    return v, f.coeff(v)
