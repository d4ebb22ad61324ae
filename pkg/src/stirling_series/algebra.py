"""Exact rational scalars and multivariate polynomials in named parameters.

Coefficients are :class:`fractions.Fraction`. A :class:`PolyRing` fixes an
ordered tuple of parameter names; every :class:`ParamPoly` stores its terms
as a mapping from dense exponent vectors (one slot per ring symbol) to
nonzero rationals.

    >>> R = PolyRing(("alpha", "beta"))
    >>> a, b = R.gens()
    >>> str(R.const(rat(3, 2)) * a**2 - a - 3 * b + rat(3, 40))
    '3/2*alpha^2 - alpha - 3*beta + 3/40'
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterator, Mapping, Union

from .errors import ContextMismatchError, UnknownSymbolError

Scalar = Union[int, Fraction]
Exponents = tuple[int, ...]


def rat(num: int, den: int = 1) -> Fraction:
    """Canonical rational ``num/den``; raises ``ZeroDivisionError`` for den == 0."""
    return Fraction(num, den)


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"``, an integer, or a decimal literal exactly."""
    return Fraction(text.strip())


@dataclass(frozen=True)
class PolyRing:
    """Polynomial ring over Q in an ordered tuple of parameter symbols."""

    symbols: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "symbols", tuple(self.symbols))
        if len(set(self.symbols)) != len(self.symbols):
            raise ValueError(f"duplicate symbol names in {self.symbols!r}")
        for name in self.symbols:
            if not name.isidentifier():
                raise ValueError(f"invalid symbol name {name!r}")

    @property
    def nvars(self) -> int:
        return len(self.symbols)

    def index(self, name: str) -> int:
        try:
            return self.symbols.index(name)
        except ValueError:
            raise UnknownSymbolError(name) from None

    def zero(self) -> "ParamPoly":
        return ParamPoly(self, {})

    def one(self) -> "ParamPoly":
        return self.const(1)

    def const(self, c: Scalar) -> "ParamPoly":
        return ParamPoly(self, {(0,) * self.nvars: Fraction(c)})

    def gen(self, name: str) -> "ParamPoly":
        exps = [0] * self.nvars
        exps[self.index(name)] = 1
        return ParamPoly(self, {tuple(exps): Fraction(1)})

    def gens(self) -> tuple["ParamPoly", ...]:
        return tuple(self.gen(s) for s in self.symbols)

    def __call__(self, value: Union["ParamPoly", Scalar]) -> "ParamPoly":
        """Coerce a scalar (or a polynomial of this ring) into the ring."""
        if isinstance(value, ParamPoly):
            if value.ring != self:
                raise ContextMismatchError(
                    f"polynomial over {value.ring.symbols} used in ring {self.symbols}"
                )
            return value
        return self.const(value)


class ParamPoly:
    """Immutable multivariate polynomial with rational coefficients."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Mapping[Exponents, Scalar]):
        clean: dict[Exponents, Fraction] = {}
        for exps, c in terms.items():
            if len(exps) != ring.nvars:
                raise ValueError(f"exponent vector {exps} does not match ring {ring.symbols}")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            c = Fraction(c)
            if c:
                clean[tuple(exps)] = c
        self.ring = ring
        self._terms = clean
        self._hash = None

    # -- inspection ---------------------------------------------------------

    @property
    def terms(self) -> Mapping[Exponents, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Exponents, Fraction]]:
        return iter(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        zero = (0,) * self.ring.nvars
        return all(e == zero for e in self._terms)

    def constant_value(self) -> Fraction:
        """The constant term; raises if the polynomial is not constant."""
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return self._terms.get((0,) * self.ring.nvars, Fraction(0))

    def variables(self) -> tuple[str, ...]:
        """Symbols that actually occur, in ring order."""
        used = set()
        for exps in self._terms:
            used.update(i for i, e in enumerate(exps) if e)
        return tuple(s for i, s in enumerate(self.ring.symbols) if i in used)

    def degree_in(self, name: str) -> int:
        i = self.ring.index(name)
        if not self._terms:
            return -1
        return max(exps[i] for exps in self._terms)

    def total_degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(exps) for exps in self._terms)

    def coefficient_in(self, name: str, power: int) -> "ParamPoly":
        """Coefficient of ``name**power`` as a polynomial free of ``name``."""
        i = self.ring.index(name)
        out = {}
        for exps, c in self._terms.items():
            if exps[i] == power:
                out[exps[:i] + (0,) + exps[i + 1:]] = c
        return ParamPoly(self.ring, out)

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "ParamPoly":
        if isinstance(other, ParamPoly):
            if other.ring != self.ring:
                raise ContextMismatchError(
                    f"rings differ: {self.ring.symbols} vs {other.ring.symbols}"
                )
            return other
        if isinstance(other, (int, _RationalABC)):
            return self.ring.const(Fraction(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return poly_add(self, other)

    __radd__ = __add__

    def __neg__(self) -> "ParamPoly":
        return ParamPoly(self.ring, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return poly_add(self, -other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return poly_add(other, -self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return poly_mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, _RationalABC)):
            q = Fraction(other)
            return ParamPoly(self.ring, {e: c / q for e, c in self._terms.items()})
        if isinstance(other, ParamPoly) and other.is_constant():
            return self / other.constant_value()
        return NotImplemented

    def __pow__(self, k: int) -> "ParamPoly":
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers are supported")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, ParamPoly):
            return self.ring == other.ring and self._terms == other._terms
        if isinstance(other, (int, _RationalABC)):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._terms)

    # -- evaluation ---------------------------------------------------------

    def substitute(self, name: str, value: Scalar) -> "ParamPoly":
        return poly_substitute(self, name, value)

    def evaluate(self, values: Mapping[str, object]):
        """Evaluate at the given symbol values.

        Values may be any numeric type closed under ``+`` and ``*`` with
        ``Fraction`` (e.g. ``Fraction`` itself or ``int``). Every symbol that
        occurs must be supplied.
        """
        missing = [s for s in self.variables() if s not in values]
        if missing:
            raise UnknownSymbolError(", ".join(missing))
        total = Fraction(0)
        for exps, c in self._terms.items():
            term = c
            for name, e in zip(self.ring.symbols, exps):
                if e:
                    term = term * values[name] ** e
            total = total + term
        return total

    # -- rendering ----------------------------------------------------------

    def sorted_terms(self) -> list[tuple[Exponents, Fraction]]:
        """Terms in graded-lexicographic order (highest total degree first)."""
        return sorted(self._terms.items(), key=lambda t: (-sum(t[0]), tuple(-e for e in t[0])))

    def _monomial_str(self, exps: Exponents) -> str:
        parts = []
        for name, e in zip(self.ring.symbols, exps):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts)

    def num_terms(self) -> int:
        return len(self._terms)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for idx, (exps, c) in enumerate(self.sorted_terms()):
            mono = self._monomial_str(exps)
            mag = abs(c)
            if mono:
                body = mono if mag == 1 else f"{format_rational(mag)}*{mono}"
            else:
                body = format_rational(mag)
            if idx == 0:
                pieces.append(f"-{body}" if c < 0 else body)
            else:
                pieces.append(f"- {body}" if c < 0 else f"+ {body}")
        return " ".join(pieces)

    def __repr__(self) -> str:
        return f"ParamPoly({self.ring.symbols!r}, {str(self)!r})"


def _check_same_ring(p: ParamPoly, q: ParamPoly) -> None:
    if p.ring != q.ring:
        raise ContextMismatchError(f"rings differ: {p.ring.symbols} vs {q.ring.symbols}")


def poly_add(p: ParamPoly, q: ParamPoly) -> ParamPoly:
    _check_same_ring(p, q)
    out = dict(p._terms)
    for e, c in q._terms.items():
        out[e] = out.get(e, Fraction(0)) + c
    return ParamPoly(p.ring, out)


def poly_mul(p: ParamPoly, q: ParamPoly) -> ParamPoly:
    _check_same_ring(p, q)
    out: dict[Exponents, Fraction] = {}
    for e1, c1 in p._terms.items():
        for e2, c2 in q._terms.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            out[e] = out.get(e, Fraction(0)) + c1 * c2
    return ParamPoly(p.ring, out)


def poly_substitute(p: ParamPoly, name: str, value: Scalar) -> ParamPoly:
    """Replace symbol ``name`` by the rational ``value``.

    The ring is kept; the symbol simply no longer occurs in the result.
    """
    i = p.ring.index(name)
    value = Fraction(value)
    out: dict[Exponents, Fraction] = {}
    for exps, c in p._terms.items():
        e = exps[:i] + (0,) + exps[i + 1:]
        out[e] = out.get(e, Fraction(0)) + c * value ** exps[i]
    return ParamPoly(p.ring, out)
