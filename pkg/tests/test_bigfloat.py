from decimal import Decimal
from fractions import Fraction
from functools import reduce

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stirling_series.bigfloat import (
    BigFloat,
    bf_exp,
    bf_ln,
    bf_pow,
    bf_sqrt,
    const_e,
    const_pi,
    factorial,
    ln_factorial,
)
from stirling_series.errors import DomainError


def rel_close(a, b, digits):
    a, b = Fraction(Decimal(str(a))), Fraction(Decimal(str(b)))
    if b == 0:
        return abs(a) <= Fraction(1, 10 ** digits)
    return abs(a - b) <= abs(b) * Fraction(1, 10 ** digits)


def mp_value(dps, fn):
    with mpmath.workdps(dps):
        return mpmath.nstr(fn(), dps + 5, strip_zeros=False)


# -- factorial ----------------------------------------------------------------


def test_factorial_examples():
    assert factorial(10).value == 3628800
    assert factorial(0).value == 1
    assert int(factorial(20)) == reduce(lambda a, b: a * b, range(1, 21)) == 2432902008176640000


def test_factorial_negative():
    with pytest.raises(DomainError):
        factorial(-1)


def test_factorial_ratio():
    prev = factorial(0).value
    for n in range(1, 501):
        cur = factorial(n).value
        assert cur == prev * n
        prev = cur


def test_ln_factorial_against_mpmath():
    got = ln_factorial(1000, 50)
    assert rel_close(got, mp_value(70, lambda: mpmath.loggamma(1001)), 48)


# -- constants ----------------------------------------------------------------


def _e_interval(K):
    s = sum((Fraction(1, reduce(lambda a, b: a * b, range(1, k + 1), 1)) for k in range(K + 1)), Fraction(0))
    kfact = reduce(lambda a, b: a * b, range(1, K + 1), 1)
    return s, s + Fraction(1, kfact * K)


def test_const_e_interval_oracle():
    lo, hi = _e_interval(40)
    value = Fraction(const_e(30).value)
    slack = Fraction(1, 10 ** 28)
    assert lo - slack <= value <= hi + slack
    assert str(const_e(30).value).startswith("2.71828182845904523536028747135")


def _atan_inv(m, terms):
    return sum((Fraction((-1) ** j, (2 * j + 1) * m ** (2 * j + 1)) for j in range(terms)), Fraction(0))


def test_const_pi_two_machin_identities():
    # Gauss: pi = 48 atan(1/18) + 32 atan(1/57) - 20 atan(1/239)
    gauss = 48 * _atan_inv(18, 30) + 32 * _atan_inv(57, 20) - 20 * _atan_inv(239, 12)
    value = Fraction(const_pi(30).value)
    assert abs(value - gauss) < Fraction(1, 10 ** 28)
    # correctly rounded: ...3383279502... -> ...338328
    assert str(const_pi(30).value) == "3.14159265358979323846264338328"


@pytest.mark.parametrize("p", [10, 25, 60, 120])
def test_constants_against_mpmath(p):
    assert rel_close(const_e(p), mp_value(p + 10, lambda: mpmath.e), p - 2)
    assert rel_close(const_pi(p), mp_value(p + 10, lambda: mpmath.pi), p - 2)


def test_precision_monotonicity():
    assert rel_close(const_e(10), const_e(40), 8)
    assert const_e(10).precision == 10


def test_minimum_precision():
    with pytest.raises(ValueError):
        const_e(9)
    with pytest.raises(ValueError):
        BigFloat(1, 5)


# -- elementary functions -------------------------------------------------------


def test_ln_exp_inverse():
    for p in (20, 60, 100):
        one = bf_ln(bf_exp(BigFloat(1, p)))
        assert abs(Fraction(one.value) - 1) <= Fraction(1, 10 ** (p - 2))


def test_domain_errors():
    with pytest.raises(DomainError):
        bf_ln(BigFloat(0))
    with pytest.raises(DomainError):
        bf_ln(BigFloat(-2))
    with pytest.raises(DomainError):
        bf_sqrt(BigFloat(-1))
    with pytest.raises(DomainError):
        bf_pow(BigFloat(-1), 2)
    with pytest.raises(ZeroDivisionError):
        BigFloat(1) / 0


def test_pow_two_precisions():
    def w(p):
        e = const_e(p)
        n = BigFloat(10, p)
        return bf_pow(n / e + 1 / (12 * e * n), 10)

    assert rel_close(w(60), w(30), 28)


def test_pow_against_mpmath_large_exponent():
    x = BigFloat(Fraction(10 ** 4 + 1, 27183), 60)
    got = bf_pow(x, 10 ** 4)
    with mpmath.workdps(90):
        # start from the already-rounded base: input rounding is amplified n-fold
        ref = mpmath.power(mpmath.mpf(str(x.value)), 10 ** 4)
        ref = mpmath.nstr(ref, 70, strip_zeros=False)
    assert rel_close(got, ref, 58)


def test_omega_zeta_identities():
    p = 60
    r3 = bf_sqrt(BigFloat(3, p))
    omega = (3 - r3) / 6
    zeta = (3 + r3) / 6
    tol = Fraction(1, 10 ** (p - 2))
    assert abs(Fraction((omega + zeta).value) - 1) <= tol
    assert abs(Fraction((omega * zeta).value) - Fraction(1, 6)) <= tol


def test_to_sci():
    assert BigFloat(Fraction(-57954, 10 ** 15)).to_sci(5) == "-5.7954e-11"
    assert BigFloat(Fraction(123456, 10)).to_sci(3) == "1.23e+4"
    assert BigFloat(0).to_sci(3) == "0.00e+0"


def test_mixed_precision_uses_lower():
    a = BigFloat(1, 20) / 3
    b = BigFloat(1, 50) / 3
    assert (a + b).precision == 20


# -- precision escalation --------------------------------------------------------

positive = st.fractions(min_value=Fraction(1, 1000), max_value=10 ** 6, max_denominator=10 ** 6)
precisions = st.integers(min_value=10, max_value=80)


def _agree(f, x, p):
    lo = f(BigFloat(x, 2 * p + 10), p)
    hi = f(BigFloat(x, 2 * p + 10), 2 * p)
    return rel_close(lo, hi, p - 3)


@settings(max_examples=120, deadline=None)
@given(positive, precisions)
def test_escalation_ln_sqrt(x, p):
    assert _agree(lambda v, q: bf_ln(v, q), x, p)
    assert _agree(lambda v, q: bf_sqrt(v, q), x, p)


@settings(max_examples=120, deadline=None)
@given(st.fractions(min_value=-200, max_value=200, max_denominator=1000), precisions)
def test_escalation_exp(x, p):
    assert _agree(lambda v, q: bf_exp(v, q), x, p)


@settings(max_examples=120, deadline=None)
@given(
    st.fractions(min_value=Fraction(1, 10), max_value=5000, max_denominator=10 ** 4),
    st.integers(min_value=1, max_value=10 ** 4),
    precisions,
)
def test_escalation_pow(x, y, p):
    assert _agree(lambda v, q: bf_pow(v, y, q), x, p)


@settings(max_examples=120, deadline=None)
@given(positive, positive, precisions)
def test_escalation_arithmetic(x, y, p):
    for op in (lambda a, b: a * b, lambda a, b: a / b):
        assert rel_close(op(BigFloat(x, p), BigFloat(y, p)), op(BigFloat(x, 2 * p), BigFloat(y, 2 * p)), p - 3)
    for op in (lambda a, b: a + b, lambda a, b: a - b):
        lo = op(BigFloat(x, p), BigFloat(y, p))
        hi = op(BigFloat(x, 2 * p), BigFloat(y, 2 * p))
        # cancellation in a - b only amplifies input rounding, so measure against the operands
        assert abs(Fraction(lo.value) - Fraction(hi.value)) <= max(x, y) * Fraction(1, 10 ** (p - 3))
    assert rel_close(-BigFloat(x, p), -BigFloat(x, 2 * p), p - 3)


@settings(max_examples=120, deadline=None)
@given(precisions)
def test_escalation_constants(p):
    assert rel_close(const_e(p), const_e(2 * p), p - 3)
    assert rel_close(const_pi(p), const_pi(2 * p), p - 3)
