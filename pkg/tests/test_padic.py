from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qcd.errors import DivisionByZero, OutOfDomain, PrecisionExhausted
from qcd.padic import INF, PadicNumber

P = 5


def pn(x, digits=12):
    return PadicNumber.from_rational(F(x), P, digits)


def test_basic_arithmetic():
    one = pn(1)
    assert one + PadicNumber.zero(P) == one
    sq = pn(5) * pn(5)
    assert (sq.val, sq.unit) == (2, 1)
    d = pn(6) - pn(1)
    assert d.val == 1 and d.digits == 11 and d.unit == 1


def test_norm_normalization():
    assert pn(5).norm() == F(1, 5)
    assert pn(F(1, 25)).norm() == 25


def test_division():
    x = pn(F(7, 3)) / pn(F(2, 5))
    assert x.same_digits(pn(F(35, 6)))
    with pytest.raises(DivisionByZero):
        pn(1) / PadicNumber.zero(P)
    with pytest.raises(PrecisionExhausted):
        pn(1) / (pn(6) - pn(6))


def test_cancellation_yields_big_oh():
    z = pn(6) - pn(6)
    assert z.is_zero() and not z.exact_zero and z.abs_prec == 12
    assert pn(3).agreement(pn(3)) == 12
    assert PadicNumber.zero(P).agreement(PadicNumber.zero(P)) is INF


def test_rejects_even_prime():
    with pytest.raises(ValueError):
        PadicNumber.from_int(3, 2, 5)


def test_json_round_trip():
    x = pn(F(-7, 15))
    data = x.to_json()
    assert data["p"] == 5 and data["val"] == -1 and data["digits"] == 12
    assert len(data["unit_base_p_digits"]) == 12
    assert PadicNumber.from_json(data) == x
    assert PadicNumber.from_json(PadicNumber.zero(P).to_json()).exact_zero


def test_residue():
    assert pn(-1, 4).residue(4) == 5**4 - 1
    with pytest.raises(PrecisionExhausted):
        pn(1, 4).residue(5)


small = st.fractions(min_value=-500, max_value=500, max_denominator=60).filter(lambda x: x != 0)


@given(small, small)
def test_field_operations_match_rationals(a, b):
    x, y = pn(a, 10), pn(b, 10)
    for got, exact in ((x + y, a + b), (x * y, a * b), (x / y, a / b), (x - y, a - b)):
        if exact == 0:
            assert got.is_zero()
            continue
        ref = PadicNumber.from_rational(exact, P, 30)
        assert got.same_digits(ref)


@given(small)
def test_multiplicative_inverse(a):
    x = pn(a, 9)
    assert (x * (1 / x)).same_digits(pn(1, 9))
