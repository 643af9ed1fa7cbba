from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import useries
from qcd.errors import InsufficientPrecision, NonUnit, NotDivisible
from qcd.exact_arith import (
    USeries,
    format_rational,
    log_one_plus_u_over_u,
    parse_rational,
    u_log_ratio_constant,
)


def test_rational_serialization_round_trip():
    assert format_rational(F(-7, 3)) == "-7/3"
    assert format_rational(F(4, 2)) == "2"
    assert parse_rational("−7/3") == F(-7, 3)
    with pytest.raises(ValueError):
        parse_rational("0.5")


def test_difference_of_squares():
    a = USeries([1, 1], 3)
    b = USeries([1, -1], 3)
    assert a * b == USeries([1, 0, -1])


def test_additive_inverse():
    a = USeries([F(1, 3), 2, -5])
    assert (a + (-a)).is_zero()


def test_invert_two_plus_u():
    inv = USeries([2, 1], 4).invert()
    assert inv == USeries([F(1, 2), F(-1, 4), F(1, 8), F(-1, 16)])
    assert USeries([2, 1], 4) * inv == USeries.constant(1, 4)
    assert USeries.constant(1, 5).invert() == USeries.constant(1, 5)


def test_invert_non_unit():
    with pytest.raises(NonUnit):
        USeries([0, 1, 1]).invert()


def test_divide_by_u():
    r = USeries([0, 1, 1]).divide_by_u()
    assert r == USeries([1, 1]) and r.prec == 2
    with pytest.raises(NotDivisible):
        USeries([1, 1]).divide_by_u()


def test_bernoulli_one_by_hand():
    # (L - q)/u: the t^1 coefficient of the q-Bernoulli generating function
    P = 5
    b1 = (u_log_ratio_constant(P) - USeries.q(P)).divide_by_u()
    assert b1 == USeries([F(-1, 2), F(-1, 12), F(1, 24), F(-19, 720)])
    assert b1.classical_limit() == F(-1, 2)


def test_log_ratio_constant():
    L = u_log_ratio_constant(4)
    assert L.classical_limit() == 1
    assert L == USeries([1, F(1, 2), F(-1, 12), F(1, 24)])
    assert L * log_one_plus_u_over_u(12).truncate(4) == USeries.constant(1, 4)
    assert u_log_ratio_constant(12) * log_one_plus_u_over_u(12) == USeries.constant(1, 12)


def test_classical_limit():
    assert USeries([2, 1], 3).classical_limit() == 2
    with pytest.raises(InsufficientPrecision):
        USeries([]).classical_limit()


def test_json_round_trip():
    a = USeries([1, F(-1, 2), 0])
    data = a.to_json()
    assert data == {"prec": 3, "coeffs": ["1", "-1/2", "0"]}
    assert USeries.from_json(data) == a


def test_precision_is_min_of_operands():
    a, b = USeries([1, 2, 3, 4]), USeries([1, 1])
    assert (a + b).prec == 2
    assert (a * b).prec == 2
    assert (a * 3).prec == 4


@given(useries(), useries(), useries())
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a


@given(useries(unit=True))
def test_double_inversion(a):
    assert a.invert().invert() == a
    assert a * a.invert() == USeries.constant(1, a.prec)


@given(useries(prec=7))
def test_divide_by_u_undoes_multiplication(a):
    u = USeries([0, 1], a.prec)
    r = (u * a).divide_by_u()
    assert r.prec == a.prec - 1
    assert r == a.truncate(a.prec - 1)


@given(useries(prec=4), useries(prec=6), st.integers(-3, 3))
def test_precision_never_overstated(a, b, k):
    assert (a - b).prec == 4
    assert (a * b + k).prec == 4
