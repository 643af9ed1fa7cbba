from fractions import Fraction

import pytest
from hypothesis import strategies as st

from qcd.exact_arith import USeries

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def useries(prec=6, unit=False):
    coeffs = st.lists(rationals, min_size=prec, max_size=prec)
    if unit:
        coeffs = coeffs.filter(lambda cs: cs[0] != 0)
    return coeffs.map(USeries)


@pytest.fixture
def F():
    return Fraction
