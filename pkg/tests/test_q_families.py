from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction as F
from math import comb, factorial

import pytest

from qcd import q_families as qf
from qcd.combinatorics import classical_bernoulli, classical_catalan_daehee
from qcd.errors import IdentityViolation, IndexOutOfRange, InsufficientPrecision
from qcd.exact_arith import USeries, log_one_plus_u_over_u, u_log_ratio_constant
from qcd.power_series import TSeries, ts_binomial, ts_log_one_plus_t

CFG = qf.QFamilyConfig(n_max=10, u_prec=6)

# u-series coefficients (orders u^0..u^3) from a direct sympy expansion of the
# generating functions; see tests/oracles/sympy_expansions.py
SYMPY_DNQ = [
    [1, 0, 0, 0],
    [1, F(1, 6), F(-1, 12), F(19, 360)],
    [F(7, 3), F(1, 2), F(-41, 180), F(49, 360)],
    [F(20, 3), F(8, 5), F(-31, 45), F(251, 630)],
]
SYMPY_BNQ = [
    [1, 0, 0, 0],
    [F(-1, 2), F(-1, 12), F(1, 24), F(-19, 720)],
    [F(1, 6), F(1, 12), F(-11, 360), F(11, 720)],
    [0, F(-1, 30), 0, F(1, 252)],
]


@pytest.mark.parametrize("n", range(4))
def test_against_sympy_expansion(n):
    assert list(qf.qcd_direct(n, CFG).coeffs[:4]) == SYMPY_DNQ[n]
    assert list(qf.q_bernoulli(n, CFG).coeffs[:4]) == SYMPY_BNQ[n]


def _bernoulli_by_shift(n: int, prec: int) -> USeries:
    """B_{n,q} = L * sum_m B_{n+m} l^m / m!, with l = log q = log(1+u)."""
    ell = USeries([0] + list(log_one_plus_u_over_u(prec - 1).coeffs))
    acc = USeries.zero(prec)
    power = USeries.constant(1, prec)
    for m in range(prec):
        acc = acc + power * (classical_bernoulli(n + m) / factorial(m))
        power = power * ell
    return u_log_ratio_constant(prec) * acc


@pytest.mark.parametrize("n", range(11))
def test_q_bernoulli_against_shifted_classical_sum(n):
    assert qf.q_bernoulli(n, CFG) == _bernoulli_by_shift(n, CFG.u_prec)


def test_q_bernoulli_examples():
    assert qf.q_bernoulli(0, CFG) == USeries.constant(1, 6)
    assert qf.q_bernoulli(1, CFG).coeffs[:3] == (F(-1, 2), F(-1, 12), F(1, 24))
    assert qf.q_bernoulli(2, CFG).classical_limit() == F(1, 6)
    for n in range(11):
        assert qf.q_bernoulli_recurrence(n, CFG) == qf.q_bernoulli(n, CFG)


def test_daehee_type1_examples():
    d0 = qf.daehee_type1(0, 1, CFG)
    assert d0.degree == 0
    assert d0[0] == USeries([2], 6) * USeries([2, 1], 6).invert()
    assert d0[0].coeffs[:3] == (1, F(-1, 2), F(1, 4))
    assert qf.daehee_type1(1, 1, CFG)[0].classical_limit() == F(-1, 2)


@pytest.mark.parametrize("n", range(9))
def test_daehee_type1_classical_limit(n):
    # q -> 1 generating function is log(1+t)/t * (1+t)^x
    poly = qf.daehee_type1(n, 1, CFG)
    assert poly.degree <= n
    assert poly[0].classical_limit() == F((-1) ** n * factorial(n), n + 1)
    for x in range(4):
        # at integer x the classical value is n! * sum_k (-1)^k/(k+1) C(x, n-k)
        expect = factorial(n) * sum(F((-1) ** k, k + 1) * comb(x, n - k) for k in range(n + 1))
        assert poly.at(x).classical_limit() == expect


def _classical_type2(lam, order):
    """Rational expansion of lam*log(1+t)/((1+t)^lam - 1), t cancelled first."""
    num = ts_log_one_plus_t(order + 1) * lam
    den = ts_binomial(lam, order + 1) - 1
    return TSeries(num.coeffs[1:]) * TSeries(den.coeffs[1:]).invert()


@pytest.mark.parametrize("lam", [F(1, 2), F(1), F(2, 3)])
def test_daehee_type2_classical_limit(lam):
    ref = _classical_type2(lam, 8)
    for n in range(9):
        poly = qf.daehee_type2(n, lam, CFG)
        assert poly.degree <= n
        assert poly[0].classical_limit() == ref[n] * factorial(n)


def test_daehee_type2_examples():
    assert qf.daehee_type2(0, F(1, 2), CFG)[0] == USeries.constant(1, 6)
    assert qf.daehee_type2(1, F(1, 2), CFG)[0].classical_limit() == F(-1, 4)


def test_daehee_type2_shift_in_x():
    # (1+t)^(x+1) = (1+t)^x (1+t): D_n(x+1) = D_n(x) + n D_{n-1}(x)
    lam = F(1, 2)
    for n in range(1, 8):
        for x in range(3):
            lhs = qf.daehee_type2(n, lam, CFG).at(x + 1)
            rhs = qf.daehee_type2(n, lam, CFG).at(x) + qf.daehee_type2(n - 1, lam, CFG).at(x) * n
            assert lhs == rhs


def test_qcd_examples():
    assert qf.qcd_direct(0, CFG) == USeries.constant(1, 6)
    assert qf.qcd_direct(1, CFG).classical_limit() == 1
    assert qf.qcd_direct(2, CFG).classical_limit() == F(7, 3)
    assert qf.qcd_theorem1(0, CFG) == USeries.constant(1, 6)
    assert qf.qcd_theorem2(0, CFG) == USeries.constant(1, 6)


def test_theorem1_n1_classical_factors():
    # (2/2)(-4)(-1/2) - 1*1 = 1
    d1 = qf.daehee_type1(1, 1, CFG)[0].classical_limit()
    assert F(2, 2) * (-4) * d1 - 1 * 1 * 1 == 1 == qf.qcd_theorem1(1, CFG).classical_limit()


def test_theorem2_n2_by_hand():
    assert F(1, 2) * (2**3 * F(-1, 2) * (-1) + 2**2 * F(1, 6) * 1) == F(7, 3)
    assert qf.qcd_theorem2(2, CFG).classical_limit() == F(7, 3)


@pytest.mark.parametrize("n", range(11))
def test_routes_agree(n):
    direct = qf.qcd_direct(n, CFG)
    assert qf.qcd_theorem1(n, CFG) == direct
    assert qf.qcd_theorem2(n, CFG) == direct
    assert direct.classical_limit() == classical_catalan_daehee(n)


def test_corollary3():
    assert qf.corollary3_value(0, CFG) == USeries.constant(1, 6)
    assert qf.corollary3_value(1, CFG).classical_limit() == F(-1, 4)
    assert qf.corollary3_value(2, CFG) == qf.qcd_direct(2, CFG) * F(1, 16)


def test_identity_checks_pass():
    for n in range(11):
        assert qf.eq20_relation(n, CFG).passed
        assert qf.theorem4_check(n, CFG).passed
    assert qf.eq21_composition_check(10, CFG).passed


def test_eq20_n1_classical():
    assert 1 == (-1) * 4 * F(-1, 4)


def test_theorem4_n1_by_formula():
    # S2(1,0) = 0, so only k = 1 contributes: (-1) 2^(-1) 1! d_{1,q}
    assert qf.q_bernoulli(1, CFG) == qf.qcd_direct(1, CFG) * F(-1, 2)


def test_eq21_classical_slice():
    composed, egf = qf.eq21_composition(8, CFG)
    assert [c.classical_limit() for c in composed.coeffs] == [
        classical_bernoulli(n) / factorial(n) for n in range(9)]


@pytest.mark.parametrize("n", range(11))
def test_polynomial_routes(n):
    direct = qf.qcd_poly_direct(n, CFG)
    assert qf.qcd_poly_theorem5(n, CFG) == direct
    assert direct.at(0) == qf.qcd_direct(n, CFG)
    assert direct.degree <= n
    assert direct[n] == USeries.constant(F((-2) ** n, factorial(n)), CFG.u_prec)


@pytest.mark.parametrize("k", range(4))
def test_polynomial_at_even_integers(k):
    # (1-4t)^(x/2) at x = 2k is the polynomial (1-4t)^k
    for n in range(8):
        expect = USeries.zero(CFG.u_prec)
        for m in range(min(n, k) + 1):
            expect = expect + qf.qcd_direct(n - m, CFG) * (comb(k, m) * (-4) ** m)
        assert qf.qcd_poly_direct(n, CFG).at(2 * k) == expect


def test_poly_zero_is_one():
    assert qf.qcd_poly_direct(0, CFG) == qf.XPoly([USeries.constant(1, 6)])


def test_identity_violation_on_corrupted_route(monkeypatch):
    monkeypatch.setattr(qf, "qcd_direct", lambda n, cfg: USeries.constant(n + 2, cfg.u_prec))
    with pytest.raises(IdentityViolation):
        qf.eq20_relation(3, CFG)
    assert not qf.theorem4_check(2, CFG, strict=False).passed


def test_index_and_precision_guards():
    with pytest.raises(IndexOutOfRange):
        qf.qcd_direct(11, CFG)
    tight = qf.QFamilyConfig(n_max=6, u_prec=4, guard=6)
    with pytest.raises(InsufficientPrecision):
        qf.qcd_direct(6, tight)
    assert qf.qcd_direct(5, tight).prec == 4
    with pytest.raises(ValueError):
        qf.QFamilyConfig(n_max=6, u_prec=4, guard=3)


def test_guard_env_override(monkeypatch):
    monkeypatch.setenv("QCD_GUARD", "11")
    assert qf.QFamilyConfig(n_max=5, u_prec=3).guard == 11


def test_delivered_precision():
    for n in range(11):
        assert qf.qcd_direct(n, CFG).prec == CFG.u_prec
        assert qf.q_bernoulli(n, CFG).prec == CFG.u_prec


def test_concurrent_evaluation_matches_sequential():
    cfg = qf.QFamilyConfig(n_max=9, u_prec=5)
    seq = [qf.qcd_theorem2(n, cfg) for n in range(10)]
    with ThreadPoolExecutor(4) as pool:
        par = list(pool.map(lambda n: qf.qcd_theorem2(n, cfg), range(10)))
    assert par == seq
