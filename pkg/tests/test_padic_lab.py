from fractions import Fraction as F

import pytest

from qcd.combinatorics import classical_bernoulli
from qcd.errors import BudgetExceeded, DegenerateRatio, OutOfDomain
from qcd.exact_arith import USeries
from qcd.padic import PadicNumber
from qcd.padic_lab import (
    IntegralSpec,
    closed_form_eq12,
    convergence_table,
    corollary3_crosscheck,
    functional_equation_check,
    geometric_sum,
    moment_crosscheck,
    padic_exp,
    padic_log,
    padic_sqrt_1m4t,
    padic_suite,
    riemann_sum,
    specialize,
)
from qcd.q_families import QFamilyConfig, q_bernoulli, qcd_direct

P = 5
W = 20  # digits 12 + N_max 6 + 2


def num(x, digits=W):
    return PadicNumber.from_rational(F(x), P, digits)


Q = num(6)
T = num(5)


def test_log_and_exp():
    assert padic_log(num(1)).is_zero()
    assert padic_exp(PadicNumber.zero(P), 12).same_digits(num(1, 12))
    assert padic_log(padic_exp(num(5, 12))).agreement(5) >= 12
    lg = padic_log(num(6, 12))
    assert lg.val >= 1
    assert padic_exp(lg).agreement(6) >= 12


def test_log_series_against_rational_partial_sum():
    # log(1 + 5) partial sum in exact rationals; the tail is O(5^k) for large k
    y = F(5)
    partial = sum(((-1) ** (k + 1)) * y**k / k for k in range(1, 40))
    assert padic_log(num(6, 12)).agreement(num(partial, 30)) >= 12


def test_domain_errors():
    with pytest.raises(OutOfDomain):
        padic_log(num(2))
    with pytest.raises(OutOfDomain):
        padic_exp(num(1))
    with pytest.raises(OutOfDomain):
        padic_sqrt_1m4t(num(1))
    with pytest.raises(OutOfDomain):
        riemann_sum(IntegralSpec("one"), num(2), 2)


def test_sqrt():
    assert padic_sqrt_1m4t(PadicNumber.zero(P), 12).same_digits(num(1, 12))
    s = padic_sqrt_1m4t(num(5, 12))
    assert (s * s).agreement(-19) >= 12
    assert (s - 1).val >= 1


@pytest.mark.parametrize("N", range(1, 7))
def test_constant_one_is_exactly_one(N):
    for q in (Q, num(1), num(11)):
        s = riemann_sum(IntegralSpec("one"), q, N)
        assert s.val == 0 and s.unit == 1


def test_half_power_with_t_zero():
    spec = IntegralSpec("half_power", t=PadicNumber.zero(P))
    for N in (1, 3):
        s = riemann_sum(spec, Q, N)
        assert s.val == 0 and s.unit == 1


def test_monomial_cauchy_step():
    spec = IntegralSpec("monomial", 1)
    s5, s6 = riemann_sum(spec, Q, 5), riemann_sum(spec, Q, 6)
    assert s6.agreement(s5) >= 5


@pytest.mark.parametrize("kind, n, t", [("monomial", 2, None), ("half_power", 0, T), ("half_binomial", 3, None)])
def test_cauchy_differences_do_not_grow(kind, n, t):
    table = convergence_table(IntegralSpec(kind, n, t), Q, 6)
    vals = [v for _, v in table]
    assert all(a <= b for a, b in zip(vals, vals[1:]))


def test_geometric_sum_matches_direct_sum():
    s = padic_sqrt_1m4t(T, W)
    for N in range(1, 7):
        direct = riemann_sum(IntegralSpec("half_power", t=T), Q, N)
        closed = geometric_sum(s, Q, N)
        assert direct.same_digits(closed)
        assert min(direct.abs_prec, closed.abs_prec) >= 12
    assert geometric_sum(num(1), Q, 3).same_digits(num(1))


def test_geometric_degenerate_ratio():
    with pytest.raises(DegenerateRatio):
        geometric_sum(num(1), num(1), 2)


def test_closed_form_trivial_points():
    assert closed_form_eq12(Q, PadicNumber.zero(P)).same_digits(num(1))
    assert closed_form_eq12(num(1), PadicNumber.zero(P)).same_digits(num(1))


@pytest.mark.parametrize("q", [6, 1, 11])
def test_riemann_sums_approach_closed_form(q):
    qq = num(q)
    cf = closed_form_eq12(qq, T)
    gaps = [riemann_sum(IntegralSpec("half_power", t=T), qq, N).agreement(cf) for N in range(1, 7)]
    assert all(a <= b for a, b in zip(gaps, gaps[1:]))
    assert gaps[-1] > gaps[0]


def test_volkenborn_moments_are_classical_bernoulli():
    for n in range(6):
        s = riemann_sum(IntegralSpec("monomial", n), num(1), 6)
        assert s.agreement(num(classical_bernoulli(n))) >= 5


def test_budget():
    with pytest.raises(BudgetExceeded):
        riemann_sum(IntegralSpec("one"), Q, 4, budget=100)


def test_specialize_polynomial():
    assert specialize(USeries([1, 2, 3]), Q, W).same_digits(num(1 + 2 * 5 + 3 * 25))


@pytest.mark.parametrize("n", range(7))
def test_moment_crosscheck(n):
    rep = moment_crosscheck(n, Q, 6, q_bernoulli(n, QFamilyConfig(6, 10)))
    assert rep.passed, rep.detail
    assert rep.detail["modulus"] >= 4


@pytest.mark.parametrize("n", range(6))
def test_functional_equation(n):
    rep = functional_equation_check(n, Q, 6)
    assert rep.passed, rep.detail


def test_functional_equation_n0_exact_at_every_level():
    for N in (1, 2, 3):
        rep = functional_equation_check(0, Q, N)
        assert rep.passed and rep.detail["agreement"] == rep.detail["modulus"]


@pytest.mark.parametrize("n", range(5))
def test_corollary3_numerically(n):
    rep = corollary3_crosscheck(n, Q, 6, qcd_direct(n, QFamilyConfig(6, 10)))
    assert rep.passed, rep.detail


def test_crosscheck_detects_wrong_series():
    wrong = q_bernoulli(2, QFamilyConfig(6, 10)) + 1
    assert not moment_crosscheck(2, Q, 6, wrong).passed


def test_suite_defaults_pass():
    reports = padic_suite()
    assert reports and all(r.passed for r in reports), [r for r in reports if not r.passed]


def test_suite_rejects_bad_domain():
    with pytest.raises(OutOfDomain):
        padic_suite(p=2)
    with pytest.raises(OutOfDomain):
        padic_suite(t_val=3)
