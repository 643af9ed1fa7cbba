"""q-Bernoulli, Daehee-type and q-Catalan-Daehee families, and the identities
tying them together.

Everything is exact over ``Q[[u]]``, ``u = q - 1``. Generating functions are
expanded once per configuration by :func:`~qcd.power_series.gf_solve_u_pivot`
at an internally padded precision and truncated to ``cfg.u_prec`` on the way
out, so two routes to the same number can be compared with ``==``.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .combinatorics import catalan, stirling_first, stirling_second
from .errors import IdentityViolation, IndexOutOfRange, InsufficientPrecision
from .exact_arith import USeries, as_rational, format_rational, u_log_ratio_constant
from .power_series import (
    TSeries,
    gf_solve_u_pivot,
    ts_binomial,
    ts_compose,
    ts_exp,
    ts_log_one_minus_4t,
    ts_log_one_plus_t,
    ts_sqrt_one_minus_4t,
)

__all__ = [
    "CheckReport",
    "QFamilyConfig",
    "XPoly",
    "corollary3_value",
    "daehee_type1",
    "daehee_type2",
    "eq20_relation",
    "eq21_composition_check",
    "q_bernoulli",
    "q_bernoulli_recurrence",
    "qcd_direct",
    "qcd_poly_direct",
    "qcd_poly_theorem5",
    "qcd_theorem1",
    "qcd_theorem2",
    "theorem4_check",
]


def _default_guard(n_max: int) -> int:
    env = os.environ.get("QCD_GUARD")
    if env is not None and env.strip():
        return int(env)
    return n_max + 2


@dataclass(frozen=True)
class QFamilyConfig:
    n_max: int
    u_prec: int
    guard: int = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        if self.guard is None:
            object.__setattr__(self, "guard", _default_guard(self.n_max))
        if self.n_max < 0:
            raise ValueError("n_max must be >= 0")
        if self.u_prec < 1:
            raise ValueError("u_prec must be >= 1")
        if self.guard < self.n_max:
            raise ValueError(f"guard {self.guard} < n_max {self.n_max}")

    @property
    def work_prec(self) -> int:
        return self.u_prec + self.guard


class XPoly:
    """Polynomial in a formal ``x`` with :class:`USeries` coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = list(coeffs)
        if not cs:
            raise ValueError("XPoly needs at least one coefficient")
        while len(cs) > 1 and cs[-1].is_zero():
            cs.pop()
        precs = {c.prec for c in cs}
        if len(precs) != 1:
            p = min(precs)
            cs = [c.truncate(p) for c in cs]
        self.coeffs = tuple(cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def prec(self) -> int:
        return self.coeffs[0].prec

    def __getitem__(self, l: int) -> USeries:
        if l > self.degree:
            return USeries.zero(self.prec)
        return self.coeffs[l]

    def truncate(self, prec: int) -> "XPoly":
        return XPoly([c.truncate(prec) for c in self.coeffs])

    def at(self, x) -> USeries:
        """Substitute a rational value for ``x``."""
        x = as_rational(x)
        acc = USeries.zero(self.prec)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other) -> bool:
        if isinstance(other, XPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def to_json(self) -> dict:
        return {"degree": self.degree, "coeffs": [c.to_json() for c in self.coeffs]}

    def __repr__(self) -> str:
        return f"XPoly(degree={self.degree}, prec={self.prec})"


@dataclass(frozen=True)
class CheckReport:
    name: str
    index: int
    passed: bool
    detail: str = ""


def _check(cfg: QFamilyConfig, n: int) -> None:
    if not 0 <= n <= cfg.n_max:
        raise IndexOutOfRange(f"n = {n} outside 0..{cfg.n_max}")


def _deliver(value: USeries, cfg: QFamilyConfig) -> USeries:
    if value.prec < cfg.u_prec:
        raise InsufficientPrecision(
            f"only {value.prec} u-orders survived, {cfg.u_prec} requested; raise the guard"
        )
    return value.truncate(cfg.u_prec)


# --- generating-function expansions (memoized per order / precision) ------

@lru_cache(maxsize=None)
def _consts(prec: int):
    u = USeries([0, 1], prec)
    q = USeries([1, 1], prec)
    return u, q, u_log_ratio_constant(prec)


@lru_cache(maxsize=None)
def _bernoulli_egf(order: int, prec: int) -> TSeries:
    """Raw t-coefficients of ``((q-1) + L t)/(q e^t - 1)``."""
    u, q, L = _consts(prec)
    num = TSeries([u, L] + [Fraction(0)] * (order - 1)) if order >= 1 else TSeries([u])
    den = ts_exp(order).map(lambda c: q * c) - 1
    return gf_solve_u_pivot(num, den)


@lru_cache(maxsize=None)
def _qcd_gf(order: int, prec: int) -> TSeries:
    """Raw t-coefficients of ``(q-1 + L/2 log(1-4t))/(q sqrt(1-4t) - 1)``."""
    u, q, L = _consts(prec)
    num = ts_log_one_minus_4t(order).map(lambda c: L * (c / 2)) + u
    den = ts_sqrt_one_minus_4t(order).map(lambda c: q * c) - 1
    return gf_solve_u_pivot(num, den)


@lru_cache(maxsize=None)
def _daehee_gf(kind: int, lam: Fraction, order: int, prec: int) -> TSeries:
    """x-free factor of the two Daehee-type generating functions.

    kind 1: ``(2(q-1) + lam L log(1+t)) / (q^2 (1+t)^lam - 1)``
    kind 2: ``((q-1) + lam L log(1+t)) / (q (1+t)^lam - 1)``
    """
    u, q, L = _consts(prec)
    lead, qpow = (2 * u, q * q) if kind == 1 else (u, q)
    num = ts_log_one_plus_t(order).map(lambda c: L * (lam * c)) + lead
    den = ts_binomial(lam, order).map(lambda c: qpow * c) - 1
    return gf_solve_u_pivot(num, den)


@lru_cache(maxsize=None)
def _log_power_table(kind: str, order: int) -> tuple[TSeries, ...]:
    """``(log(1+t))^l / l!`` or ``(log(1-4t))^l / l!`` for ``l = 0..order``."""
    base = ts_log_one_plus_t(order) if kind == "1+t" else ts_log_one_minus_4t(order)
    out = [TSeries.constant(1, order)]
    for l in range(1, order + 1):
        out.append(out[-1] * base * Fraction(1, l))
    return tuple(out)


def _times_exp_x(gf: TSeries, n: int, kind: str, scale: Fraction) -> XPoly:
    """t^n coefficient of ``gf(t) * exp(scale * x * log(...))`` as a polynomial in x."""
    powers = _log_power_table(kind, n)
    coeffs = []
    for l in range(n + 1):
        acc = None
        for k in range(l, n + 1):
            c = powers[l][k]
            if c:
                term = gf[n - k] * (c * scale**l)
                acc = term if acc is None else acc + term
        coeffs.append(acc if acc is not None else USeries.zero(gf[n].prec))
    return XPoly(coeffs)


# --- q-Bernoulli ----------------------------------------------------------

def q_bernoulli(n: int, cfg: QFamilyConfig) -> USeries:
    _check(cfg, n)
    raw = _bernoulli_egf(cfg.n_max, cfg.work_prec)
    return _deliver(raw[n] * factorial(n), cfg)


@lru_cache(maxsize=None)
def _bernoulli_by_recurrence(n_max: int, prec: int) -> tuple[USeries, ...]:
    u, q, L = _consts(prec)
    bs: list[USeries] = []
    for n in range(n_max + 1):
        rhs = u if n == 0 else (L if n == 1 else USeries.zero(prec))
        acc = rhs
        for k in range(n):
            acc = acc - q * bs[k] * comb(n, k)
        bs.append(acc.divide_by_u())
    return tuple(bs)


def q_bernoulli_recurrence(n: int, cfg: QFamilyConfig) -> USeries:
    """``(q-1) B_n = rhs_n - q sum_{k<n} C(n,k) B_k`` with exact division by ``u``."""
    _check(cfg, n)
    return _deliver(_bernoulli_by_recurrence(cfg.n_max, cfg.work_prec)[n], cfg)


# --- Daehee-type families -------------------------------------------------

def daehee_type1(n: int, lam, cfg: QFamilyConfig) -> XPoly:
    """``D_{n,q}(x|lam)``, exponential normalization (``t^n/n!``) applied."""
    _check(cfg, n)
    lam = as_rational(lam)
    gf = _daehee_gf(1, lam, cfg.n_max, cfg.work_prec)
    poly = _times_exp_x(gf, n, "1+t", lam)
    return XPoly([_deliver(c * factorial(n), cfg) for c in poly.coeffs])


def daehee_type2(n: int, lam, cfg: QFamilyConfig) -> XPoly:
    """``D_{n,q,lam}(x)``, exponential normalization applied."""
    _check(cfg, n)
    lam = as_rational(lam)
    gf = _daehee_gf(2, lam, cfg.n_max, cfg.work_prec)
    poly = _times_exp_x(gf, n, "1+t", Fraction(1))
    return XPoly([_deliver(c * factorial(n), cfg) for c in poly.coeffs])


def _daehee1_number_raw(n: int, cfg: QFamilyConfig) -> USeries:
    # x = 0 value of D_{n,q}(x|1) at working precision
    return _daehee_gf(1, Fraction(1), cfg.n_max, cfg.work_prec)[n] * factorial(n)


# --- q-Catalan-Daehee numbers --------------------------------------------

def qcd_direct(n: int, cfg: QFamilyConfig) -> USeries:
    _check(cfg, n)
    return _deliver(_qcd_gf(cfg.n_max, cfg.work_prec)[n], cfg)


def qcd_theorem1(n: int, cfg: QFamilyConfig) -> USeries:
    """From the ``(q,1)``-Daehee numbers and Catalan numbers."""
    _check(cfg, n)
    prec = cfg.work_prec
    u, q, _ = _consts(prec)
    if n == 0:
        return _deliver(USeries.constant(1, prec), cfg)
    two_q = q + 1
    val = two_q * _daehee1_number_raw(n, cfg) * Fraction((-4) ** n, 2 * factorial(n))
    for m in range(n):
        j = n - m - 1
        val = val - q * _daehee1_number_raw(j, cfg) * (Fraction((-4) ** j, factorial(j)) * catalan(m))
    return _deliver(val, cfg)


def qcd_theorem2(n: int, cfg: QFamilyConfig) -> USeries:
    """From q-Bernoulli numbers and signed Stirling numbers of the first kind."""
    _check(cfg, n)
    acc = USeries.zero(cfg.u_prec)
    for m in range(n + 1):
        s = stirling_first(n, m)
        if s:
            acc = acc + q_bernoulli(m, cfg) * (2 ** (2 * n - m) * s)
    return acc * Fraction((-1) ** n, factorial(n))


def corollary3_value(n: int, cfg: QFamilyConfig) -> USeries:
    """Integral of ``binom(x/2, n)``: checked as ``(-1)^n 4^-n d_{n,q}`` and as a Stirling sum."""
    _check(cfg, n)
    from_qcd = qcd_direct(n, cfg) * Fraction((-1) ** n, 4**n)
    from_moments = USeries.zero(cfg.u_prec)
    for m in range(n + 1):
        s = stirling_first(n, m)
        if s:
            from_moments = from_moments + q_bernoulli(m, cfg) * Fraction(s, 2**m)
    from_moments = from_moments * Fraction(1, factorial(n))
    if from_qcd != from_moments:
        raise IdentityViolation(f"half-binomial integral routes disagree at n={n}")
    return from_qcd


def eq20_relation(n: int, cfg: QFamilyConfig, strict: bool = True) -> CheckReport:
    """``d_{n,q} = (-1)^n 4^n / n! * D_{n,q,1/2}``."""
    _check(cfg, n)
    lhs = qcd_direct(n, cfg)
    rhs = daehee_type2(n, Fraction(1, 2), cfg)[0] * Fraction((-4) ** n, factorial(n))
    ok = lhs == rhs
    if strict and not ok:
        raise IdentityViolation(f"d_(n,q) vs half-Daehee relation fails at n={n}")
    return CheckReport("eq20", n, ok, "" if ok else f"lhs={lhs!r} rhs={rhs!r}")


def theorem4_check(n: int, cfg: QFamilyConfig, strict: bool = True) -> CheckReport:
    """``B_{n,q} = sum_k (-1)^k 2^(n-2k) k! S2(n,k) d_{k,q}``."""
    _check(cfg, n)
    rhs = USeries.zero(cfg.u_prec)
    for k in range(n + 1):
        s = stirling_second(n, k)
        if s:
            rhs = rhs + qcd_direct(k, cfg) * (Fraction((-1) ** k * 2**n, 4**k) * factorial(k) * s)
    lhs = q_bernoulli(n, cfg)
    ok = lhs == rhs
    if strict and not ok:
        raise IdentityViolation(f"Stirling-2 inversion fails at n={n}")
    return CheckReport("thm4", n, ok, "" if ok else f"lhs={lhs!r} rhs={rhs!r}")


def eq21_composition(order: int, cfg: QFamilyConfig) -> tuple[TSeries, TSeries]:
    """``sum_k d_{k,q} ((1-e^{2t})/4)^k`` and ``sum_n B_{n,q} t^n/n!``, both to ``order``."""
    if not 0 <= order <= cfg.n_max:
        raise IndexOutOfRange(f"order {order} outside 0..{cfg.n_max}")
    d = TSeries([qcd_direct(k, cfg) for k in range(order + 1)])
    inner = (ts_exp(order, 2) - 1) * Fraction(-1, 4)
    composed = ts_compose(d, inner)
    egf = TSeries([q_bernoulli(n, cfg) * Fraction(1, factorial(n)) for n in range(order + 1)])
    return composed, egf


def eq21_composition_check(order: int, cfg: QFamilyConfig, strict: bool = True) -> CheckReport:
    composed, egf = eq21_composition(order, cfg)
    bad = [n for n in range(order + 1) if composed[n] != egf[n]]
    if strict and bad:
        raise IdentityViolation(f"composition identity fails at t^{bad[0]}")
    return CheckReport("eq21", order, not bad, "" if not bad else f"mismatch at t-orders {bad}")


# --- q-Catalan-Daehee polynomials ----------------------------------------

def qcd_poly_direct(n: int, cfg: QFamilyConfig) -> XPoly:
    """Coefficient of ``t^n`` in the number generating function times ``(1-4t)^(x/2)``."""
    _check(cfg, n)
    gf = _qcd_gf(cfg.n_max, cfg.work_prec)
    poly = _times_exp_x(gf, n, "1-4t", Fraction(1, 2))
    return XPoly([_deliver(c, cfg) for c in poly.coeffs])


def qcd_poly_theorem5(n: int, cfg: QFamilyConfig, strict: bool = True) -> XPoly:
    """``sum_l (sum_{m>=l} (-1)^m 2^(2m-l)/m! S1(m,l) d_{n-m,q}) x^l``.

    With ``strict`` the result is compared against :func:`qcd_poly_direct`.
    """
    _check(cfg, n)
    coeffs = []
    for l in range(n + 1):
        acc = USeries.zero(cfg.u_prec)
        for m in range(l, n + 1):
            s = stirling_first(m, l)
            if s:
                acc = acc + qcd_direct(n - m, cfg) * Fraction((-1) ** m * 4**m * s, 2**l * factorial(m))
        coeffs.append(acc)
    poly = XPoly(coeffs)
    if strict and poly != qcd_poly_direct(n, cfg):
        raise IdentityViolation(f"polynomial routes disagree at n={n}")
    return poly


def describe(value: USeries) -> str:
    return " ".join(format_rational(c) for c in value.coeffs)
