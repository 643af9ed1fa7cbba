"""Truncated power series in ``t`` and the u-pivot generating-function solver.

Coefficients are either :class:`~fractions.Fraction` or
:class:`~qcd.exact_arith.USeries`; the arithmetic is written against the
Python operators so both rings share one code path. Raw ``t^n``
coefficients are stored; ``t^n/n!`` normalizations are the caller's job.
"""
from __future__ import annotations

from fractions import Fraction
from math import comb, factorial
from typing import Sequence

from .combinatorics import catalan
from .errors import InsufficientPrecision, NonPivotDenominator, NonzeroInnerConstant, NotDivisible
from .exact_arith import USeries, as_rational, format_rational, parse_rational

__all__ = [
    "TSeries",
    "classical_catalan_daehee_gf",
    "gf_solve_u_pivot",
    "ts_binomial",
    "ts_compose",
    "ts_exp",
    "ts_log_one_plus_t",
    "ts_log_one_minus_4t",
    "ts_sqrt_one_minus_4t",
]

_ZERO = Fraction(0)


def _is_zero(c) -> bool:
    if isinstance(c, USeries):
        return c.is_zero()
    return c == 0


class TSeries:
    """``c_0 + c_1 t + ... + c_order t^order + O(t^(order+1))``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence):
        if not coeffs:
            raise ValueError("a TSeries needs at least the constant coefficient")
        self.coeffs = tuple(c if isinstance(c, USeries) else as_rational(c) for c in coeffs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def ring(self) -> str:
        return "useries" if any(isinstance(c, USeries) for c in self.coeffs) else "rational"

    def __getitem__(self, n: int):
        return self.coeffs[n]

    def __len__(self) -> int:
        return len(self.coeffs)

    def truncate(self, order: int) -> "TSeries":
        if order > self.order:
            raise ValueError(f"cannot extend order {self.order} to {order}")
        return TSeries(self.coeffs[: order + 1])

    def map(self, fn) -> "TSeries":
        return TSeries([fn(c) for c in self.coeffs])

    @classmethod
    def constant(cls, value, order: int) -> "TSeries":
        return cls([value] + [_ZERO] * order)

    @classmethod
    def monomial(cls, k: int, order: int, coeff=1) -> "TSeries":
        cs = [_ZERO] * (order + 1)
        if k <= order:
            cs[k] = as_rational(coeff) if not isinstance(coeff, USeries) else coeff
        return cls(cs)

    def __add__(self, other):
        if isinstance(other, TSeries):
            n = min(len(self), len(other))
            return TSeries([self.coeffs[i] + other.coeffs[i] for i in range(n)])
        if isinstance(other, (int, Fraction, USeries)):
            return TSeries((self.coeffs[0] + other,) + self.coeffs[1:])
        return NotImplemented

    __radd__ = __add__

    def __neg__(self) -> "TSeries":
        return TSeries([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, USeries)):
            return TSeries([c * other for c in self.coeffs])
        if not isinstance(other, TSeries):
            return NotImplemented
        n = min(len(self), len(other))
        a, b = self.coeffs, other.coeffs
        out = []
        for k in range(n):
            acc = None
            for i in range(k + 1):
                if _is_zero(a[i]) or _is_zero(b[k - i]):
                    continue
                term = a[i] * b[k - i]
                acc = term if acc is None else acc + term
            out.append(_ZERO if acc is None else acc)
        return TSeries(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "TSeries":
        if k < 0:
            raise ValueError("negative powers need ts inversion")
        result = TSeries.constant(1, self.order)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, TSeries):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def invert(self) -> "TSeries":
        """Ordinary inversion; the constant coefficient must be invertible in its ring."""
        a = self.coeffs
        inv0 = 1 / a[0] if not isinstance(a[0], USeries) else a[0].invert()
        out = [inv0]
        for k in range(1, len(a)):
            acc = None
            for j in range(1, k + 1):
                if _is_zero(a[j]):
                    continue
                term = a[j] * out[k - j]
                acc = term if acc is None else acc + term
            out.append(_ZERO if acc is None else -(acc * inv0))
        return TSeries(out)

    def to_json(self) -> dict:
        ring = self.ring
        if ring == "rational":
            coeffs = [format_rational(c) for c in self.coeffs]
        else:
            coeffs = [c.to_json() if isinstance(c, USeries) else {"prec": None, "coeffs": [format_rational(c)]}
                      for c in self.coeffs]
        return {"order": self.order, "ring": ring, "coeffs": coeffs}

    @classmethod
    def from_json(cls, data: dict) -> "TSeries":
        if data["ring"] == "rational":
            cs = [parse_rational(c) for c in data["coeffs"]]
        else:
            cs = [USeries.from_json(c) if c.get("prec") is not None else parse_rational(c["coeffs"][0])
                  for c in data["coeffs"]]
        if len(cs) != data["order"] + 1:
            raise ValueError("order does not match coefficient count")
        return cls(cs)

    def __repr__(self) -> str:
        return f"TSeries(order={self.order}, ring={self.ring}, coeffs={list(self.coeffs)!r})"


def ts_compose(f: TSeries, g: TSeries) -> TSeries:
    """``f(g(t))`` by Horner's rule, truncated at ``min(f.order, g.order)``."""
    if not _is_zero(g.coeffs[0]):
        raise NonzeroInnerConstant("inner series must vanish at t = 0")
    order = min(f.order, g.order)
    g = g.truncate(order)
    acc = TSeries.constant(f.coeffs[order], order)
    for k in range(order - 1, -1, -1):
        acc = acc * g + f.coeffs[k]
    return acc


def ts_sqrt_one_minus_4t(order: int) -> TSeries:
    """``sqrt(1-4t) = 1 - 2 * sum_m C_m t^(m+1)``."""
    if order < 0:
        raise ValueError("order must be >= 0")
    return TSeries([Fraction(1)] + [-2 * catalan(m) for m in range(order)])


def ts_log_one_minus_4t(order: int) -> TSeries:
    if order < 0:
        raise ValueError("order must be >= 0")
    return TSeries([_ZERO] + [Fraction(-(4**k), k) for k in range(1, order + 1)])


def ts_log_one_plus_t(order: int) -> TSeries:
    return TSeries([_ZERO] + [Fraction((-1) ** (k + 1), k) for k in range(1, order + 1)])


def ts_exp(order: int, scale=1) -> TSeries:
    """``exp(scale * t)``."""
    if order < 0:
        raise ValueError("order must be >= 0")
    s = as_rational(scale)
    return TSeries([s**k / factorial(k) for k in range(order + 1)])


def ts_binomial(exponent, order: int) -> TSeries:
    """``(1+t)^exponent`` for rational ``exponent``."""
    a = as_rational(exponent)
    out = [Fraction(1)]
    c = Fraction(1)
    for k in range(1, order + 1):
        c = c * (a - (k - 1)) / k
        out.append(c)
    return TSeries(out)


def sqrt_one_plus_t_printed(m: int) -> Fraction:
    """Coefficient of ``t^m`` (``m >= 1``) in the closed binomial-type form of ``sqrt(1+t)``."""
    if m < 1:
        raise ValueError("the closed form is only read for m >= 1")
    return Fraction((-1) ** (m - 1) * comb(2 * m, m), 4**m * (2 * m - 1))


def classical_catalan_daehee_gf(order: int) -> TSeries:
    """Expand ``(1/2)log(1-4t) / (sqrt(1-4t) - 1)`` over the rationals.

    Both numerator and denominator vanish at ``t = 0``; one factor of ``t``
    is cancelled before ordinary inversion.
    """
    num = ts_log_one_minus_4t(order + 1) * Fraction(1, 2)
    den = ts_sqrt_one_minus_4t(order + 1) - 1
    num_over_t = TSeries(num.coeffs[1:])
    den_over_t = TSeries(den.coeffs[1:])
    return num_over_t * den_over_t.invert()


def _u_pivot_unit(c0) -> USeries:
    if not isinstance(c0, USeries):
        raise NonPivotDenominator("denominator constant term must be a u-series")
    try:
        w = c0.divide_by_u()
    except NotDivisible as exc:
        raise NonPivotDenominator("denominator constant term is not divisible by u") from exc
    if w.prec == 0 or w.coeffs[0] == 0:
        raise NonPivotDenominator("denominator constant term is not u times a unit")
    return w


def gf_solve_u_pivot(num: TSeries, den: TSeries, guard: int | None = None, *,
                     min_prec: int = 1, check: bool = True) -> TSeries:
    """Solve ``den * X = num`` when ``den[0] = u * (unit)``.

    Coefficient ``n`` is ``(num[n] - sum_{k>=1} den[k] X[n-k]) / (u w)``; the
    bracket must be exactly divisible by ``u`` at every step, which is
    verified. Each step costs one u-order, so ``X[n]`` carries precision
    ``P - n - 1`` where ``P`` is the input precision; the solver refuses when
    that would fall below ``min_prec``. ``guard`` (if given) is the padding the
    caller claims to have supplied and is checked against ``num.order + 1``.

    With ``check`` the product ``den * X`` is recomputed and compared with
    ``num`` on every known order.
    """
    order = min(num.order, den.order)
    w = _u_pivot_unit(den.coeffs[0])
    w_inv = w.invert()
    in_prec = min(c.prec for c in num.coeffs[: order + 1] + den.coeffs[: order + 1] if isinstance(c, USeries))
    if guard is not None and guard < order + 1:
        raise InsufficientPrecision(f"guard {guard} cannot absorb {order + 1} u-divisions")
    if in_prec - (order + 1) < min_prec:
        raise InsufficientPrecision(
            f"input u-precision {in_prec} delivers {in_prec - order - 1} < {min_prec} at t-order {order}"
        )
    xs: list[USeries] = []
    for n in range(order + 1):
        resid = num.coeffs[n]
        for k in range(1, n + 1):
            if not _is_zero(den.coeffs[k]):
                resid = resid - den.coeffs[k] * xs[n - k]
        if not isinstance(resid, USeries):
            resid = USeries.constant(resid, in_prec)
        try:
            quotient = resid.divide_by_u()
        except NotDivisible as exc:
            raise NotDivisible(f"residue at t^{n} is not divisible by u: {exc}") from exc
        xs.append(quotient * w_inv)
    solution = TSeries(xs)
    if check:
        prod = den.truncate(order) * solution
        for n in range(order + 1):
            lhs, rhs = prod.coeffs[n], num.coeffs[n]
            p = lhs.prec
            rhs_cut = rhs.truncate(p) if isinstance(rhs, USeries) else USeries.constant(rhs, p)
            if lhs != rhs_cut:
                raise NotDivisible(f"re-multiplication check failed at t^{n}")
    return solution
