"""Exact rationals and truncated power series in ``u = q - 1``.

Every "function of q" used by the package lives in ``Q[[u]]/(u^prec)``.
The q-analogue prefactor ``(q-1)/log q`` is a unit of this ring, so no
logarithm of a number is ever evaluated in the exact engine.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable

from .errors import InsufficientPrecision, NonUnit, NotDivisible

Rational = Fraction

__all__ = [
    "Rational",
    "USeries",
    "as_rational",
    "format_rational",
    "parse_rational",
    "u_log_ratio_constant",
]


def as_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, _RationalABC)):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def format_rational(value: Fraction) -> str:
    """``-7/3`` style; the denominator is dropped when it is 1."""
    value = as_rational(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: str) -> Fraction:
    text = text.strip().replace("−", "-")
    if "." in text or "e" in text.lower():
        raise ValueError(f"decimal/float literal not accepted: {text!r}")
    return Fraction(text)


class USeries:
    """Truncated power series ``c_0 + c_1 u + ... + c_{prec-1} u^{prec-1} + O(u^prec)``.

    ``prec`` is the number of known u-orders. Binary operations return
    ``min`` of the operand precisions; :meth:`divide_by_u` costs one order.
    Plain ints and fractions act as exact constants (infinite precision).
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable, prec: int | None = None):
        cs = tuple(as_rational(c) for c in coeffs)
        if prec is not None:
            if prec < 0:
                raise ValueError("prec must be nonnegative")
            cs = cs[:prec] + (Fraction(0),) * (prec - len(cs))
        self.coeffs = cs

    @classmethod
    def _raw(cls, coeffs: tuple) -> "USeries":
        obj = object.__new__(cls)
        obj.coeffs = coeffs
        return obj

    @classmethod
    def constant(cls, value, prec: int) -> "USeries":
        return cls([value], prec)

    @classmethod
    def zero(cls, prec: int) -> "USeries":
        return cls._raw((Fraction(0),) * prec)

    @classmethod
    def q(cls, prec: int) -> "USeries":
        """``q = 1 + u``."""
        return cls([1, 1], prec)

    @property
    def prec(self) -> int:
        return len(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i]

    def truncate(self, prec: int) -> "USeries":
        if prec > self.prec:
            raise InsufficientPrecision(f"requested u-precision {prec} > known {self.prec}")
        return USeries._raw(self.coeffs[:prec])

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def valuation(self) -> int | None:
        """Index of the first nonzero coefficient, ``None`` if all known ones vanish."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return None

    # ring operations -----------------------------------------------------

    def _coerce(self, other) -> "USeries | None":
        if isinstance(other, USeries):
            return other
        if isinstance(other, (int, Fraction)):
            return USeries._raw((Fraction(other),) + (Fraction(0),) * (self.prec - 1)) if self.prec else USeries._raw(())
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = min(self.prec, o.prec)
        a, b = self.coeffs, o.coeffs
        return USeries._raw(tuple(a[i] + b[i] for i in range(n)))

    __radd__ = __add__

    def __neg__(self) -> "USeries":
        return USeries._raw(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return USeries._raw(tuple(c * other for c in self.coeffs))
        if not isinstance(other, USeries):
            return NotImplemented
        n = min(self.prec, other.prec)
        a, b = self.coeffs, other.coeffs
        # skip leading zeros of either factor; common for multiples of u
        za = next((i for i in range(n) if a[i]), n)
        zb = next((i for i in range(n) if b[i]), n)
        out = [Fraction(0)] * n
        for i in range(za, n - zb):
            ai = a[i]
            if not ai:
                continue
            for j in range(zb, n - i):
                bj = b[j]
                if bj:
                    out[i + j] += ai * bj
        return USeries._raw(tuple(out))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            return USeries._raw(tuple(c / other for c in self.coeffs))
        if isinstance(other, USeries):
            return self * other.invert()
        return NotImplemented

    def __pow__(self, k: int) -> "USeries":
        if k < 0:
            return self.invert() ** (-k)
        result = USeries.constant(1, self.prec)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, USeries):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def agrees_with(self, other: "USeries", prec: int | None = None) -> bool:
        """Coefficientwise equality on the first ``prec`` orders (default: common precision)."""
        n = min(self.prec, other.prec) if prec is None else prec
        if n > self.prec or n > other.prec:
            raise InsufficientPrecision(f"cannot compare {n} orders")
        return self.coeffs[:n] == other.coeffs[:n]

    def invert(self) -> "USeries":
        a = self.coeffs
        n = len(a)
        if n == 0:
            return self
        if a[0] == 0:
            raise NonUnit("constant coefficient is zero")
        inv0 = 1 / a[0]
        out = [inv0]
        for k in range(1, n):
            s = sum((a[j] * out[k - j] for j in range(1, k + 1) if a[j]), Fraction(0))
            out.append(-s * inv0)
        return USeries._raw(tuple(out))

    def divide_by_u(self) -> "USeries":
        if self.prec == 0:
            raise InsufficientPrecision("no known orders left to divide by u")
        if self.coeffs[0] != 0:
            raise NotDivisible(f"constant coefficient {format_rational(self.coeffs[0])} is nonzero")
        return USeries._raw(self.coeffs[1:])

    def classical_limit(self) -> Fraction:
        """Value at ``u = 0``, i.e. the ``q -> 1`` limit."""
        if self.prec == 0:
            raise InsufficientPrecision("series carries no known orders")
        return self.coeffs[0]

    def evaluate(self, u) -> Fraction:
        """Horner evaluation of the known part at a rational ``u``."""
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * u + c
        return acc

    # serialization -------------------------------------------------------

    def to_json(self) -> dict:
        return {"prec": self.prec, "coeffs": [format_rational(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> "USeries":
        coeffs = [parse_rational(c) for c in data["coeffs"]]
        if len(coeffs) != data["prec"]:
            raise ValueError("prec does not match number of coefficients")
        return cls(coeffs)

    def __repr__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if i == 0 else ("u" if i == 1 else f"u^{i}")
            coef = format_rational(c)
            terms.append(coef if not mono else (mono if c == 1 else f"{coef}*{mono}"))
        body = " + ".join(terms) or "0"
        return f"USeries({body} + O(u^{self.prec}))"


def u_log_ratio_constant(prec: int) -> USeries:
    """``L = (q-1)/log q = u/log(1+u)`` to ``prec`` orders.

    Obtained by inverting ``log(1+u)/u = sum (-1)^k u^k/(k+1)``.
    """
    if prec < 1:
        raise ValueError("prec must be >= 1")
    log_over_u = USeries([Fraction((-1) ** k, k + 1) for k in range(prec)])
    return log_over_u.invert()


def log_one_plus_u_over_u(prec: int) -> USeries:
    return USeries([Fraction((-1) ** k, k + 1) for k in range(prec)])

