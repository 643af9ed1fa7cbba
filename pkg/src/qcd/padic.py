"""Capped-relative p-adic numbers for odd primes.

A nonzero value is ``p^val * unit`` with ``unit`` known modulo ``p^digits``.
Two kinds of zero exist: the exact zero, and ``O(p^k)``, a value whose known
digits all cancelled (stored with ``digits = 0`` and ``val = k``).
"""
from __future__ import annotations

from fractions import Fraction
from functools import total_ordering

from .errors import DivisionByZero, PrecisionExhausted

__all__ = ["INF", "PadicNumber", "valuation_int"]

_EXACT_CAP = 40


def valuation_int(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


@total_ordering
class _Inf:
    def __lt__(self, other):
        return False

    def __eq__(self, other):
        return isinstance(other, _Inf)

    def __hash__(self):
        return 0

    def __repr__(self):
        return "inf"


INF = _Inf()


class PadicNumber:
    __slots__ = ("p", "val", "unit", "digits", "exact_zero")

    def __init__(self, p: int, val: int, unit: int, digits: int, *, exact_zero: bool = False):
        if p < 3 or p % 2 == 0:
            raise ValueError(f"p must be an odd prime, got {p}")
        self.p = p
        self.exact_zero = exact_zero
        if exact_zero:
            self.val, self.unit, self.digits = 0, 0, 0
            return
        if digits < 0:
            raise ValueError("digits must be nonnegative")
        if digits == 0:
            self.val, self.unit, self.digits = val, 0, 0
            return
        unit %= p**digits
        if unit % p == 0:
            raise ValueError("unit must be coprime to p")
        self.val, self.unit, self.digits = val, unit, digits

    # construction ---------------------------------------------------------

    @classmethod
    def zero(cls, p: int) -> "PadicNumber":
        return cls(p, 0, 0, 0, exact_zero=True)

    @classmethod
    def big_oh(cls, p: int, abs_prec: int) -> "PadicNumber":
        return cls(p, abs_prec, 0, 0)

    @classmethod
    def from_int(cls, n: int, p: int, digits: int) -> "PadicNumber":
        if n == 0:
            return cls.zero(p)
        v = valuation_int(n, p)
        return cls(p, v, n // p**v, digits)

    @classmethod
    def from_rational(cls, x, p: int, digits: int) -> "PadicNumber":
        x = Fraction(x)
        if x == 0:
            return cls.zero(p)
        a, b = x.numerator, x.denominator
        va, vb = valuation_int(a, p), valuation_int(b, p)
        a //= p**va
        b //= p**vb
        mod = p**digits
        return cls(p, va - vb, a * pow(b, -1, mod) % mod, digits)

    @classmethod
    def from_residue(cls, r: int, p: int, abs_prec: int) -> "PadicNumber":
        """Value known modulo ``p^abs_prec``; an all-zero residue gives ``O(p^abs_prec)``."""
        r %= p**abs_prec
        if r == 0:
            return cls.big_oh(p, abs_prec)
        v = valuation_int(r, p)
        return cls(p, v, r // p**v, abs_prec - v)

    # introspection --------------------------------------------------------

    @property
    def abs_prec(self):
        if self.exact_zero:
            return INF
        return self.val + self.digits

    def is_zero(self) -> bool:
        return self.exact_zero or self.digits == 0

    def valuation(self):
        if self.exact_zero:
            return INF
        return self.val

    def residue(self, abs_prec: int) -> int:
        """Representative modulo ``p^abs_prec``; needs ``val >= 0`` and enough digits."""
        if self.exact_zero:
            return 0
        if abs_prec > self.abs_prec:
            raise PrecisionExhausted(f"value known only to O(p^{self.abs_prec})")
        if self.val < 0:
            raise ValueError("negative valuation has no residue in Z_p")
        return (self.unit * self.p**self.val) % self.p**abs_prec

    def _same_p(self, other: "PadicNumber") -> None:
        if self.p != other.p:
            raise ValueError(f"mixed primes {self.p} and {other.p}")

    def _lift(self, other) -> "PadicNumber":
        if isinstance(other, PadicNumber):
            self._same_p(other)
            return other
        if isinstance(other, (int, Fraction)):
            # exact constants are carried to at least our own absolute precision
            x = Fraction(other)
            if x == 0:
                return PadicNumber.zero(self.p)
            v = valuation_int(x.numerator, self.p) - valuation_int(x.denominator, self.p)
            cap = _EXACT_CAP if self.exact_zero else self.abs_prec
            return PadicNumber.from_rational(x, self.p, max(1, cap - v))
        raise TypeError(f"cannot combine PadicNumber with {type(other).__name__}")

    # arithmetic -----------------------------------------------------------

    def __add__(self, other):
        o = self._lift(other)
        if self.exact_zero:
            return o
        if o.exact_zero:
            return self
        p = self.p
        abs_prec = min(self.abs_prec, o.abs_prec)
        v = min(self.val, o.val)
        if abs_prec <= v:
            return PadicNumber.big_oh(p, abs_prec)
        width = abs_prec - v
        s = (self.unit * p ** (self.val - v) + o.unit * p ** (o.val - v)) % p**width
        return PadicNumber.from_residue(s, p, width)._shift(v)

    __radd__ = __add__

    def _shift(self, k: int) -> "PadicNumber":
        if self.digits == 0:
            return PadicNumber.big_oh(self.p, self.val + k)
        return PadicNumber(self.p, self.val + k, self.unit, self.digits)

    def __neg__(self):
        if self.is_zero():
            return self
        return PadicNumber(self.p, self.val, -self.unit, self.digits)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if self.exact_zero or o.exact_zero:
            return PadicNumber.zero(self.p)
        if self.digits == 0 or o.digits == 0:
            # O(p^a) * x is O(p^(a + v(x)))
            return PadicNumber.big_oh(self.p, self.val + o.val)
        d = min(self.digits, o.digits)
        return PadicNumber(self.p, self.val + o.val, self.unit * o.unit, d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o.exact_zero:
            raise DivisionByZero("division by exact p-adic zero")
        if o.digits == 0:
            raise PrecisionExhausted(f"divisor is O({self.p}^{o.val}); no digits known")
        if self.exact_zero:
            return self
        if self.digits == 0:
            return PadicNumber.big_oh(self.p, self.val - o.val)
        d = min(self.digits, o.digits)
        mod = self.p**d
        return PadicNumber(self.p, self.val - o.val, self.unit * pow(o.unit, -1, mod), d)

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __pow__(self, k: int) -> "PadicNumber":
        if k < 0:
            return 1 / (self**-k)
        if k == 0:
            if self.is_zero() and not self.exact_zero:
                raise PrecisionExhausted("0-th power of an undetermined value")
            return PadicNumber(self.p, 0, 1, max(self.digits, 1))
        if self.exact_zero:
            return self
        if self.digits == 0:
            return PadicNumber.big_oh(self.p, self.val * k)
        mod = self.p**self.digits
        return PadicNumber(self.p, self.val * k, pow(self.unit, k, mod), self.digits)

    # comparison -----------------------------------------------------------

    def agreement(self, other):
        """Valuation of ``self - other``, capped at the common absolute precision."""
        d = self - self._lift(other)
        if d.exact_zero:
            return INF
        return d.abs_prec if d.digits == 0 else d.val

    def same_digits(self, other: "PadicNumber", abs_prec: int | None = None) -> bool:
        """Identical base-p expansions below ``p^abs_prec`` (default: common precision)."""
        self._same_p(other)
        common = min(self.abs_prec, other.abs_prec) if abs_prec is None else abs_prec
        if common is INF:
            return True
        if common > self.abs_prec or common > other.abs_prec:
            return False
        return self.agreement(other) >= common

    def __eq__(self, other) -> bool:
        if not isinstance(other, PadicNumber):
            return NotImplemented
        return (self.p, self.exact_zero, self.val, self.unit, self.digits) == (
            other.p, other.exact_zero, other.val, other.unit, other.digits)

    def __hash__(self):
        return hash((self.p, self.exact_zero, self.val, self.unit, self.digits))

    def norm(self) -> Fraction:
        """``|x|_p = p^-val``, normalized so ``|p|_p = 1/p``."""
        if self.is_zero():
            return Fraction(0)
        return Fraction(1, self.p**self.val) if self.val >= 0 else Fraction(self.p ** (-self.val))

    def truncated(self, digits: int) -> "PadicNumber":
        if self.is_zero() or digits >= self.digits:
            return self
        return PadicNumber(self.p, self.val, self.unit, digits)

    def base_p_digits(self) -> list[int]:
        out, u = [], self.unit
        for _ in range(self.digits):
            u, r = divmod(u, self.p)
            out.append(r)
        return out

    def to_json(self) -> dict:
        if self.exact_zero:
            return {"p": self.p, "val": None, "unit_base_p_digits": [], "digits": 0}
        return {"p": self.p, "val": self.val, "unit_base_p_digits": self.base_p_digits(), "digits": self.digits}

    @classmethod
    def from_json(cls, data: dict) -> "PadicNumber":
        p = data["p"]
        if data["val"] is None:
            return cls.zero(p)
        unit = sum(d * p**i for i, d in enumerate(data["unit_base_p_digits"]))
        return cls(p, data["val"], unit, data["digits"])

    def __repr__(self) -> str:
        if self.exact_zero:
            return f"PadicNumber(0, p={self.p})"
        if self.digits == 0:
            return f"PadicNumber(O({self.p}^{self.val}))"
        return f"PadicNumber({self.p}^{self.val} * {self.unit} + O({self.p}^{self.abs_prec}))"
