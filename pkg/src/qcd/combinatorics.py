"""Integer and rational tables: Catalan, Stirling, classical Bernoulli and
classical Catalan-Daehee numbers (the ``q -> 1`` oracles)."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from .errors import IndexOutOfRange

__all__ = [
    "StirlingTable",
    "catalan",
    "classical_bernoulli",
    "classical_catalan_daehee",
    "falling_factorial_coeffs",
    "stirling_first",
    "stirling_first_table",
    "stirling_second",
    "stirling_second_table",
]


def catalan(m: int) -> Fraction:
    if m < 0:
        raise IndexOutOfRange(f"Catalan index {m} < 0")
    return Fraction(comb(2 * m, m), m + 1)


@dataclass(frozen=True)
class StirlingTable:
    kind: str  # "first-signed" or "second"
    rows: tuple[tuple[int, ...], ...]

    @property
    def n_max(self) -> int:
        return len(self.rows) - 1

    def __call__(self, n: int, m: int) -> int:
        if not (0 <= m <= n <= self.n_max):
            raise IndexOutOfRange(f"S({n},{m}) outside 0 <= m <= n <= {self.n_max}")
        return self.rows[n][m]


@lru_cache(maxsize=None)
def stirling_first_table(n_max: int) -> StirlingTable:
    """Signed: ``(x)_n = sum_m S1(n,m) x^m``; ``S1(n+1,m) = S1(n,m-1) - n S1(n,m)``."""
    rows = [(1,)]
    for n in range(n_max):
        prev = rows[-1]
        row = [0] * (n + 2)
        for m in range(n + 2):
            left = prev[m - 1] if m >= 1 else 0
            here = prev[m] if m <= n else 0
            row[m] = left - n * here
        rows.append(tuple(row))
    return StirlingTable("first-signed", tuple(rows))


@lru_cache(maxsize=None)
def stirling_second_table(n_max: int) -> StirlingTable:
    """``x^n = sum_m S2(n,m) (x)_m``; ``S2(n+1,m) = m S2(n,m) + S2(n,m-1)``."""
    rows = [(1,)]
    for n in range(n_max):
        prev = rows[-1]
        row = [0] * (n + 2)
        for m in range(n + 2):
            left = prev[m - 1] if m >= 1 else 0
            here = prev[m] if m <= n else 0
            row[m] = m * here + left
        rows.append(tuple(row))
    return StirlingTable("second", tuple(rows))


def _table_size(n: int) -> int:
    # rebuild on a larger request, rounded up so small sweeps share a table
    return max(32, 1 << (n.bit_length()))


def stirling_first(n: int, m: int) -> int:
    if not 0 <= m <= n:
        raise IndexOutOfRange(f"S1({n},{m}) needs 0 <= m <= n")
    return stirling_first_table(_table_size(n))(n, m)


def stirling_second(n: int, m: int) -> int:
    if not 0 <= m <= n:
        raise IndexOutOfRange(f"S2({n},{m}) needs 0 <= m <= n")
    return stirling_second_table(_table_size(n))(n, m)


def falling_factorial_coeffs(n: int) -> list[int]:
    """Coefficients (by power of x) of ``x(x-1)...(x-n+1)`` by direct multiplication."""
    if n < 0:
        raise IndexOutOfRange("n must be >= 0")
    poly = [1]
    for j in range(n):
        nxt = [0] * (len(poly) + 1)
        for i, c in enumerate(poly):
            nxt[i + 1] += c
            nxt[i] -= j * c
        poly = nxt
    return poly


@lru_cache(maxsize=None)
def classical_bernoulli(n: int) -> Fraction:
    """``B_n`` with ``B_1 = -1/2`` (coefficients of ``t/(e^t - 1)``)."""
    if n < 0:
        raise IndexOutOfRange("n must be >= 0")
    if n == 0:
        return Fraction(1)
    s = sum(comb(n + 1, k) * classical_bernoulli(k) for k in range(n))
    return -s / (n + 1)


@lru_cache(maxsize=None)
def classical_catalan_daehee(n: int) -> Fraction:
    """``d_0 = 1``; ``d_n = 4^n/(n+1) - sum_{m<n} 4^(n-m-1) C_m/(n-m)``."""
    if n < 0:
        raise IndexOutOfRange("n must be >= 0")
    if n == 0:
        return Fraction(1)
    return Fraction(4**n, n + 1) - sum(
        (Fraction(4 ** (n - m - 1), n - m) * catalan(m) for m in range(n)), Fraction(0)
    )
