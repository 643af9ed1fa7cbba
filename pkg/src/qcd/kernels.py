"""Backend selection for the Riemann-sum kernels.

The Cython module is used when it was built and the modulus fits in 63 bits;
otherwise the pure-Python implementation runs. ``QCD_PURE_PYTHON=1`` forces
the fallback.
"""
from __future__ import annotations

import os

from . import _kernels_py

try:
    if os.environ.get("QCD_PURE_PYTHON", "") not in ("", "0"):
        raise ImportError("pure Python forced")
    from . import _kernels as _compiled
except ImportError:
    _compiled = None

BACKEND = "compiled" if _compiled is not None else "python"
_LIMIT = 1 << 63


def _pick(m: int):
    if _compiled is not None and m < _LIMIT:
        return _compiled
    return _kernels_py


def power_weighted_sum(n: int, shift: int, q: int, m: int, count: int) -> int:
    return _pick(m).power_weighted_sum(n, shift % m, q % m, m, count)


def geometric_weighted_sum(s: int, q: int, m: int, count: int) -> int:
    return _pick(m).geometric_weighted_sum(s % m, q % m, m, count)


def falling_weighted_sum(h: int, n: int, q: int, m: int, count: int) -> int:
    return _pick(m).falling_weighted_sum(h % m, n, q % m, m, count)
