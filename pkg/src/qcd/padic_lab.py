"""p-adic q-integral evaluated as a literal Riemann sum, plus the closed forms
it is checked against.

``S_N = (1/[p^N]_q) * sum_{x < p^N} f(x) q^x`` with ``[p^N]_q`` summed the same
way, so the constant integrand gives exactly 1. ``q = 1`` (Volkenborn) uses
``[p^N]_1 = p^N``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from . import kernels
from .errors import BudgetExceeded, DegenerateRatio, OutOfDomain
from .exact_arith import USeries
from .padic import INF, PadicNumber

__all__ = [
    "DEFAULT_BUDGET",
    "IntegralSpec",
    "PadicReport",
    "closed_form_eq12",
    "convergence_table",
    "corollary3_crosscheck",
    "functional_equation_check",
    "geometric_sum",
    "moment_crosscheck",
    "padic_exp",
    "padic_log",
    "padic_sqrt_1m4t",
    "riemann_sum",
    "specialize",
]

DEFAULT_BUDGET = 5**8
KINDS = ("one", "monomial", "half_power", "half_binomial")


def _cap(x: PadicNumber, abs_prec: int | None) -> int:
    if abs_prec is not None:
        return abs_prec
    return 40 if x.exact_zero else x.abs_prec


def _one(p: int, abs_prec: int) -> PadicNumber:
    return PadicNumber(p, 0, 1, abs_prec)


def _floor_log(k: int, p: int) -> int:
    e = 0
    while p ** (e + 1) <= k:
        e += 1
    return e


def padic_log(x: PadicNumber, abs_prec: int | None = None) -> PadicNumber:
    """``log x = sum (-1)^(k+1) y^k / k`` with ``y = x - 1``, ``v(y) >= 1``."""
    p = x.p
    target = _cap(x, abs_prec)
    y = x - _one(p, target)
    if y.is_zero():
        return PadicNumber.big_oh(p, min(target, y.abs_prec))
    vy = y.val
    if vy < 1:
        raise OutOfDomain(f"log needs v(x - 1) >= 1, got {vy}")
    target = min(target, y.abs_prec)
    acc = PadicNumber.zero(p)
    power = y
    k = 1
    while k * vy - _floor_log(k, p) < target:
        term = power / k
        acc = acc + (term if k % 2 else -term)
        k += 1
        power = power * y
    return acc if not acc.exact_zero else PadicNumber.big_oh(p, target)


def padic_exp(x: PadicNumber, abs_prec: int | None = None) -> PadicNumber:
    """``exp x = sum x^k / k!`` for ``v(x) >= 1`` (odd ``p``)."""
    p = x.p
    target = _cap(x, abs_prec)
    if x.is_zero():
        return _one(p, min(target, x.abs_prec) if not x.exact_zero else target)
    vx = x.val
    if vx < 1:
        raise OutOfDomain(f"exp needs v(x) >= 1, got {vx}")
    target = min(target, x.abs_prec)
    acc = _one(p, target)
    power = _one(p, target)
    k = 1
    # v(k!) <= (k-1)/(p-1) bounds every later term from below
    while k * vx - (k - 1) // (p - 1) < target:
        power = power * x
        acc = acc + power / factorial(k)
        k += 1
    return acc


def _binom_half(m: int) -> Fraction:
    c = Fraction(1)
    for j in range(m):
        c = c * (Fraction(1, 2) - j) / (j + 1)
    return c


def padic_sqrt_1m4t(t: PadicNumber, abs_prec: int | None = None) -> PadicNumber:
    """``sqrt(1 - 4t) = sum_m binom(1/2, m) (-4t)^m``, the root congruent to 1 mod p."""
    p = t.p
    target = _cap(t, abs_prec)
    if t.is_zero():
        return _one(p, min(target, t.abs_prec) if not t.exact_zero else target)
    vt = t.val
    if vt < 1:
        raise OutOfDomain(f"sqrt(1-4t) series needs v(t) >= 1, got {vt}")
    target = min(target, t.abs_prec)
    acc = _one(p, target)
    z = t * -4
    power = _one(p, target)
    m = 1
    while m * vt < target:
        power = power * z
        acc = acc + power * _binom_half(m)
        m += 1
    return acc


@dataclass(frozen=True)
class IntegralSpec:
    """One of the built-in integrands.

    ``one``: 1; ``monomial``: ``(x + shift)^n``; ``half_power``: ``s^x`` with
    ``s = sqrt(1 - 4t)``; ``half_binomial``: ``binom(x/2, n)``.
    """

    kind: str
    n: int = 0
    t: PadicNumber | None = None
    shift: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown integrand {self.kind!r}; choose from {KINDS}")
        if self.kind == "half_power":
            if self.t is None:
                raise ValueError("half_power needs t")
            if not self.t.exact_zero and self.t.val < 1:
                raise OutOfDomain("half_power needs v(t) >= 1")
        if self.n < 0:
            raise ValueError("n must be >= 0")


def is_volkenborn(q: PadicNumber) -> bool:
    return not q.is_zero() and q.val == 0 and q.unit == 1


def _check_q(q: PadicNumber) -> None:
    if is_volkenborn(q):
        return
    d = q - _one(q.p, q.abs_prec)
    if d.is_zero():
        return
    if d.val < 1:
        raise OutOfDomain("q must satisfy v(q - 1) >= 1")


def _q_count(q: PadicNumber, N: int, A: int) -> PadicNumber:
    """``[p^N]_q`` at absolute precision ``A``."""
    p = q.p
    if is_volkenborn(q):
        return PadicNumber(p, N, 1, A)
    m = p**A
    r = kernels.geometric_weighted_sum(1, q.residue(A), m, p**N)
    return PadicNumber.from_residue(r, p, A)


def riemann_sum(spec: IntegralSpec, q: PadicNumber, N: int, budget: int = DEFAULT_BUDGET) -> PadicNumber:
    """Direct evaluation of ``S_N`` over ``p^N`` terms.

    The working modulus is ``p^A`` with ``A`` the absolute precision of ``q``
    (and of ``sqrt(1-4t)`` for the half-power integrand).
    """
    p = q.p
    if N < 1:
        raise ValueError("N must be >= 1")
    count = p**N
    if count > budget:
        raise BudgetExceeded(f"{p}^{N} = {count} terms exceed budget {budget}")
    _check_q(q)
    A = q.abs_prec
    if A is INF or A <= N:
        raise OutOfDomain(f"q carries too few digits ({A}) for N = {N}")
    qr = 1 if is_volkenborn(q) else q.residue(A)
    kind = spec.kind
    scale = None
    if kind == "one":
        total = kernels.geometric_weighted_sum(1, qr, p**A, count)
    elif kind == "monomial":
        total = kernels.power_weighted_sum(spec.n, spec.shift, qr, p**A, count)
    elif kind == "half_power":
        s = padic_sqrt_1m4t(spec.t, A)
        A = min(A, s.abs_prec)
        total = kernels.geometric_weighted_sum(s.residue(A), qr, p**A, count)
    else:
        m = p**A
        total = kernels.falling_weighted_sum(pow(2, -1, m), spec.n, qr, m, count)
        scale = factorial(spec.n)
    value = PadicNumber.from_residue(total, p, A)
    if scale is not None:
        value = value / PadicNumber.from_int(scale, p, A)
    return value / _q_count(q, N, A)


def geometric_sum(s: PadicNumber, q: PadicNumber, N: int) -> PadicNumber:
    """Closed form of ``S_N`` for ``f(x) = s^x``:
    ``(q-1)((sq)^(p^N) - 1) / ((q^(p^N) - 1)(sq - 1))`` (``q = 1``: ``(s^(p^N) - 1)/(p^N (s - 1))``).
    """
    p = q.p
    _check_q(q)
    big = p**N
    r = s * q
    one = _one(p, min(r.abs_prec, q.abs_prec))
    ratio_minus_one = r - one
    if ratio_minus_one.is_zero():
        raise DegenerateRatio("s*q = 1 to every known digit")
    top = r**big - one
    if is_volkenborn(q):
        return top / (ratio_minus_one * PadicNumber.from_int(big, p, q.abs_prec))
    q_minus_one = q - one
    return (q_minus_one * top) / ((q**big - one) * ratio_minus_one)


def closed_form_eq12(q: PadicNumber, t: PadicNumber) -> PadicNumber:
    """``(q - 1 + L/2 log(1-4t)) / (q sqrt(1-4t) - 1)``, ``L = (q-1)/log q``.

    At ``q = 1`` the limit ``(1/2)log(1-4t) / (sqrt(1-4t) - 1)`` is used; its
    removable singularity at ``t = 0`` has value 1.
    """
    p = q.p
    _check_q(q)
    if not t.exact_zero and t.val < 1:
        raise OutOfDomain("closed form needs v(t) >= 1")
    A = q.abs_prec
    one = _one(p, A)
    s = padic_sqrt_1m4t(t, A)
    log_term = padic_log(one - t * 4, A)
    if is_volkenborn(q):
        if t.is_zero():
            return one
        return (log_term / 2) / (s - one)
    qm1 = q - one
    L = qm1 / padic_log(q, A)
    return (qm1 + L * log_term / 2) / (q * s - one)


def specialize(series: USeries, q: PadicNumber, abs_prec: int) -> PadicNumber:
    """``sum_j c_j (q-1)^j`` over the known coefficients of a u-series."""
    p = q.p
    if is_volkenborn(q):
        return PadicNumber.from_rational(series.coeffs[0], p, abs_prec) if series.coeffs[0] else PadicNumber.zero(p)
    u = q - _one(p, q.abs_prec)
    acc = PadicNumber.zero(p)
    power = _one(p, abs_prec)
    for c in series.coeffs:
        if c:
            acc = acc + power * PadicNumber.from_rational(c, p, abs_prec + 8)
        power = power * u
    return acc


def tail_estimate(series: USeries, q: PadicNumber) -> int | None:
    """Smallest valuation among the last two known terms ``c_j (q-1)^j``.

    Used as the truncation level of :func:`specialize`; ``None`` means exact.
    """
    if is_volkenborn(q):
        return None
    p = q.p
    vu = (q - _one(p, q.abs_prec)).val
    vals = []
    for j in range(max(0, series.prec - 2), series.prec):
        c = series.coeffs[j]
        if c:
            v = PadicNumber.from_rational(c, p, 1).val
            vals.append(v + j * vu)
    if not vals:
        return series.prec * vu
    return min(vals)


def _vmin(*xs):
    vals = [x for x in xs if x is not None and x is not INF]
    return min(vals) if vals else INF


@dataclass
class PadicReport:
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"id": self.name, "status": "pass" if self.passed else "fail", "detail": self.detail}


def convergence_table(spec: IntegralSpec, q: PadicNumber, N_max: int,
                      budget: int = DEFAULT_BUDGET) -> list[tuple[int, int]]:
    """``(N, v(S_N - S_(N-1)))`` for ``N = 2..N_max``; agreement to every digit reports the cap."""
    sums = [riemann_sum(spec, q, N, budget) for N in range(1, N_max + 1)]
    return [(N, _jsonable(sums[N - 1].agreement(sums[N - 2]))) for N in range(2, N_max + 1)]


def _jsonable(v):
    return None if v is INF else v


def moment_crosscheck(n: int, q: PadicNumber, N: int, bq: USeries,
                      budget: int = DEFAULT_BUDGET) -> PadicReport:
    """Riemann sum of ``x^n`` against the u-series of ``B_{n,q}`` evaluated at ``u = q - 1``.

    The agreement modulus is the smallest of: the Cauchy difference
    ``v(S_N - S_(N-1))``, the truncation level of the u-series, and the
    working precision.
    """
    spec = IntegralSpec("monomial", n)
    s_n = riemann_sum(spec, q, N, budget)
    conv = s_n.agreement(riemann_sum(spec, q, N - 1, budget)) if N > 1 else None
    if n == 0:
        conv = None  # S_N(1) = 1 at every N
    value = specialize(bq, q, q.abs_prec)
    tail = tail_estimate(bq, q)
    modulus = _vmin(conv, tail, s_n.abs_prec, value.abs_prec)
    got = s_n.agreement(value)
    ok = modulus is not INF and modulus >= 1 and got >= modulus
    return PadicReport(f"moment[n={n}]", ok, {
        "N": N, "K": bq.prec, "cauchy": _jsonable(conv), "tail": tail,
        "modulus": _jsonable(modulus), "agreement": _jsonable(got),
    })


def functional_equation_check(n: int, q: PadicNumber, N: int | None = None,
                              budget: int = DEFAULT_BUDGET) -> PadicReport:
    """``q S_N((x+1)^n) - S_N(x^n)`` against ``(q-1) 0^n + L [n = 1]``.

    ``N`` defaults to the largest value affordable under ``budget`` (and the
    precision of ``q``).
    """
    p = q.p
    if N is None:
        N = 1
        while p ** (N + 1) <= budget and N + 1 < q.abs_prec - 1:
            N += 1

    def lhs(level: int) -> PadicNumber:
        shifted = riemann_sum(IntegralSpec("monomial", n, shift=1), q, level, budget)
        plain = riemann_sum(IntegralSpec("monomial", n), q, level, budget)
        return q * shifted - plain if not is_volkenborn(q) else shifted - plain

    A = q.abs_prec
    one = _one(p, A)
    qm1 = PadicNumber.zero(p) if is_volkenborn(q) else q - one
    if n == 0:
        rhs = qm1
    elif n == 1:
        rhs = one if is_volkenborn(q) else qm1 / padic_log(q, A)
    else:
        rhs = PadicNumber.zero(p)
    value = lhs(N)
    conv = value.agreement(lhs(N - 1)) if N > 1 and n > 0 else None
    modulus = _vmin(conv, value.abs_prec, rhs.abs_prec)
    got = value.agreement(rhs)
    ok = modulus is not INF and modulus >= 1 and got >= modulus
    return PadicReport(f"funceq[n={n}]", ok, {
        "N": N, "cauchy": _jsonable(conv), "modulus": _jsonable(modulus), "agreement": _jsonable(got),
    })


def corollary3_crosscheck(n: int, q: PadicNumber, N: int, dq: USeries,
                          budget: int = DEFAULT_BUDGET) -> PadicReport:
    """Riemann sum of ``binom(x/2, n)`` against ``(-1)^n 4^-n d_{n,q}`` at ``u = q - 1``."""
    spec = IntegralSpec("half_binomial", n)
    s_n = riemann_sum(spec, q, N, budget)
    conv = s_n.agreement(riemann_sum(spec, q, N - 1, budget)) if N > 1 and n > 0 else None
    value = specialize(dq * Fraction((-1) ** n, 4**n), q, q.abs_prec)
    tail = tail_estimate(dq, q)
    modulus = _vmin(conv, tail, s_n.abs_prec, value.abs_prec)
    got = s_n.agreement(value)
    ok = modulus is not INF and modulus >= 1 and got >= modulus
    return PadicReport(f"cor3[n={n}]", ok, {
        "N": N, "K": dq.prec, "cauchy": _jsonable(conv), "tail": tail,
        "modulus": _jsonable(modulus), "agreement": _jsonable(got),
    })


PADIC_CHECKS = ("eq12", "moments", "funceq", "cor3")


def _is_odd_prime(p: int) -> bool:
    if p < 3 or p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def _gap(a: PadicNumber, b: PadicNumber):
    """Valuation of ``a - b``, or None when they agree on every digit either one knows."""
    got = a.agreement(b)
    if got is INF or got >= min(a.abs_prec, b.abs_prec):
        return None
    return got


def _eq12_reports(q: PadicNumber, t: PadicNumber, N_max: int, budget: int) -> list[PadicReport]:
    spec = IntegralSpec("half_power", t=t)
    s = padic_sqrt_1m4t(t, q.abs_prec)
    cf = closed_form_eq12(q, t)
    reports = []
    sums, gaps = [], []
    for N in range(1, N_max + 1):
        direct = riemann_sum(spec, q, N, budget)
        try:
            closed = geometric_sum(s, q, N)
        except DegenerateRatio:
            # q = 1 and t = 0: every Riemann sum is the integral of 1
            closed = PadicNumber(q.p, 0, 1, direct.abs_prec)
        same = direct.same_digits(closed)
        reports.append(PadicReport(f"eq12.geometric[N={N}]", same, {
            "common_abs_prec": _jsonable(min(direct.abs_prec, closed.abs_prec))}))
        one = riemann_sum(IntegralSpec("one"), q, N, budget)
        exact_one = one.val == 0 and one.unit == 1
        reports.append(PadicReport(f"eq12.constant_one[N={N}]", exact_one, {"value": one.to_json()}))
        sums.append(direct)
        gaps.append(_gap(direct, cf))
    # valuation of S_N - closed form must not drop as N grows (None = agrees to every known digit)
    finite = [g if g is not None else float("inf") for g in gaps]
    monotone = all(a <= b for a, b in zip(finite, finite[1:]))
    reports.append(PadicReport("eq12.closed_form_convergence", monotone, {
        "table": [[N, g] for N, g in zip(range(1, N_max + 1), gaps)],
        "closed_form": cf.to_json()}))
    cauchy = [_gap(sums[i], sums[i - 1]) for i in range(1, len(sums))]
    finite = [g if g is not None else float("inf") for g in cauchy]
    reports.append(PadicReport("eq12.cauchy", all(a <= b for a, b in zip(finite, finite[1:])), {
        "table": [[N, g] for N, g in zip(range(2, N_max + 1), cauchy)]}))
    return reports


def padic_suite(p: int = 5, c: int = 1, t_val: int = 5, N_max: int = 6, digits: int = 12,
                checks=PADIC_CHECKS, K: int = 10, budget: int = DEFAULT_BUDGET) -> list[PadicReport]:
    """Run the p-adic cross-checks at ``q = 1 + c p`` and ``t = t_val``.

    Working precision is ``digits + N_max + 2`` so every ``S_N`` keeps at
    least ``digits`` known digits after the division by ``[p^N]_q``.
    """
    from .q_families import QFamilyConfig, q_bernoulli, qcd_direct

    if not _is_odd_prime(p):
        raise OutOfDomain(f"p = {p} is not an odd prime")
    if t_val != 0 and t_val % p:
        raise OutOfDomain(f"t = {t_val} needs positive {p}-adic valuation")
    if N_max < 2:
        raise ValueError("N_max must be >= 2 for Cauchy comparisons")
    W = digits + N_max + 2
    q = PadicNumber.from_int(1 + c * p, p, W)
    t = PadicNumber.from_int(t_val, p, W)
    reports: list[PadicReport] = []
    unknown = set(checks) - set(PADIC_CHECKS)
    if unknown:
        raise ValueError(f"unknown checks {sorted(unknown)}")
    if "eq12" in checks:
        reports += _eq12_reports(q, t, N_max, budget)
    cfg = QFamilyConfig(n_max=6, u_prec=K)
    if "moments" in checks:
        reports += [moment_crosscheck(n, q, N_max, q_bernoulli(n, cfg), budget) for n in range(7)]
    if "funceq" in checks:
        reports += [functional_equation_check(n, q, N_max, budget) for n in range(6)]
    if "cor3" in checks:
        reports += [corollary3_crosscheck(n, q, N_max, qcd_direct(n, cfg), budget) for n in range(5)]
    return reports
