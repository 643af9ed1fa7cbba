# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Riemann-sum kernels (moduli below 2**63, 128-bit products)."""

ctypedef unsigned long long u64

cdef extern from *:
    """
    static inline unsigned long long qcd_mulmod(unsigned long long a,
                                                unsigned long long b,
                                                unsigned long long m) {
        return (unsigned long long)(((unsigned __int128)a * b) % m);
    }
    """
    u64 mulmod "qcd_mulmod"(u64 a, u64 b, u64 m) nogil

MAX_MODULUS = 1 << 63


cdef inline u64 addmod(u64 a, u64 b, u64 m) noexcept nogil:
    cdef u64 s = a + b
    return s - m if s >= m else s


cdef inline u64 powmod(u64 b, long long e, u64 m) noexcept nogil:
    cdef u64 r = 1 % m
    b %= m
    while e > 0:
        if e & 1:
            r = mulmod(r, b, m)
        b = mulmod(b, b, m)
        e >>= 1
    return r


def power_weighted_sum(long long n, u64 shift, u64 q, u64 m, long long count):
    cdef u64 acc = 0, w = 1 % m, qq = q % m
    cdef long long x
    with nogil:
        for x in range(count):
            acc = addmod(acc, mulmod(powmod((<u64>x + shift) % m, n, m), w, m), m)
            w = mulmod(w, qq, m)
    return acc


def geometric_weighted_sum(u64 s, u64 q, u64 m, long long count):
    cdef u64 acc = 0, w = 1 % m, f = 1 % m, ss = s % m, qq = q % m
    cdef long long x
    with nogil:
        for x in range(count):
            acc = addmod(acc, mulmod(f, w, m), m)
            f = mulmod(f, ss, m)
            w = mulmod(w, qq, m)
    return acc


def falling_weighted_sum(u64 h, long long n, u64 q, u64 m, long long count):
    cdef u64 acc = 0, w = 1 % m, qq = q % m, hh = h % m, y, f, fac
    cdef long long x, j
    with nogil:
        for x in range(count):
            y = mulmod(hh, <u64>x % m, m)
            f = 1 % m
            for j in range(n):
                # (y - j) mod m without going negative
                fac = (y + m - (<u64>j % m)) % m
                f = mulmod(f, fac, m)
            acc = addmod(acc, mulmod(f, w, m), m)
            w = mulmod(w, qq, m)
    return acc
