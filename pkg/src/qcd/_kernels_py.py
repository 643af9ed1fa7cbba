"""Pure-Python Riemann-sum kernels; reference behaviour for the compiled module.

Each kernel returns ``sum_{x=0}^{count-1} f(x) * q^x mod m`` for one built-in
integrand family. All arguments are nonnegative ints, ``m >= 2``.
"""


def power_weighted_sum(n, shift, q, m, count):
    """``f(x) = (x + shift)^n``."""
    acc = 0
    w = 1 % m
    for x in range(count):
        acc = (acc + pow(x + shift, n, m) * w) % m
        w = w * q % m
    return acc


def geometric_weighted_sum(s, q, m, count):
    """``f(x) = s^x``."""
    acc = 0
    w = 1 % m
    f = 1 % m
    for _ in range(count):
        acc = (acc + f * w) % m
        f = f * s % m
        w = w * q % m
    return acc


def falling_weighted_sum(h, n, q, m, count):
    """``f(x) = (h*x)(h*x - 1)...(h*x - n + 1)``."""
    acc = 0
    w = 1 % m
    for x in range(count):
        y = h * x % m
        f = 1 % m
        for j in range(n):
            f = f * (y - j) % m
        acc = (acc + f * w) % m
        w = w * q % m
    return acc
