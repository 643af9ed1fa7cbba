"""Compare the compiled and pure-Python Riemann-sum kernels.

    python benchmarks/bench_kernels.py [--p 5] [--digits 12] [--n-values 6 7 8] [--repeat 3]

Both backends are called on identical inputs and their outputs are checked
for equality before timings are reported.
"""
import argparse
import sys
import timeit

from qcd import _kernels_py

try:
    from qcd import _kernels as compiled
except ImportError:
    compiled = None

CASES = {
    "geometric": lambda k, q, m, count: k.geometric_weighted_sum(7, q, m, count),
    "power[n=4]": lambda k, q, m, count: k.power_weighted_sum(4, 0, q, m, count),
    "falling[n=4]": lambda k, q, m, count: k.falling_weighted_sum((m + 1) // 2, 4, q, m, count),
}


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p", type=int, default=5)
    ap.add_argument("--digits", type=int, default=12)
    ap.add_argument("--n-values", type=int, nargs="+", default=[6, 7, 8])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if compiled is None:
        print("compiled kernels not built; run `pip install -e . --no-build-isolation`", file=sys.stderr)
        return 1

    p = args.p
    print(f"{'kernel':<14}{'N':>3}{'terms':>9}{'python s':>11}{'compiled s':>12}{'speedup':>9}")
    for N in args.n_values:
        A = args.digits + N + 2
        m = p**A
        if m >= 1 << 63:
            print(f"skipping N={N}: modulus {p}^{A} exceeds 63 bits", file=sys.stderr)
            continue
        q = 1 + p
        count = p**N
        for name, call in CASES.items():
            ref = call(_kernels_py, q, m, count)
            if call(compiled, q, m, count) != ref:
                print(f"MISMATCH {name} N={N}", file=sys.stderr)
                return 1
            slow = min(timeit.repeat(lambda: call(_kernels_py, q, m, count), number=1, repeat=args.repeat))
            fast = min(timeit.repeat(lambda: call(compiled, q, m, count), number=1, repeat=args.repeat))
            print(f"{name:<14}{N:>3}{count:>9}{slow:>11.4f}{fast:>12.5f}{slow / fast:>8.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
