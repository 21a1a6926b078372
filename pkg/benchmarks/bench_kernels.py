"""Compare the compiled and pure-Python zero-divisor kernels.

Run: python3 benchmarks/bench_kernels.py [--repeat N]
Cases: two full enumerations with no zero divisor (the Salem quartic at p = 5
and x^3 - 5x + 1 at p = 7, where every pair is visited) and the Salem quartic
at p = 3, which splits and stops at the first zero divisor.
"""
import argparse
import time

from salemdyn._kernels import compiled_find_zero_divisor, python_find_zero_divisor
from salemdyn.number_field import NumberField, PowerOrder

CASES = [
    ("x^4-x^3-x^2-x+1", 5),
    ("x^4-x^3-x^2-x+1", 3),
    ("x^3-5x+1", 7),
]


def _time(fn, table, n, p, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn(table, n, p)
        best = min(best, time.perf_counter() - t)
    return best, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if compiled_find_zero_divisor is None:
        print("compiled kernel not built; only the Python kernel is available")
    print(f"{'polynomial':<22}{'p':>3}{'python s':>12}{'cython s':>12}{'speedup':>10}  result")
    for poly, p in CASES:
        order = PowerOrder(NumberField(poly))
        table, n = order.structure_constants, order.degree
        tp, rp = _time(python_find_zero_divisor, table, n, p, 1)
        if compiled_find_zero_divisor is not None:
            tc, rc = _time(compiled_find_zero_divisor, table, n, p, args.repeat)
            assert rc == rp, "kernels disagree"
            print(f"{poly:<22}{p:>3}{tp:>12.4f}{tc:>12.4f}{tp / tc:>10.1f}  {rp}")
        else:
            print(f"{poly:<22}{p:>3}{tp:>12.4f}{'-':>12}{'-':>10}  {rp}")


if __name__ == "__main__":
    main()
