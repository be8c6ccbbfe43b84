"""Time the compiled and pure-Python descent-distribution kernels.

    python3 benchmarks/bench_kernels.py [--repeat 3] [multiset ...]
"""
import argparse
import time

from qstirling import kernels
from qstirling.combinatorics import multinomial, parse_multiset

DEFAULT_CASES = ["2,2,2", "2,2,2,2", "3,3,2", "2,2,2,2,1", "2,2,2,2,2"]


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - start)
    return min(times), result


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("cases", nargs="*", default=DEFAULT_CASES)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    if kernels.compiled is None:
        print("compiled kernel not built; only the Python kernel is timed")
    print(f"{'multiset':<14}{'words':>10}{'python s':>12}{'cython s':>12}{'speedup':>10}")
    for text in args.cases:
        M = parse_multiset(text)
        py_t, py_r = best_of(lambda: kernels.python.descent_distribution(M.mult), args.repeat)
        if kernels.compiled is not None:
            c_t, c_r = best_of(lambda: kernels.compiled.descent_distribution(M.mult),
                               args.repeat)
            assert c_r == py_r, f"kernels disagree on {text}"
            print(f"{text:<14}{multinomial(M):>10}{py_t:>12.4f}{c_t:>12.4f}{py_t / c_t:>9.1f}x")
        else:
            print(f"{text:<14}{multinomial(M):>10}{py_t:>12.4f}{'-':>12}{'-':>10}")


if __name__ == "__main__":
    main()
