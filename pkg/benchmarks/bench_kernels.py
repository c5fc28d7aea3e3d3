"""Time the compiled kernels against the numpy / plain-Python fallbacks.

    python benchmarks/bench_kernels.py [--repeat 5]

Each kernel is warmed up once (so compile time is excluded) and the best of
``--repeat`` runs is reported.  Results of both paths are compared.
"""

import argparse
import time

import numpy as np

from bikei import _accel, alexander_bikei, enumerate_bikei


def best_time(fn, repeat):
    fn()
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases():
    X8 = alexander_bikei(8, 5, 1)
    X4 = enumerate_bikei(4)[-1]
    yield "axiom scan |X|=8", lambda nb: _accel.axiom_witnesses(X8.under0, X8.over0, use_numba=nb)
    yield "boundary d4 |X|=8", lambda nb: _accel.boundary_dense(X8.under0, X8.over0, 4, use_numba=nb)
    yield "boundary d5 |X|=4", lambda nb: _accel.boundary_dense(X4.under0, X4.over0, 5, use_numba=nb)
    yield "table search n=4", lambda nb: _accel.search_tables(4, 10**7, use_numba=nb)[0]


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    if not _accel.HAVE_NUMBA:
        raise SystemExit("numba unavailable (or BIKEI_DISABLE_NUMBA set); nothing to compare")
    print(f"{'kernel':<22}{'numba (s)':>12}{'fallback (s)':>14}{'speedup':>10}  same")
    for name, fn in cases():
        fast = best_time(lambda: fn(True), args.repeat)
        slow = best_time(lambda: fn(False), max(1, args.repeat // 2))
        same = np.array_equal(fn(True), fn(False))
        print(f"{name:<22}{fast:>12.5f}{slow:>14.5f}{slow / fast:>9.1f}x  {same}")


if __name__ == "__main__":
    main()
