"""Compare the compiled and pure-Python rank kernels on fat-point condition matrices.

    python benchmarks/bench_rank.py [--repeat 3]
"""

from __future__ import annotations

import argparse
import time

from nagata import _kernels_py
from nagata.lattice import ClassVector, format_class
from nagata.shgh import DEFAULT_SEED, PRIMES, _points

try:
    from nagata import _kernels
except ImportError:
    _kernels = None

CASES = [
    ClassVector.of(12, (5, 5), (4, 4)),
    ClassVector.of(13, 5, (4, 9)),
    ClassVector.of(21, 9, (6, 10)),
    ClassVector.of(26, 10, (8, 9)),
    ClassVector.of(39, 15, (12, 9)),
]


def timed(fn, repeat: int) -> tuple[float, int]:
    best, result = float("inf"), -1
    for _ in range(repeat):
        t = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t)
    return best, result


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    p = PRIMES[0]
    print(f"{'system':<22}{'size':>12}{'cython s':>11}{'python s':>11}{'speedup':>9}")
    for c in CASES:
        xs, ys = _points(DEFAULT_SEED, c.n, p)
        rows = sum(x * (x + 1) // 2 for x in c.m)
        cols = (c.d + 1) * (c.d + 2) // 2
        py_t, py_r = timed(lambda: _kernels_py.condition_rank(c.d, list(c.m), xs, ys, p), args.repeat)
        if _kernels is not None:
            cy_t, cy_r = timed(lambda: _kernels.condition_rank(c.d, list(c.m), xs, ys, p), args.repeat)
            assert cy_r == py_r, (c, cy_r, py_r)
            print(f"{format_class(c):<22}{f'{rows}x{cols}':>12}{cy_t:>11.4f}{py_t:>11.4f}{py_t / cy_t:>8.1f}x")
        else:
            print(f"{format_class(c):<22}{f'{rows}x{cols}':>12}{'n/a':>11}{py_t:>11.4f}{'':>9}")


if __name__ == "__main__":
    main()
