"""Benchmark: compiled tally kernel vs the pure-Python twin.

Runs the moment enumeration (reduction mode) on a few fixture graphs at
growing word lengths and prints a timing table with the speedup.  Both
backends must produce identical tallies; the script asserts it.

Usage:
    python bench/bench_kernel.py [--max-n 9] [--repeat 3]
"""

import argparse
import os
import sys
import time

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from groupoidlab import _kernel, _kernel_py  # noqa: E402
from groupoidlab.fixtures import fixture  # noqa: E402
from groupoidlab.graphs import shadow  # noqa: E402
from groupoidlab.labeling import MODE_EXPLICIT, MODE_VERTEX, assign_weights  # noqa: E402

try:
    from groupoidlab import _kernel_c
except ImportError:
    _kernel_c = None


def kernel_graph(name):
    f = fixture(name)
    mode = MODE_EXPLICIT if f.labels else MODE_VERTEX
    return _kernel.kernel_graph(assign_weights(shadow(f.graph), mode, f.labels))


def timed(fn, repeat):
    best = None
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best, out


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--max-n", type=int, default=9)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    if _kernel_c is None:
        print("compiled kernel not built; run: python setup.py build_ext --inplace")
        return 1

    print(f"{'graph':<14} {'n':>3} {'words':>12} {'pure (s)':>10} {'compiled (s)':>13} {'speedup':>8}")
    for name in ["two-loop", "example-6-2", "circulant-3"]:
        kg = kernel_graph(name)
        for n in range(4, args.max_n + 1):
            if kg.n_signed**n > 40_000_000:
                break
            t_pure, res_pure = timed(
                lambda: _kernel_py.tally_words(kg, n, "reduction"), args.repeat
            )
            t_fast, res_fast = timed(
                lambda: _kernel_c.tally_words(kg, n, "reduction"), args.repeat
            )
            assert tuple(res_pure[0]) == tuple(res_fast[0]), "backend disagreement"
            assert res_pure[1] == res_fast[1]
            speedup = t_pure / t_fast if t_fast > 0 else float("inf")
            print(
                f"{name:<14} {n:>3} {res_pure[1]:>12} {t_pure:>10.4f} "
                f"{t_fast:>13.4f} {speedup:>7.1f}x"
            )
    return 0


if __name__ == "__main__":
    sys.exit(main())
