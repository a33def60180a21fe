"""Times the oracle-mode table search on both kernel backends.

The search space grows exponentially with the lattice, so the grid cases here
are where the compiled kernel earns its keep.  Run from the repo root:

    python3 bench/bench_kernels.py
"""

import time

from fourtops._kernels import pure
from fourtops.heyting import HeytingAlgebra
from fourtops.poset import TwoColumnGraph

try:
    from fourtops._kernels import _fast
except ImportError:
    _fast = None


def lattice(p, q):
    algebra = HeytingAlgebra(TwoColumnGraph(p, q).poset())
    return len(algebra), algebra.up_masks(), algebra.meet_table()


def time_backend(fn, n, up, meet, repeats):
    best = float("inf")
    count = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn(n, up, meet, inflationary=True, top_fixed=False)
        best = min(best, time.perf_counter() - t0)
        count = len(out)
    return best, count


def main():
    cases = [
        ("grid 2x2 (|H|=9)", lattice(2, 2), 20),
        ("grid 3x2 (|H|=12)", lattice(3, 2), 10),
        ("grid 3x3 (|H|=16)", lattice(3, 3), 3),
        ("grid 4x3 (|H|=20)", lattice(4, 3), 1),
    ]
    print(f"{'case':<20} {'tables':>7} {'pure':>10} {'compiled':>10} {'speedup':>8}")
    for name, (n, up, meet), repeats in cases:
        t_pure, count = time_backend(
            pure.enumerate_operator_tables, n, up, meet, repeats
        )
        if _fast is None:
            print(f"{name:<20} {count:>7} {t_pure * 1e3:>9.1f}ms {'n/a':>10} {'':>8}")
            continue
        t_fast, count_fast = time_backend(
            _fast.enumerate_operator_tables, n, up, meet, repeats
        )
        assert count == count_fast
        print(
            f"{name:<20} {count:>7} {t_pure * 1e3:>9.1f}ms {t_fast * 1e3:>9.1f}ms"
            f" {t_pure / t_fast:>7.1f}x"
        )


if __name__ == "__main__":
    main()
