"""Compare the compiled and pure-Python search kernels on AN_5.

    python3 benchmarks/bench_kernels.py [--repeat R]
"""
from __future__ import annotations

import argparse
import time

from annet import _kernels_py as py
from annet import build_an

try:
    from annet import _kernels as ext
except ImportError:  # extension not built
    ext = None


def cases(rows, nv):
    return [
        ("first_cut k=4 ell=5 (no hit, full scan)", lambda m: m.first_cut(rows, nv, 4, 5, 0, nv)),
        ("scan_cuts k=4", lambda m: m.scan_cuts(rows, nv, 4, 0, nv)),
        ("grow_fragments size<=26 budget<=8", lambda m: m.grow_fragments(rows, nv, 26, 8, nv, 0, nv)),
    ]


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - start)
    return min(times), out


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    g = build_an(5).graph
    rows, nv = g.rows, g.vertex_count
    print(f"AN_5: {nv} vertices; compiled kernels {'available' if ext else 'NOT built'}")
    print(f"{'kernel':<36}{'python [s]':>12}{'compiled [s]':>14}{'speed-up':>10}")
    for name, run in cases(rows, nv):
        tp, out_p = best_of(lambda: run(py), 1)
        if ext is None:
            print(f"{name:<36}{tp:>12.3f}{'-':>14}{'-':>10}")
            continue
        tc, out_c = best_of(lambda: run(ext), args.repeat)
        assert out_c == out_p, f"backends disagree on {name}"
        print(f"{name:<36}{tp:>12.3f}{tc:>14.4f}{tp / tc:>9.0f}x")


if __name__ == "__main__":
    main()
