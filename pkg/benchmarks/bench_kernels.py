"""Compare the jit kernels against the pure-numpy fallback.

Run:  python3 benchmarks/bench_kernels.py [--repeats N]

Times the three hot operations (objective evaluation, link gradient,
full ascent loop) on complete graphs of growing size and prints a
speedup table.  Both backends are imported directly, so the timings do
not depend on LAGRANGIA_NO_NUMBA.
"""

import argparse
import time

import numpy as np

from lagrangia._kernels import (
    ascent_loop_jit,
    ascent_loop_numpy,
    eval_poly_jit,
    eval_poly_numpy,
    link_grad_jit,
    link_grad_numpy,
)
from lagrangia.core import complete_graph


def graph_case(t, r):
    g = complete_graph(t, r)
    x = np.full(t, 1.0 / t)
    return f"complete t={t} r={r} (m={g.m})", x, g.edge_array()


def median_time(fn, repeats):
    times = []
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return sorted(times)[len(times) // 2]


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=7)
    args = parser.parse_args()

    cases = [graph_case(12, 3), graph_case(20, 3), graph_case(30, 3), graph_case(14, 4)]
    ops = [
        ("eval", eval_poly_jit, eval_poly_numpy, lambda f, x, e: f(x, e)),
        ("grad", link_grad_jit, link_grad_numpy, lambda f, x, e: f(x, e)),
        (
            "ascent(200)",
            ascent_loop_jit,
            ascent_loop_numpy,
            lambda f, x, e: f(x.copy(), e, 200, -1.0),
        ),
    ]

    # trigger compilation outside the timed region
    _, x0, e0 = cases[0]
    for _, jit_fn, _, call in ops:
        call(jit_fn, x0, e0)

    header = f"{'case':30s} {'op':12s} {'jit':>10s} {'numpy':>10s} {'speedup':>8s}"
    print(header)
    print("-" * len(header))
    for name, x, edges in cases:
        for op_name, jit_fn, np_fn, call in ops:
            jit_t = median_time(lambda: call(jit_fn, x, edges), args.repeats)
            np_t = median_time(lambda: call(np_fn, x, edges), args.repeats)
            print(
                f"{name:30s} {op_name:12s} {jit_t * 1e6:9.1f}u {np_t * 1e6:9.1f}u"
                f" {np_t / jit_t:7.1f}x"
            )


if __name__ == "__main__":
    main()
