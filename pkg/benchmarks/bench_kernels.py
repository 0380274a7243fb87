"""Compare the compiled and pure-Python kernels on the workloads that dominate runtime.

Run with ``python3 benchmarks/bench_kernels.py``; add ``--quick`` for a short run.
"""

from __future__ import annotations

import argparse
import math
import random
import timeit

from hermrank import kernels
from hermrank.coeffmatrix import build_matrix
from hermrank.poly import pack, trunc_spec
from hermrank.randgen import make_rng, random_tail_normal_form


def _power_workload(n: int, d: int):
    P = random_tail_normal_form(make_rng("bench", n, d), n)
    _, base = P._int_form(False)
    one = {pack(n, (0,) * n, (0,) * n): (1, 0)}
    return base, one, trunc_spec(n, d, d), d


def _run_power(impl, base, one, tspec, d):
    acc = one
    for _ in range(d):
        acc = impl.conv2(acc, base, tspec)
    return acc


def _rank_workload(n: int, d: int):
    """Integer matrix of ``P**d`` plus a dense random block of the same size."""
    P = random_tail_normal_form(make_rng("bench-rank", n, d), n)
    M = build_matrix(P ** d, d)
    scale = math.lcm(*(x.denominator() for row in M.entries for x in row))
    re = [[int(x.re * scale) for x in row] for row in M.entries]
    im = [[int(x.im * scale) for x in row] for row in M.entries]
    rng = random.Random(1)
    m = len(re)
    dense_re = [[rng.randint(-3, 3) for _ in range(m)] for _ in range(m)]
    dense_im = [[rng.randint(-3, 3) for _ in range(m)] for _ in range(m)]
    return (re, im), (dense_re, dense_im)


def _rank(impl, re, im):
    return impl.bareiss_rank2([r[:] for r in re], [r[:] for r in im])


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--quick", action="store_true")
    args = ap.parse_args()
    impls = kernels.backends()
    if "cython" not in impls:
        print("compiled kernels are not built; only the fallback is timed")
    sizes = [(2, 4), (3, 4)] if args.quick else [(2, 5), (3, 4), (3, 5), (4, 5)]
    reps = 1 if args.quick else 3
    print(f"{'workload':<28}{'backend':<10}{'seconds':>10}{'speedup':>10}")
    for n, d in sizes:
        work = _power_workload(n, d)
        (pd_re, pd_im), (dn_re, dn_im) = _rank_workload(n, d)
        cases = [
            (f"power n={n} d={d}", lambda impl: _run_power(impl, *work)),
            (f"rank P^d n={n} d={d} ({len(pd_re)})", lambda impl: _rank(impl, pd_re, pd_im)),
            (f"rank dense ({len(dn_re)})", lambda impl: _rank(impl, dn_re, dn_im)),
        ]
        for label, fn in cases:
            results = {}
            for name, impl in impls.items():
                results[name] = min(timeit.repeat(lambda: fn(impl), number=1, repeat=reps))
            outs = {name: fn(impl) for name, impl in impls.items()}
            if len({repr(sorted(o.items())) if isinstance(o, dict) else o
                    for o in outs.values()}) != 1:
                raise SystemExit(f"backends disagree on {label}")
            base = results["python"]
            for name, t in results.items():
                print(f"{label:<28}{name:<10}{t:>10.4f}{base / t:>9.1f}x")


if __name__ == "__main__":
    main()
