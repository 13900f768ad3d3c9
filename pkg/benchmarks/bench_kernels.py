"""Compare the numba-compiled search kernels with their pure-Python versions.

    python benchmarks/bench_kernels.py [--order 6] [--repeat 3]

Runs reduced-square enumeration and the orthogonal-mate sweep on both paths,
checks they agree, and prints best-of-N wall times. The compiled path is
warmed up once first so compilation time is reported separately.
"""

import argparse
import time

import numba

from mubkit.mols import kernels


def sweep(grids, transversals, masks, disjoint):
    n = grids.shape[1]
    hits = 0
    for g in grids:
        if len(disjoint(masks(transversals(g)), n)):
            hits += 1
    return hits


def best_of(fn, repeat):
    times = []
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - t0)
    return min(times), result


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--order", type=int, default=6)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    n = args.order

    py = (kernels.reduced_squares_py, kernels.transversals_py, kernels.transversal_masks_py,
          kernels.disjoint_transversals_py)
    jit = tuple(numba.njit(f) for f in py)

    t0 = time.perf_counter()
    warm = jit[0](min(n, 4))
    sweep(warm, *jit[1:])
    compile_time = time.perf_counter() - t0

    rows = []
    results = {}
    for name, (reduced, *rest) in (("numba", jit), ("python", py)):
        t_enum, grids = best_of(lambda: reduced(n), args.repeat)
        t_sweep, hits = best_of(lambda: sweep(grids, *rest), args.repeat)
        results[name] = (len(grids), hits)
        rows.append((name, t_enum, t_sweep))

    if results["numba"] != results["python"]:
        raise SystemExit(f"backends disagree: {results}")
    squares, hits = results["numba"]
    print(f"order {n}: {squares} reduced squares, {hits} with an orthogonal mate")
    print(f"numba compile (warm-up): {compile_time:.2f}s")
    print(f"{'backend':<8} {'enumerate':>10} {'mate sweep':>11}")
    for name, t_enum, t_sweep in rows:
        print(f"{name:<8} {t_enum:>9.3f}s {t_sweep:>10.3f}s")
    (_, je, js), (_, pe, ps) = rows
    print(f"speedup  {pe / je:>9.1f}x {ps / js:>10.1f}x")


if __name__ == "__main__":
    main()
