"""Compare the compiled and pure-Python kernel backends.

Usage::

    python benchmarks/bench_kernels.py [--repeat 3] [--batch 20000]

Backends that fail to load are reported and skipped.
"""
import argparse
import time

import numpy as np

from starcoef import extremal, kernels
from starcoef.caratheodory import sample_measure_batch
from starcoef.functionals import FunctionalSpec


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def bench_objective(mod, calls):
    rng = np.random.default_rng(0)
    xs = rng.uniform(0.1, 1.0, size=(calls, 8))
    code = FunctionalSpec.a4_gamma(0.2).kind.code

    def run():
        for x in xs:
            mod.objective(x, 4, code, 0.2, 0.0)
    return run


def bench_batch(mod, batch):
    W, T = sample_measure_batch(1, batch, 4)
    code = FunctionalSpec.a5_mu(0.1).kind.code

    def run():
        mod.batch_functional(W, T, code, 0.1, 0.0)
    return run


def bench_search(mod, restarts):
    spec = FunctionalSpec.a5_xi_zeta(0.1, 0.1)
    cfg = extremal.SearchConfig(restarts=restarts)

    def run():
        saved = extremal.kernels.objective
        extremal.kernels.objective = mod.objective
        try:
            extremal.search(spec, cfg)
        finally:
            extremal.kernels.objective = saved
    return run


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--calls", type=int, default=20000, help="objective evaluations")
    ap.add_argument("--batch", type=int, default=20000, help="measures per batch call")
    ap.add_argument("--restarts", type=int, default=5)
    args = ap.parse_args(argv)

    mods = {}
    for name in ("cython", "python"):
        try:
            mods[name] = kernels.load_backend(name)
        except ImportError as exc:
            print(f"{name}: unavailable ({exc})")

    cases = [
        (f"objective x{args.calls}", lambda m: bench_objective(m, args.calls)),
        (f"batch_functional n={args.batch}", lambda m: bench_batch(m, args.batch)),
        (f"search restarts={args.restarts}", lambda m: bench_search(m, args.restarts)),
    ]
    print(f"{'case':<32}" + "".join(f"{n:>12}" for n in mods) + "   speedup")
    for label, make in cases:
        times = {n: best_of(make(m), args.repeat) for n, m in mods.items()}
        row = f"{label:<32}" + "".join(f"{t:>11.4f}s" for t in times.values())
        if len(times) == 2:
            row += f"   {times['python'] / times['cython']:7.1f}x"
        print(row)


if __name__ == "__main__":
    main()
