"""Compare the compiled and numpy kernel backends.

    python benchmarks/bench_kernels.py [--repeat N] [--quick]

Times the spectral integrand, the oracle's double time sums, a single
noise-matrix evaluation and a short sweep under each available backend and
prints the median wall time and the speedup.
"""

import argparse
import statistics
import time

import numpy as np

from qbment import SweepConfig, SystemParams, kernels, run_sweep, sigma_matrix


def _median_time(fn, repeat):
    fn()  # warm-up
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return statistics.median(times)


def _use(backend):
    """Point the dispatch module at ``backend`` for the high-level calls."""
    for name in ("spectral_integrand", "response_pair", "spectral_weight", "time_double_sums"):
        setattr(kernels, name, getattr(backend, name))


def cases(quick):
    params = SystemParams(omega=1.0, gamma=0.1, cutoff=50.0, temperature=1.0)
    n_w = 20_000 if quick else 200_000
    w = np.linspace(0.0, 2000.0, n_w)
    s = np.linspace(0.0, 1.0, 801 if quick else 3201)
    q1, q2 = np.sin(s), np.cos(s)
    w_sum = w[: (500 if quick else 2000)]
    sweep = SweepConfig(params=params, r=0.1, steps=20 if quick else 100)
    return [
        (f"spectral_integrand n={n_w}", lambda k: k.spectral_integrand(w, 0.7, 1.0, 0.1, 50.0, 1.0)),
        (f"time_double_sums {w_sum.size}x{s.size}", lambda k: k.time_double_sums(w_sum, s, q1, q2)),
        ("sigma_matrix t=0.7", lambda k: sigma_matrix(0.7, params)),
        (f"run_sweep steps={sweep.steps}", lambda k: run_sweep(sweep)),
    ]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--quick", action="store_true", help="smaller problem sizes")
    args = ap.parse_args(argv)

    names = kernels.available_backends()
    backends = {name: kernels.load_backend(name) for name in names}
    original = kernels.load_backend(kernels.BACKEND)
    print(f"backends: {', '.join(names)}")
    print(f"{'case':<36}" + "".join(f"{n:>12}" for n in names) + ("     speedup" if len(names) > 1 else ""))
    try:
        for label, fn in cases(args.quick):
            row = {}
            for name, mod in backends.items():
                _use(mod)
                row[name] = _median_time(lambda: fn(mod), args.repeat)
            line = f"{label:<36}" + "".join(f"{row[n] * 1e3:>10.2f}ms" for n in names)
            if len(names) > 1:
                line += f"{row['python'] / row['cython']:>11.1f}x"
            print(line)
    finally:
        _use(original)


if __name__ == "__main__":
    main()
