"""Time the compiled core against the numpy fallback on the hot kernels.

    python benchmarks/bench_backends.py [--sizes 100 250 500] [--repeat 5]
"""

import argparse
import timeit

import numpy as np

from causalkit import _backend


def cases(n, d, rng):
    a = rng.standard_normal((n, d))
    samples = rng.standard_normal((n, 3))
    lo, hi = samples.min(axis=0), samples.max(axis=0)
    return {
        "gaussian_gram": lambda impl: impl.gaussian_gram(a, a, 1.3),
        "condensed_distances": lambda impl: impl.condensed_distances(a),
        "histogram_counts": lambda impl: impl.histogram_counts(samples, lo, hi, 4),
    }


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--sizes", type=int, nargs="+", default=[100, 250, 500, 1000])
    p.add_argument("--dim", type=int, default=4)
    p.add_argument("--repeat", type=int, default=5)
    args = p.parse_args(argv)

    impls = _backend.IMPLEMENTATIONS
    if "cython" not in impls:
        print("compiled core not built; only the fallback is available")
    rng = np.random.default_rng(0)
    names = sorted(impls)
    print(f"{'kernel':<22}{'n':>6}" + "".join(f"{n + ' ms':>14}" for n in names) + f"{'speedup':>10}")
    for n in args.sizes:
        for label, fn in cases(n, args.dim, rng).items():
            times = {}
            for name in names:
                impl = impls[name]
                number = max(1, int(2e5 // (n * n)))
                best = min(timeit.repeat(lambda: fn(impl), number=number, repeat=args.repeat))
                times[name] = 1e3 * best / number
            speed = times["python"] / times["cython"] if "cython" in times else float("nan")
            print(f"{label:<22}{n:>6}" + "".join(f"{times[k]:>14.3f}" for k in names) + f"{speed:>10.2f}")


if __name__ == "__main__":
    main()
