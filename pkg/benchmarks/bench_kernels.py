"""Compiled vs pure-Python kernel timings.

Usage: ``python benchmarks/bench_kernels.py [--size N] [--repeat R]``
"""
import argparse
import timeit

import numpy as np

from dintime._backend import BACKENDS


def inputs(size, seed=0):
    rng = np.random.default_rng(seed)
    w = rng.uniform(-30.0, 30.0, size)
    z = rng.uniform(-6.0, 6.0, size) + 1j * rng.uniform(-6.0, 6.0, size)
    return w, z


def bench(size, repeat):
    w, z = inputs(size)
    rows = []
    for name, mod in sorted(BACKENDS.items()):
        for label, fn in (("fresnel", lambda: mod.fresnel(w)), ("erfcx", lambda: mod.erfcx(z))):
            best = min(timeit.repeat(fn, number=1, repeat=repeat))
            rows.append((label, name, best))
    return rows


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--size", type=int, default=100_000)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    rows = bench(args.size, args.repeat)
    base = {label: t for label, name, t in rows if name == "python"}
    print(f"{'kernel':<8} {'backend':<8} {'best (ms)':>10} {'Mpts/s':>8} {'speedup':>8}")
    for label, name, t in rows:
        print(f"{label:<8} {name:<8} {1e3 * t:>10.2f} {args.size / t / 1e6:>8.2f} {base[label] / t:>7.1f}x")


if __name__ == "__main__":
    main()
