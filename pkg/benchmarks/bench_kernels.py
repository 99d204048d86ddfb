"""Benchmark the pure and compiled sweep kernels against each other.

Times the numeric thermal-concurrence kernel and the closed-form kernel on
a fig1-sized batch, per available backend, and reports the agreement
between backends along the way. Run as a script:

    python benchmarks/bench_kernels.py [--points 12100] [--repeats 5]
"""

import argparse
import time

import numpy as np

from spinring._kernels import available_backends, reference


def _load(name):
    if name == "pure":
        return reference
    from spinring._kernels import _compiled

    return _compiled


def _batch(points, seed=7):
    rng = np.random.default_rng(seed)
    j = np.ascontiguousarray(rng.uniform(-2.0, 2.0, points))
    b = np.ascontiguousarray(rng.uniform(-2.0, 2.0, points))
    delta = np.ascontiguousarray(rng.uniform(-1.0, 1.0, points))
    t = np.ascontiguousarray(rng.uniform(0.05, 2.0, points))
    return j, b, delta, t


def _time(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--points", type=int, default=12100, help="batch size")
    parser.add_argument("--repeats", type=int, default=5, help="take the best of N runs")
    args = parser.parse_args()

    j, b, delta, t = _batch(args.points)
    backends = {name: _load(name) for name in available_backends()}
    print(f"backends: {', '.join(backends)}  points: {args.points}")

    numeric = {}
    closed = {}
    for name, backend in backends.items():
        seconds = _time(
            lambda: backend.thermal_pair_concurrence(j, b, delta, t, (1, 3)), args.repeats
        )
        numeric[name] = backend.thermal_pair_concurrence(j, b, delta, t, (1, 3))
        rate = args.points / seconds
        print(f"numeric  {name:8s} {seconds * 1e3:8.1f} ms   {rate:10.0f} points/s")
    for name, backend in backends.items():
        seconds = _time(
            lambda: backend.alternate_concurrence_closed(j, b, t), args.repeats
        )
        closed[name] = backend.alternate_concurrence_closed(j, b, t)
        rate = args.points / seconds
        print(f"closed   {name:8s} {seconds * 1e3:8.1f} ms   {rate:10.0f} points/s")

    if len(backends) == 2:
        gap_numeric = float(np.abs(numeric["pure"] - numeric["compiled"]).max())
        gap_closed = float(np.abs(closed["pure"] - closed["compiled"]).max())
        print(f"max backend deviation: numeric {gap_numeric:.3g}, closed {gap_closed:.3g}")


if __name__ == "__main__":
    main()
