"""Benchmark the pixel-statistics kernel backends against each other.

Times ``masked_mean_sums`` (channel sums over an elevation rectangle with
window rectangles masked out) for every importable backend on a shared
random workload, checks that all backends return identical sums, and
prints per-call timings.

Run from the repository root::

    python3 benchmarks/bench_kernels.py [--image-size 1024] [--calls 300]
"""

from __future__ import annotations

import argparse
import random
import time

import numpy as np

from facade_pipeline.kernels import available_backends


def build_workload(rng: random.Random, image_size: int, calls: int):
    image = np.frombuffer(
        rng.randbytes(image_size * image_size * 3), dtype=np.uint8
    ).reshape(image_size, image_size, 3)
    jobs = []
    for _ in range(calls):
        x0 = rng.randint(0, image_size // 2)
        y0 = rng.randint(0, image_size // 2)
        x1 = rng.randint(x0 + 64, image_size)
        y1 = rng.randint(y0 + 64, image_size)
        windows = np.asarray(
            [
                [
                    wx := rng.randint(x0, x1 - 8),
                    wy := rng.randint(y0, y1 - 8),
                    rng.randint(wx + 4, min(wx + 96, x1)),
                    rng.randint(wy + 4, min(wy + 96, y1)),
                ]
                for _ in range(rng.randint(0, 24))
            ],
            dtype=np.int64,
        ).reshape(-1, 4)
        jobs.append((x0, y0, x1, y1, windows))
    return image, jobs


def run_backend(module, image, jobs, repeats: int):
    results = []
    best = float("inf")
    for _ in range(repeats):
        results.clear()
        started = time.perf_counter()
        for x0, y0, x1, y1, windows in jobs:
            results.append(module.masked_mean_sums(image, x0, y0, x1, y1, windows))
        best = min(best, time.perf_counter() - started)
    return best, results


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--image-size", type=int, default=1024)
    parser.add_argument("--calls", type=int, default=300)
    parser.add_argument("--repeats", type=int, default=5)
    parser.add_argument("--seed", type=int, default=13)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    image, jobs = build_workload(rng, args.image_size, args.calls)
    backends = available_backends()
    print(
        f"workload: {args.calls} calls on a {args.image_size}x{args.image_size} image, "
        f"best of {args.repeats} repeats"
    )

    timings: dict[str, float] = {}
    reference: list | None = None
    for name in sorted(backends):
        best, results = run_backend(backends[name], image, jobs, args.repeats)
        timings[name] = best
        if reference is None:
            reference = results
        elif results != reference:
            print(f"MISMATCH: backend {name!r} disagrees with the first backend")
            return 1
        per_call = best / args.calls * 1e6
        print(f"  {name:>8}: {best * 1e3:8.2f} ms total  {per_call:8.1f} us/call")

    if len(timings) == 2:
        slow, fast = max(timings.values()), min(timings.values())
        fastest = min(timings, key=timings.get)
        print(f"  fastest: {fastest} ({slow / fast:.1f}x over the slower backend)")
    elif len(timings) == 1:
        only = next(iter(timings))
        print(f"  only the {only!r} backend is importable; nothing to compare")
    print("  all backends returned identical sums")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
