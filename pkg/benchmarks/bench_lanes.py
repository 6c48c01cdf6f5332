"""Throughput comparison of the two measure-table lanes.

Draws one batch of random states, then times batch.measure_rows on the
numba kernel lane and the vectorized numpy lane over the same data.

    python benchmarks/bench_lanes.py --count 100000 --repeats 3
"""

import argparse
import time

import numpy as np

from qsteer import batch
from qsteer._accel import NUMBA_AVAILABLE
from qsteer.states import SamplerConfig, draw_matrices


def time_lane(lane, rhos, repeats):
    batch.warmup(lane=lane)
    best = float("inf")
    rows = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        rows = batch.measure_rows(rhos, lane=lane)
        best = min(best, time.perf_counter() - t0)
    return best, rows


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--count", type=int, default=100_000)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()

    cfg = SamplerConfig("ginibre", "uniform", seed=args.seed, count=args.count)
    t0 = time.perf_counter()
    rhos, _ = draw_matrices(cfg, 0, args.count)
    print(f"drew {args.count} states in {time.perf_counter() - t0:.2f} s")

    lanes = ["numpy"]
    if NUMBA_AVAILABLE:
        lanes.insert(0, "numba")
    else:
        print("numba not importable; timing the numpy lane only")

    results = {}
    for lane in lanes:
        seconds, rows = time_lane(lane, rhos, args.repeats)
        results[lane] = rows
        print(f"{lane:>6}: {seconds:8.3f} s  ({args.count / seconds:12.0f} states/s)")

    if len(results) == 2:
        dev = np.abs(results["numba"] - results["numpy"]).max()
        print(f"max |numba - numpy| across all columns: {dev:.3e}")


if __name__ == "__main__":
    main()
