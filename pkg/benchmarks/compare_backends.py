"""Compare the compiled row kernels against the pure-Python fallback.

Runs the same raw-kernel sweep and a small 1-NN workload on both backends
and prints wall times plus the speedup.  Results (costs and cell counts)
must be identical between backends; this script asserts that too.

Usage: python benchmarks/compare_backends.py [--length 256] [--pairs 40]
"""

import argparse
import math
import time

import numpy as np

import elastik as ek
from elastik.engines import compute_base, compute_ea, compute_eapruned
from elastik.kernels import make_recurrence


def kernel_sweep(specs, pairs, backend):
    started = time.perf_counter()
    outcome = []
    for spec, (a, b) in zip(specs, pairs):
        rec = make_recurrence(spec, a, b)
        w = spec.effective_window(len(rec.lines))
        r1 = compute_base(rec, backend=backend)
        r2 = compute_ea(rec, w, r1.cost * 1.01, backend=backend)
        r3 = compute_eapruned(rec, w, r1.cost * 1.01, backend=backend)
        outcome.append((r1, r2, r3))
    return time.perf_counter() - started, outcome


def nn_workload(backend, length):
    train = ek.gen_random_walk(20, length, 2, seed=11)
    test = ek.gen_random_walk(20, length, 2, seed=12)
    cfg = ek.SearchConfig(spec=ek.DistanceSpec(kind="dtw"), variant="eapruned",
                          backend=backend)
    started = time.perf_counter()
    records = ek.classify_1nn(train, test, cfg)
    wall = time.perf_counter() - started
    return wall, [(r.predicted, r.nn_index, r.nn_distance, r.cells) for r in records]


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--length", type=int, default=256)
    parser.add_argument("--pairs", type=int, default=40)
    args = parser.parse_args()

    if not ek.compiled_available():
        raise SystemExit("compiled extension not built; nothing to compare")

    rng = np.random.default_rng(1234)
    specs = []
    pairs = []
    params = {
        "dtw": {}, "cdtw": {"window": args.length // 8},
        "wdtw": {"wdtw_g": 0.05},
        "erp": {"window": args.length, "erp_gap": 0.0},
        "msm": {"msm_c": 0.5}, "twe": {"twe_nu": 0.1, "twe_lambda": 1.0},
    }
    for k in range(args.pairs):
        kind = ek.KINDS[k % 6]
        specs.append(ek.DistanceSpec(kind=kind, **params[kind]))
        pairs.append((np.cumsum(rng.normal(0, 1, args.length)),
                      np.cumsum(rng.normal(0, 1, args.length))))

    print(f"{'workload':<28}{'python':>12}{'compiled':>12}{'speedup':>10}")
    py_wall, py_out = kernel_sweep(specs, pairs, "python")
    c_wall, c_out = kernel_sweep(specs, pairs, "compiled")
    assert py_out == c_out, "backends disagree on the kernel sweep"
    print(f"{'kernel sweep (6 kinds)':<28}{py_wall:>11.3f}s{c_wall:>11.3f}s"
          f"{py_wall / c_wall:>9.1f}x")

    py_wall, py_recs = nn_workload("python", args.length)
    c_wall, c_recs = nn_workload("compiled", args.length)
    assert py_recs == c_recs, "backends disagree on the nn workload"
    print(f"{'1-nn 20x20 eapruned':<28}{py_wall:>11.3f}s{c_wall:>11.3f}s"
          f"{py_wall / c_wall:>9.1f}x")
    print("results identical across backends (costs, indices, cell counts)")


if __name__ == "__main__":
    main()
