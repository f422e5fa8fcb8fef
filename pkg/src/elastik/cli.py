"""Command-line interface: distance evaluation, NN benchmarks, subsequence search.

Per-query output is JSON-lines followed by one JSON summary, so runs are
greppable and diffable.  Exit codes: 0 success, 1 usage or configuration
error, 2 early-abandoned result (``dist`` only).  ``ELASTIK_THREADS`` sets
the default worker count for ``nn`` and ``bench``.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
import time

from . import _backend
from .engines import VARIANTS, distance
from .errors import ElastikError
from .kernels import KINDS, DistanceSpec
from .search import LB_MODES, SearchConfig, classify_1nn, subsequence_search
from .series import gen_random_walk, load_tsv, write_tsv, znormalize, LabeledDataset


class _Parser(argparse.ArgumentParser):
    # usage problems must exit 1, not argparse's default 2
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _spec_arguments(parser):
    group = parser.add_argument_group("distance")
    group.add_argument("--kind", required=True, choices=KINDS)
    group.add_argument("--window", type=int, default=None,
                       help="warping window half-width (required for cdtw/erp)")
    group.add_argument("--cost", choices=("squared", "absolute"), default="squared")
    group.add_argument("--wdtw-g", type=float, default=None)
    group.add_argument("--erp-gap", type=float, default=None)
    group.add_argument("--msm-c", type=float, default=None)
    group.add_argument("--twe-nu", type=float, default=None)
    group.add_argument("--twe-lambda", type=float, default=None)


def _spec_from_args(args) -> DistanceSpec:
    return DistanceSpec(
        kind=args.kind,
        window=args.window,
        wdtw_g=args.wdtw_g,
        erp_gap=args.erp_gap,
        msm_c=args.msm_c,
        twe_nu=args.twe_nu,
        twe_lambda=args.twe_lambda,
        cost_mode=args.cost,
    )


def _spec_echo(spec: DistanceSpec, args) -> dict:
    echo = {"kind": spec.kind, "cost": spec.cost_mode, "window": spec.window}
    for key in ("wdtw_g", "erp_gap", "msm_c", "twe_nu", "twe_lambda"):
        value = getattr(spec, key)
        if value is not None:
            echo[key] = value
    echo["variant"] = getattr(args, "variant", None)
    echo["lb"] = getattr(args, "lb", None)
    echo["backend"] = _backend.resolve(args.backend)
    return echo


def _series_from_flags(args, side):
    inline = getattr(args, side)
    path = getattr(args, f"{side}_file")
    row = getattr(args, f"{side}_row")
    if inline is not None:
        return [float(tok) for tok in inline.split(",") if tok.strip()]
    if path is None:
        raise ElastikError(f"provide --{side} or --{side}-file")
    data = load_tsv(path, delimiter=args.delimiter)
    if row >= len(data):
        raise ElastikError(f"--{side}-row {row} out of range for {path} ({len(data)} rows)")
    return data.entries[row][1]


def _default_threads(value):
    if value is not None:
        return value
    env = os.environ.get("ELASTIK_THREADS")
    return int(env) if env else 1


def _maybe_znorm(dataset: LabeledDataset, enabled: bool) -> LabeledDataset:
    if not enabled:
        return dataset
    entries = tuple((label, znormalize(values)) for label, values in dataset.entries)
    return LabeledDataset(name=dataset.name, entries=entries)


def cmd_dist(args) -> int:
    spec = _spec_from_args(args)
    a = _series_from_flags(args, "a")
    b = _series_from_flags(args, "b")
    cutoff = math.inf if args.cutoff is None else args.cutoff
    result = distance(spec, args.variant, a, b, cutoff=cutoff, backend=args.backend)
    abandoned = math.isinf(result.cost)
    payload = {
        "cost": "abandoned" if abandoned else result.cost,
        "cells_computed": result.cells_computed,
        "config": _spec_echo(spec, args),
    }
    print(json.dumps(payload))
    return 2 if abandoned else 0


def _run_nn(train, test, cfg, threads):
    records = classify_1nn(train, test, cfg, threads=threads)
    correct = sum(1 for r in records if r.predicted == r.actual)
    summary = {
        "queries": len(records),
        "accuracy": correct / len(records),
        "total_cells": sum(r.cells for r in records),
        "total_computed": sum(r.computed for r in records),
        "total_abandoned": sum(r.abandoned for r in records),
        "total_lb_skips": sum(r.lb_skips for r in records),
        "wall_s": sum(r.wall_time for r in records),
    }
    return records, summary


def cmd_nn(args) -> int:
    spec = _spec_from_args(args)
    cfg = SearchConfig(spec=spec, variant=args.variant, lb=args.lb, backend=args.backend)
    train = _maybe_znorm(load_tsv(args.train, delimiter=args.delimiter), args.znorm)
    test = _maybe_znorm(load_tsv(args.test, delimiter=args.delimiter), args.znorm)
    threads = _default_threads(args.threads)
    started = time.perf_counter()
    records, summary = _run_nn(train, test, cfg, threads)
    for r in records:
        print(json.dumps({
            "query": r.query_index,
            "actual": r.actual,
            "predicted": r.predicted,
            "nn_index": r.nn_index,
            "nn_distance": r.nn_distance,
            "computed": r.computed,
            "abandoned": r.abandoned,
            "lb_skips": r.lb_skips,
            "cells": r.cells,
            "wall_s": r.wall_time,
        }))
    summary.update({
        "command": "nn",
        "train": args.train,
        "test": args.test,
        "seed": None,
        "config": _spec_echo(spec, args),
        "threads": threads,
        "znorm": args.znorm,
        "total_wall_s": time.perf_counter() - started,
    })
    print(json.dumps(summary))
    return 0


def cmd_subseq(args) -> int:
    spec = _spec_from_args(args)
    cfg = SearchConfig(
        spec=spec, variant=args.variant, lb=args.lb, normalize=args.normalize,
        backend=args.backend,
    )
    query = load_tsv(args.query, delimiter=args.delimiter).entries[args.query_row][1]
    reference = load_tsv(args.reference, delimiter=args.delimiter).entries[args.reference_row][1]
    offset, dist_value, stats = subsequence_search(query, reference, cfg)
    print(json.dumps({
        "command": "subseq",
        "offset": offset,
        "distance": dist_value if not math.isinf(dist_value) else "abandoned",
        "windows": len(reference) - len(query) + 1,
        "computed": stats.computed,
        "abandoned": stats.abandoned,
        "lb_skips": stats.lb_skips,
        "cells": stats.cells,
        "wall_s": stats.wall_time,
        "config": _spec_echo(spec, args),
    }))
    return 0


def _bench_datasets(args):
    if args.train and args.test:
        train = load_tsv(args.train, delimiter=args.delimiter)
        test = load_tsv(args.test, delimiter=args.delimiter)
    else:
        train = gen_random_walk(args.gen_train, args.gen_length, args.gen_classes,
                                args.seed, name="bench-train")
        test = gen_random_walk(args.gen_test, args.gen_length, args.gen_classes,
                               args.seed + 1, name="bench-test")
    return train, test


def cmd_bench(args) -> int:
    spec = _spec_from_args(args)
    train, test = _bench_datasets(args)
    variants = [v.strip() for v in args.variants.split(",") if v.strip()]
    for v in variants:
        if v not in VARIANTS:
            raise ElastikError(f"unknown variant {v!r}; expected one of {VARIANTS}")
    threads = _default_threads(args.threads)
    writer = csv.writer(sys.stdout)
    writer.writerow([
        "variant", "rep", "cells", "computed", "abandoned", "lb_skips",
        "accuracy", "wall_s", "speedup_vs_base",
    ])
    base_wall: dict[int, float] = {}
    for rep in range(args.reps):
        for variant in variants:
            cfg = SearchConfig(spec=spec, variant=variant, lb=args.lb, backend=args.backend)
            started = time.perf_counter()
            _, summary = _run_nn(train, test, cfg, threads)
            wall = time.perf_counter() - started
            if variant == "base":
                base_wall[rep] = wall
            speedup = ""
            if rep in base_wall:
                speedup = f"{base_wall[rep] / wall:.3f}"
            writer.writerow([
                variant, rep, summary["total_cells"], summary["total_computed"],
                summary["total_abandoned"], summary["total_lb_skips"],
                f"{summary['accuracy']:.6f}", f"{wall:.6f}", speedup,
            ])
    return 0


def cmd_gen(args) -> int:
    train = gen_random_walk(args.gen_train, args.gen_length, args.gen_classes,
                            args.seed, name="generated-train")
    test = gen_random_walk(args.gen_test, args.gen_length, args.gen_classes,
                           args.seed + 1, name="generated-test")
    write_tsv(train, args.out_train, delimiter=args.delimiter)
    write_tsv(test, args.out_test, delimiter=args.delimiter)
    print(json.dumps({
        "command": "gen",
        "train": args.out_train,
        "test": args.out_test,
        "train_count": len(train),
        "test_count": len(test),
        "length": args.gen_length,
        "classes": args.gen_classes,
        "seed": args.seed,
    }))
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="elastik", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        _spec_arguments(p)
        p.add_argument("--delimiter", choices=("tab", "comma"), default="tab")
        p.add_argument("--backend", choices=("auto", "compiled", "python"), default=None)

    p_dist = sub.add_parser("dist", help="one distance between two series")
    common(p_dist)
    p_dist.add_argument("--variant", choices=VARIANTS, default="base")
    p_dist.add_argument("--a", help="comma-separated values")
    p_dist.add_argument("--a-file")
    p_dist.add_argument("--a-row", type=int, default=0)
    p_dist.add_argument("--b", help="comma-separated values")
    p_dist.add_argument("--b-file")
    p_dist.add_argument("--b-row", type=int, default=0)
    p_dist.add_argument("--cutoff", type=float, default=None)
    p_dist.set_defaults(func=cmd_dist)

    p_nn = sub.add_parser("nn", help="1-NN classification of a test set")
    common(p_nn)
    p_nn.add_argument("--train", required=True)
    p_nn.add_argument("--test", required=True)
    p_nn.add_argument("--variant", choices=VARIANTS, default="eapruned")
    p_nn.add_argument("--lb", choices=LB_MODES, default="none")
    p_nn.add_argument("--znorm", action="store_true",
                      help="z-normalize every series after loading")
    p_nn.add_argument("--threads", type=int, default=None)
    p_nn.set_defaults(func=cmd_nn)

    p_sub = sub.add_parser("subseq", help="best window of a reference series")
    common(p_sub)
    p_sub.add_argument("--query", required=True)
    p_sub.add_argument("--query-row", type=int, default=0)
    p_sub.add_argument("--reference", required=True)
    p_sub.add_argument("--reference-row", type=int, default=0)
    p_sub.add_argument("--variant", choices=VARIANTS, default="eapruned")
    p_sub.add_argument("--lb", choices=LB_MODES, default="none")
    p_sub.add_argument("--normalize", action="store_true")
    p_sub.set_defaults(func=cmd_subseq)

    p_bench = sub.add_parser("bench", help="timing table across engine variants")
    common(p_bench)
    p_bench.add_argument("--train")
    p_bench.add_argument("--test")
    p_bench.add_argument("--gen-train", type=int, default=50)
    p_bench.add_argument("--gen-test", type=int, default=50)
    p_bench.add_argument("--gen-length", type=int, default=128)
    p_bench.add_argument("--gen-classes", type=int, default=2)
    p_bench.add_argument("--seed", type=int, default=7)
    p_bench.add_argument("--variants", default="base,ea,eapruned,pruned_only")
    p_bench.add_argument("--lb", choices=LB_MODES, default="none")
    p_bench.add_argument("--reps", type=int, default=1)
    p_bench.add_argument("--threads", type=int, default=None)
    p_bench.set_defaults(func=cmd_bench)

    p_gen = sub.add_parser("gen", help="write a synthetic random-walk dataset")
    p_gen.add_argument("--gen-train", type=int, default=50)
    p_gen.add_argument("--gen-test", type=int, default=50)
    p_gen.add_argument("--gen-length", type=int, default=128)
    p_gen.add_argument("--gen-classes", type=int, default=2)
    p_gen.add_argument("--seed", type=int, default=7)
    p_gen.add_argument("--out-train", required=True)
    p_gen.add_argument("--out-test", required=True)
    p_gen.add_argument("--delimiter", choices=("tab", "comma"), default="tab")
    p_gen.set_defaults(func=cmd_gen)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ElastikError as exc:
        print(f"elastik: error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"elastik: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
