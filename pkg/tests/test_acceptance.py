"""Acceptance gate: one test per criterion, tolerances pinned.

Run with ``pytest tests/test_acceptance.py -v -s`` to see one pass line per
criterion.  The timing criteria (7 and 10) need the compiled kernels; the
pure-Python fallback is orders of magnitude too slow for desk-scale walls.
"""

import math
import time

import numpy as np

import elastik as ek
from elastik import DistanceSpec, SearchConfig, classify_1nn, distance, gen_random_walk
from elastik.engines import compute_ea, compute_eapruned
from elastik.kernels import make_recurrence
from elastik.lower_bounds import build_envelope, lb_keogh, lb_keogh2
from elastik.oracle import oracle_path_enum
from elastik.search import subsequence_search

from conftest import FIG_S, FIG_T, close

DTW = DistanceSpec(kind="dtw")


def _report(num, desc):
    print(f"[acceptance] criterion {num}: PASS - {desc}")


def _spec_for(kind, length):
    if kind == "dtw":
        return DistanceSpec(kind="dtw")
    if kind == "cdtw":
        return DistanceSpec(kind="cdtw", window=max(1, length // 8))
    if kind == "wdtw":
        return DistanceSpec(kind="wdtw", wdtw_g=0.05)
    if kind == "erp":
        return DistanceSpec(kind="erp", window=length, erp_gap=0.0)
    if kind == "msm":
        return DistanceSpec(kind="msm", msm_c=0.5)
    return DistanceSpec(kind="twe", twe_nu=0.1, twe_lambda=1.0)


def test_criterion_01_golden_distance():
    for variant in ("base", "ea", "eapruned", "pruned_only"):
        res = distance(DTW, variant, FIG_S, FIG_T, cutoff=math.inf)
        assert res.cost == 9.0, (variant, res)
    _report(1, "dtw on the six-point golden pair is exactly 9 in all four variants")


def test_criterion_02_pruning_cell_counts():
    res = distance(DTW, "eapruned", FIG_S, FIG_T, cutoff=6.0)
    assert math.isinf(res.cost)
    assert abs(res.cells_computed - 20) <= 2, res
    res = distance(DTW, "eapruned", FIG_S, FIG_T, cutoff=9.0)
    assert res.cost == 9.0
    assert abs(res.cells_computed - 31) <= 2, res
    res = distance(DTW, "ea", FIG_S, FIG_T, cutoff=6.0)
    assert math.isinf(res.cost)
    assert res.cells_computed == 30, res
    _report(2, "eapruned abandons at 20+-2 cells (cutoff 6), finishes 9 at 31+-2 "
               "(cutoff 9); ea abandons at exactly 30")


def test_criterion_03_infeasible_window():
    spec = DistanceSpec(kind="cdtw", window=1)
    for variant in ("base", "ea", "eapruned", "pruned_only"):
        res = distance(spec, variant, FIG_S, [1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0])
        assert math.isinf(res.cost)
        assert res.cells_computed == 0
    _report(3, "cdtw w=1 on lengths 6 vs 8 returns +inf with zero cells computed")


def test_criterion_04_oracle_equivalence():
    rng = np.random.default_rng(404)
    started = time.perf_counter()
    for kind in ek.KINDS:
        for _ in range(200):
            la, lb = int(rng.integers(1, 9)), int(rng.integers(1, 9))
            spec = _spec_for(kind, max(la, lb))
            a = rng.uniform(-4.0, 4.0, la)
            b = rng.uniform(-4.0, 4.0, lb)
            got = distance(spec, "base", a, b).cost
            want = oracle_path_enum(spec, a, b, window=spec.window)
            assert close(got, want, rel=1e-9), (kind, got, want, a.tolist(), b.tolist())
    elapsed = time.perf_counter() - started
    assert elapsed < 60.0, f"oracle sweep took {elapsed:.1f}s"
    _report(4, f"6 kinds x 200 random pairs match path enumeration within 1e-9 "
               f"({elapsed:.1f}s)")


def test_criterion_05_engine_contract_sweep():
    rng = np.random.default_rng(505)
    length = 128
    for kind in ek.KINDS:
        spec = _spec_for(kind, length)
        for _ in range(1000):
            a = np.cumsum(rng.normal(0.0, 1.0, length))
            b = np.cumsum(rng.normal(0.0, 1.0, length))
            rec = make_recurrence(spec, a, b)
            w = spec.effective_window(length)
            exact = distance(spec, "base", a, b).cost
            assert math.isfinite(exact)
            po = distance(spec, "pruned_only", a, b)
            assert math.isfinite(po.cost)
            assert po.cost == exact
            for co in (math.inf, exact * 1.05, exact * 0.95):
                for engine in (compute_ea, compute_eapruned):
                    res = engine(rec, w, co)
                    if math.isinf(res.cost):
                        assert exact > co, (kind, co, exact)
                    else:
                        assert res.cost == exact, (kind, co, res.cost, exact)
    _report(5, "6 kinds x 1000 pairs x 3 cutoffs: abandon soundness and exactness, "
               "zero violations; pruned_only always equals base")


def test_criterion_06_nn_result_invariance():
    train = gen_random_walk(50, 256, 2, seed=6060, name="train")
    test = gen_random_walk(50, 256, 2, seed=6061, name="test")
    grids = {
        "dtw": ("none", "keogh", "keogh2"),
        "cdtw": ("none", "keogh", "keogh2"),
        "wdtw": ("none",),
        "erp": ("none",),
        "msm": ("none",),
        "twe": ("none",),
    }
    for kind, lbs in grids.items():
        spec = _spec_for(kind, 256)
        reference = None
        for variant in ("base", "ea", "eapruned", "pruned_only"):
            for lb in lbs:
                cfg = SearchConfig(spec=spec, variant=variant, lb=lb)
                records = classify_1nn(train, test, cfg)
                outcome = [(r.predicted, r.nn_index, r.nn_distance) for r in records]
                if reference is None:
                    reference = outcome
                else:
                    assert outcome == reference, (kind, variant, lb)
    _report(6, "predictions, nn indices and nn distances identical across "
               "variants x lower bounds for all six kinds")


def test_criterion_07_directional_speedup():
    assert ek.compiled_available(), "timing criterion needs the compiled kernels"
    train = gen_random_walk(200, 1024, 2, seed=7070, name="train")
    test = gen_random_walk(200, 1024, 2, seed=7071, name="test")
    walls = {}
    preds = {}
    for variant in ("base", "ea", "eapruned"):
        cfg = SearchConfig(spec=DTW, variant=variant)
        started = time.perf_counter()
        records = classify_1nn(train, test, cfg, threads=1)
        walls[variant] = time.perf_counter() - started
        preds[variant] = [r.predicted for r in records]
    assert preds["eapruned"] == preds["base"] == preds["ea"]
    assert walls["eapruned"] <= 0.5 * walls["base"], walls
    assert walls["eapruned"] <= walls["ea"], walls
    _report(7, f"dtw nn 200x200@1024: eapruned {walls['eapruned']:.1f}s vs "
               f"base {walls['base']:.1f}s ({walls['base']/walls['eapruned']:.1f}x), "
               f"ea {walls['ea']:.1f}s")


def test_criterion_08_lower_bound_soundness():
    rng = np.random.default_rng(808)
    violations = 0
    for _ in range(10_000):
        n = int(rng.integers(8, 65))
        w = int(rng.integers(0, n + 1))
        q = np.cumsum(rng.normal(0.0, 1.0, n))
        c = np.cumsum(rng.normal(0.0, 1.0, n))
        spec = DistanceSpec(kind="cdtw", window=w)
        env_c = build_envelope(c, w)
        env_q = build_envelope(q, w)
        exact = distance(spec, "base", q, c).cost
        if lb_keogh(q, env_c) > exact:
            violations += 1
        if lb_keogh2(q, c, env_c, env_q) > exact:
            violations += 1
    assert violations == 0
    for _ in range(1000):
        n = int(rng.integers(1, 80))
        w = int(rng.integers(0, n + 2))
        s = rng.normal(0.0, 2.0, n)
        env = build_envelope(s, w)
        upper = [max(s[max(0, i - w): i + w + 1]) for i in range(n)]
        lower = [min(s[max(0, i - w): i + w + 1]) for i in range(n)]
        assert env.upper.tolist() == upper
        assert env.lower.tolist() == lower
    _report(8, "lb_keogh/lb_keogh2 never exceed cdtw over 10k triples; envelopes "
               "match the naive sliding min/max on 1k inputs")


def test_criterion_09_window_laws():
    rng = np.random.default_rng(909)
    n = 64
    for _ in range(100):
        a = np.cumsum(rng.normal(0.0, 1.0, n))
        b = np.cumsum(rng.normal(0.0, 1.0, n))
        prior = math.inf
        for w in (0, 1, 2, 4, 8, 16, n):
            cost = distance(DistanceSpec(kind="cdtw", window=w), "base", a, b).cost
            assert cost <= prior
            prior = cost
        full = distance(DistanceSpec(kind="cdtw", window=n), "base", a, b).cost
        assert full == distance(DTW, "base", a, b).cost
        at_zero = distance(DistanceSpec(kind="cdtw", window=0), "base", a, b).cost
        sq = float(np.sum((a - b) ** 2))
        assert close(at_zero, sq, rel=1e-12)
    _report(9, "cdtw cost non-increasing in w; w=L equals dtw exactly; w=0 equals "
               "the squared euclidean distance")


def test_criterion_10_subsequence_correct_and_fast():
    assert ek.compiled_available(), "timing criterion needs the compiled kernels"
    rng = np.random.default_rng(1010)
    reference = np.cumsum(rng.normal(0.0, 1.0, 10_000))
    query = np.cumsum(rng.normal(0.0, 1.0, 128))
    started = time.perf_counter()
    brute = subsequence_search(query, reference, SearchConfig(spec=DTW, variant="base"))
    brute_wall = time.perf_counter() - started
    started = time.perf_counter()
    fast = subsequence_search(query, reference, SearchConfig(spec=DTW, variant="eapruned"))
    fast_wall = time.perf_counter() - started
    assert (fast[0], fast[1]) == (brute[0], brute[1])
    assert fast_wall <= 0.5 * brute_wall, (fast_wall, brute_wall)
    _report(10, f"subsequence search: identical (offset, distance) to the brute scan, "
                f"{brute_wall/fast_wall:.1f}x faster ({fast_wall:.2f}s vs {brute_wall:.2f}s)")


def test_criterion_11_msm_metric_property():
    rng = np.random.default_rng(1111)
    costs = (0.01, 0.1, 0.5, 1.0, 10.0)
    for k in range(5000):
        spec = DistanceSpec(kind="msm", msm_c=costs[k % len(costs)])
        x = np.cumsum(rng.normal(0.0, 1.0, 64))
        y = np.cumsum(rng.normal(0.0, 1.0, 64))
        z = np.cumsum(rng.normal(0.0, 1.0, 64))
        dxy = distance(spec, "base", x, y).cost
        dyz = distance(spec, "base", y, z).cost
        dxz = distance(spec, "base", x, z).cost
        assert dxz <= dxy + dyz + 1e-9, (k, dxz, dxy, dyz)
    _report(11, "msm triangle inequality holds on 5000 random triples within 1e-9")
