import math

import numpy as np
import pytest

import elastik as ek
from elastik import DimensionError, DistanceSpec
from elastik.oracle import oracle_full_matrix, oracle_path_enum

from conftest import FIG_S, FIG_T, close, random_spec


def test_full_matrix_golden_pair():
    cost, m = oracle_full_matrix(DistanceSpec(kind="dtw"), FIG_S, FIG_T)
    assert cost == 9.0
    assert m[6, 6] == 9.0
    assert m[5, 6] == 9.0  # row 5 ends at 9


def test_full_matrix_identical_series_zero(rng):
    for kind in ek.KINDS:
        s = rng.uniform(-4, 4, 6)
        spec = random_spec(kind, rng, 6)
        cost, _ = oracle_full_matrix(spec, s, s)
        assert cost == 0.0


def test_path_enum_golden_pair():
    assert oracle_path_enum(DistanceSpec(kind="dtw"), FIG_S, FIG_T) == 9.0


def test_path_enum_single_point_is_canonical():
    # one path only for the infinite-border kinds
    for kind in ("dtw", "msm", "twe"):
        spec = random_spec(kind, np.random.default_rng(5), 1)
        rec = ek.make_recurrence(spec, [2.0], [5.0])
        assert oracle_path_enum(spec, [2.0], [5.0]) == rec.canonical(1, 1)


def test_path_enum_gap_only_alignment_for_erp():
    # both points cheaper to gap than to match
    spec = DistanceSpec(kind="erp", window=1, erp_gap=0.0)
    got = oracle_path_enum(spec, [1.0], [-1.0])
    assert got == 2.0  # cost(1,g) + cost(g,-1), not cost(1,-1) = 4
    full, _ = oracle_full_matrix(spec, [1.0], [-1.0])
    assert full == got


def test_oracles_agree_exhaustive_lengths(rng):
    for kind in ek.KINDS:
        for la in range(1, 7):
            for lb in range(1, 7):
                spec = random_spec(kind, rng, max(la, lb))
                a = rng.integers(-3, 4, la).astype(float)
                b = rng.integers(-3, 4, lb).astype(float)
                enum = oracle_path_enum(spec, a, b, window=spec.window)
                full, _ = oracle_full_matrix(spec, a, b, window=spec.window)
                assert close(enum, full), (kind, la, lb, enum, full)


def test_full_matrix_borders_monotone(rng):
    for kind in ek.KINDS:
        spec = random_spec(kind, rng, 8)
        _, m = oracle_full_matrix(spec, rng.uniform(-4, 4, 8), rng.uniform(-4, 4, 5))
        col0 = m[1:, 0]
        row0 = m[0, 1:]
        assert all(a <= b for a, b in zip(col0, col0[1:]))
        assert all(a <= b for a, b in zip(row0, row0[1:]))


def test_path_enum_rejects_long_series(rng):
    with pytest.raises(DimensionError):
        oracle_path_enum(DistanceSpec(kind="dtw"), rng.normal(0, 1, 9), rng.normal(0, 1, 4))


def test_infeasible_window_gives_infinity():
    spec = DistanceSpec(kind="cdtw", window=1)
    cost, _ = oracle_full_matrix(spec, FIG_S, list(range(8)), window=1)
    assert math.isinf(cost)
    assert math.isinf(oracle_path_enum(spec, FIG_S, list(range(8)), window=1))
