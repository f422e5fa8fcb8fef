"""Compiled kernels must be a bit-for-bit twin of the pure-Python engines."""

import math

import numpy as np
import pytest

import elastik as ek
from elastik import make_recurrence
from elastik._backend import resolve
from elastik.engines import compute_base, compute_ea, compute_eapruned, compute_pruned_only

from conftest import random_spec

pytestmark = pytest.mark.skipif(
    not ek.compiled_available(), reason="compiled extension not built"
)


def test_resolve_choices(monkeypatch):
    assert resolve("python") == "python"
    assert resolve("compiled") == "compiled"
    assert resolve("auto") == "compiled"
    monkeypatch.setenv("ELASTIK_BACKEND", "python")
    assert resolve(None) == "python"
    with pytest.raises(ValueError):
        resolve("turbo")


def test_backends_bit_identical(rng):
    for kind in ek.KINDS:
        for mode in ("squared", "absolute"):
            for _ in range(12):
                la, lb = int(rng.integers(1, 48)), int(rng.integers(1, 48))
                spec = random_spec(kind, rng, max(la, lb), mode=mode)
                a = np.cumsum(rng.normal(0, 1, la))
                b = np.cumsum(rng.normal(0, 1, lb))
                rec = make_recurrence(spec, a, b)
                w = spec.effective_window(len(rec.lines))
                assert compute_base(rec, backend="python") == compute_base(rec, backend="compiled")
                exact = compute_ea(rec, w, math.inf, backend="python").cost
                cutoffs = [math.inf]
                if math.isfinite(exact) and exact > 0:
                    cutoffs += [exact * f for f in (1.05, 1.0, 0.95, 0.3)]
                for co in cutoffs:
                    assert compute_ea(rec, w, co, backend="python") == compute_ea(
                        rec, w, co, backend="compiled"
                    )
                    assert compute_eapruned(rec, w, co, backend="python") == compute_eapruned(
                        rec, w, co, backend="compiled"
                    )
                if w >= len(rec.lines) - len(rec.cols):
                    assert compute_pruned_only(rec, w, backend="python") == compute_pruned_only(
                        rec, w, backend="compiled"
                    )


def test_distance_facade_backend_flag(rng):
    a, b = rng.normal(0, 1, 30), rng.normal(0, 1, 30)
    spec = ek.DistanceSpec(kind="wdtw", wdtw_g=0.1)
    assert ek.distance(spec, "eapruned", a, b, backend="python") == ek.distance(
        spec, "eapruned", a, b, backend="compiled"
    )
