"""The four evaluation engines and the distance facade.

Engines are pure functions over a :class:`~elastik.kernels.Recurrence`; all
mutable state (two row buffers, the cell counter) is call-local.  A result of
+inf means the computation was abandoned or the window forbids any alignment;
``cells_computed`` counts every evaluated cell expression either way.
"""

from __future__ import annotations

import math
from typing import NamedTuple

from . import _backend, _pyloops
from .errors import SpecError
from .kernels import KINDS, DistanceSpec, Recurrence, make_recurrence

VARIANTS = ("base", "ea", "eapruned", "pruned_only")

_KIND_CODE = {kind: code for code, kind in enumerate(KINDS)}
_MODE_CODE = {"squared": 0, "absolute": 1}


class EngineResult(NamedTuple):
    cost: float
    cells_computed: int


def _dispatch(rec: Recurrence, engine: str, window: int, cutoff: float, backend, debug):
    name = _backend.resolve(backend)
    if name == "compiled" and not debug:
        sp = _backend.speedups()
        empty = sp.EMPTY
        cost, cells = sp.run(
            engine,
            rec.lines,
            rec.cols,
            _KIND_CODE[rec.spec.kind],
            _MODE_CODE[rec.spec.cost_mode],
            window,
            cutoff,
            rec.spec.erp_gap or 0.0,
            rec.spec.msm_c or 0.0,
            rec.spec.twe_nu or 0.0,
            rec.spec.twe_lambda or 0.0,
            rec.wdtw_weights if rec.wdtw_weights is not None else empty,
            rec.v_border_vals if rec.v_border_vals is not None else empty,
            rec.h_border_vals if rec.h_border_vals is not None else empty,
        )
        return EngineResult(cost, cells)
    if engine == "base":
        cost, cells = _pyloops.base(rec)
    elif engine == "ea":
        cost, cells = _pyloops.ea(rec, window, cutoff)
    else:
        cost, cells = _pyloops.eapruned(rec, window, cutoff, debug=debug)
    return EngineResult(cost, cells)


def compute_base(rec: Recurrence, backend: str | None = None) -> EngineResult:
    """Exact cost over the full matrix; cells_computed is always lines*cols."""
    return _dispatch(rec, "base", 0, math.inf, backend, False)


def compute_ea(
    rec: Recurrence, window: int, cutoff: float = math.inf, backend: str | None = None
) -> EngineResult:
    """Windowed cost, abandoning once a whole row exceeds ``cutoff``."""
    return _dispatch(rec, "ea", window, cutoff, backend, False)


def compute_eapruned(
    rec: Recurrence,
    window: int,
    cutoff: float = math.inf,
    backend: str | None = None,
    debug: bool = False,
) -> EngineResult:
    """Windowed cost with left/right pruning integrated into abandoning.

    Returns the exact windowed cost when it is <= cutoff, +inf otherwise.
    ``debug=True`` runs the pure-Python engine with stale-read assertions.
    """
    return _dispatch(rec, "eapruned", window, cutoff, backend, debug)


def diagonal_upper_bound(rec: Recurrence, window: int) -> float:
    """Cost of one fixed feasible path: the diagonal, then the last column.

    Any complete path bounds the optimum from above, so this is a valid
    pruning cutoff that still lets the bounding path itself survive.
    """
    n_lines, n_cols = rec.shape
    if window < n_lines - n_cols:
        raise SpecError("window too small for any alignment")
    total = rec.init_corner
    canonical = rec.canonical
    for k in range(1, n_cols + 1):
        total += canonical(k, k)
    alt_row = rec.alt_row
    for i in range(n_cols + 1, n_lines + 1):
        total += alt_row(i, n_cols)
    return total


def compute_pruned_only(
    rec: Recurrence, window: int, backend: str | None = None
) -> EngineResult:
    """Exact windowed cost using the diagonal bound as a prune-only cutoff.

    Never abandons on a feasible window: the bounding path guarantees at
    least one surviving path.
    """
    n_lines, n_cols = rec.shape
    if window < n_lines - n_cols:
        return EngineResult(math.inf, 0)
    cutoff = diagonal_upper_bound(rec, window)
    return _dispatch(rec, "eapruned", window, cutoff, backend, False)


def distance(
    spec: DistanceSpec,
    variant: str,
    s,
    t,
    cutoff: float = math.inf,
    backend: str | None = None,
) -> EngineResult:
    """Compute ``spec`` between ``s`` and ``t`` with the named engine variant.

    ``cutoff`` only matters for the early-abandoning variants ("ea",
    "eapruned"); "base" and "pruned_only" ignore it.  "base" with a finite
    window runs the windowed engine with an infinite cutoff.
    """
    if variant not in VARIANTS:
        raise SpecError(f"unknown variant {variant!r}; expected one of {VARIANTS}")
    rec = make_recurrence(spec, s, t)
    window = spec.effective_window(len(rec.lines))
    if variant == "base":
        if spec.window is None:
            return compute_base(rec, backend=backend)
        return compute_ea(rec, window, math.inf, backend=backend)
    if variant == "ea":
        return compute_ea(rec, window, cutoff, backend=backend)
    if variant == "eapruned":
        return compute_eapruned(rec, window, cutoff, backend=backend)
    return compute_pruned_only(rec, window, backend=backend)
