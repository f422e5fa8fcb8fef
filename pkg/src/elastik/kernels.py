"""Per-distance point costs and the recurrence bundle fed to the engines.

Every supported distance is expressed as the same dynamic program: a corner
cell of 0, two border initializers, and three move costs (canonical /
alternate-row / alternate-column).  :func:`make_recurrence` builds that
bundle for a concrete pair of series; the engines never know which distance
they are running.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .errors import SpecError
from .series import as_series

KINDS = ("dtw", "cdtw", "wdtw", "erp", "msm", "twe")
COST_MODES = ("squared", "absolute")


@dataclass(frozen=True)
class DistanceSpec:
    """Which distance to compute plus its parameters.

    ``window`` is the Sakoe-Chiba band half-width; ``None`` means unbounded.
    cdtw and erp require an explicit finite window.  Parameters irrelevant to
    ``kind`` are ignored.
    """

    kind: str
    window: int | None = None
    wdtw_g: float | None = None
    erp_gap: float | None = None
    msm_c: float | None = None
    twe_nu: float | None = None
    twe_lambda: float | None = None
    cost_mode: str = "squared"

    def __post_init__(self):
        if self.kind not in KINDS:
            raise SpecError(f"unknown distance kind {self.kind!r}; expected one of {KINDS}")
        if self.cost_mode not in COST_MODES:
            raise SpecError(f"unknown cost mode {self.cost_mode!r}; expected one of {COST_MODES}")
        if self.window is not None and (not isinstance(self.window, int) or self.window < 0):
            raise SpecError("window must be a non-negative integer or None")
        if self.kind in ("cdtw", "erp") and self.window is None:
            raise SpecError(f"{self.kind} requires a finite window")
        if self.kind == "wdtw" and (self.wdtw_g is None or self.wdtw_g < 0):
            raise SpecError("wdtw requires a non-negative weight parameter wdtw_g")
        if self.kind == "erp" and self.erp_gap is None:
            raise SpecError("erp requires a gap value erp_gap")
        if self.kind == "msm" and (self.msm_c is None or self.msm_c < 0):
            raise SpecError("msm requires a non-negative split/merge cost msm_c")
        if self.kind == "twe":
            if self.twe_nu is None or self.twe_nu < 0:
                raise SpecError("twe requires a non-negative stiffness twe_nu")
            if self.twe_lambda is None or self.twe_lambda < 0:
                raise SpecError("twe requires a non-negative penalty twe_lambda")

    def effective_window(self, longest: int) -> int:
        """Window used by the banded engines; unbounded maps to the full length."""
        return self.window if self.window is not None else longest


def point_cost(a: float, b: float, mode: str = "squared") -> float:
    """Cost of aligning two points: squared difference or absolute difference."""
    if mode == "squared":
        d = a - b
        return d * d
    if mode == "absolute":
        return abs(a - b)
    raise SpecError(f"unknown cost mode {mode!r}")


def wdtw_weight(g: float, d: int, length: int) -> float:
    """Sigmoid penalty for a cell ``d`` steps off the diagonal."""
    return 1.0 / (1.0 + math.exp(-g * (d - length / 2.0)))


@lru_cache(maxsize=128)
def wdtw_weight_table(g: float, length: int) -> np.ndarray:
    """Weights for every possible diagonal distance 0..length, precomputed once."""
    table = np.empty(length + 1, dtype=np.float64)
    for d in range(length + 1):
        table[d] = wdtw_weight(g, d, length)
    table.setflags(write=False)
    return table


def msm_split_merge_cost(new_point: float, x: float, y: float, c: float) -> float:
    """Cost of the split/merge alternate move.

    Free of the value term when ``new_point`` lies between the two reference
    points, otherwise penalized by the distance to the nearer one.
    """
    if x <= new_point <= y or x >= new_point >= y:
        return c
    d1 = abs(new_point - x)
    d2 = abs(new_point - y)
    return c + (d1 if d1 < d2 else d2)


def twe_costs(spec: DistanceSpec, s, t, i: int, j: int) -> tuple[float, float, float]:
    """The three twe move costs (match, delete-row, delete-col) at 1-indexed (i, j).

    Timestamps are the indices themselves; the index-0 predecessor of each
    series is a phantom 0-valued point.
    """
    nu = spec.twe_nu
    lam = spec.twe_lambda
    mode = spec.cost_mode
    si = s[i - 1]
    tj = t[j - 1]
    sp = s[i - 2] if i >= 2 else 0.0
    tp = t[j - 2] if j >= 2 else 0.0
    dij = float(abs(i - j))
    g_m = point_cost(si, tj, mode) + point_cost(sp, tp, mode) + nu * (dij + dij)
    g_a = point_cost(si, sp, mode) + nu + lam
    g_b = point_cost(tj, tp, mode) + nu + lam
    return g_m, g_a, g_b


@dataclass(frozen=True)
class Recurrence:
    """Border initializers and move costs for one (spec, series pair).

    ``lines`` is the longer series (matrix rows), ``cols`` the shorter
    (matrix columns), so the engines' row buffers are as small as possible.
    All callables take 1-based matrix indices.  Immutable; safe to share
    across threads.
    """

    spec: DistanceSpec
    lines: np.ndarray
    cols: np.ndarray
    init_corner: float
    init_v_border: Callable[[int], float]
    init_h_border: Callable[[int], float]
    canonical: Callable[[int, int], float]
    alt_row: Callable[[int, int], float]
    alt_col: Callable[[int, int], float]
    # payload for the compiled kernels; None where a kind has no such table
    wdtw_weights: np.ndarray | None = None
    v_border_vals: np.ndarray | None = None
    h_border_vals: np.ndarray | None = None

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.lines), len(self.cols)


def make_recurrence(spec: DistanceSpec, s, t, orient: str = "auto") -> Recurrence:
    """Instantiate the recurrence bundle for ``spec`` over series ``s`` and ``t``.

    ``orient="auto"`` puts the shorter series along the columns (ties keep
    ``s`` on the rows); ``orient="st"`` forces rows=s, cols=t, which the
    reference oracle uses to match the conventional matrix layout.
    """
    if orient not in ("auto", "st"):
        raise ValueError(f"orient must be 'auto' or 'st', got {orient!r}")
    s = as_series(s)
    t = as_series(t)
    if orient == "st" or len(s) >= len(t):
        lines, cols = s, t
    else:
        lines, cols = t, s

    kind = spec.kind
    mode = spec.cost_mode
    # plain-float copies: scalar indexing on lists is much cheaper than on arrays
    lv = lines.tolist()
    cv = cols.tolist()
    weights = None
    borders = None

    if kind in ("dtw", "cdtw"):

        def canonical(i, j):
            return point_cost(lv[i - 1], cv[j - 1], mode)

        alt_row = alt_col = canonical
    elif kind == "wdtw":
        # the sigmoid midpoint uses the longer length, whatever the orientation
        weights = wdtw_weight_table(spec.wdtw_g, max(len(lines), len(cols)))
        wt = weights.tolist()

        def canonical(i, j):
            return point_cost(lv[i - 1], cv[j - 1], mode) * wt[abs(i - j)]

        alt_row = alt_col = canonical
    elif kind == "erp":
        gap = spec.erp_gap

        def canonical(i, j):
            return point_cost(lv[i - 1], cv[j - 1], mode)

        def alt_row(i, j):
            return point_cost(lv[i - 1], gap, mode)

        def alt_col(i, j):
            return point_cost(gap, cv[j - 1], mode)

        borders = (
            _erp_border(lv, gap, mode, row=True),
            _erp_border(cv, gap, mode, row=False),
        )
    elif kind == "msm":
        c = spec.msm_c

        def canonical(i, j):
            return abs(lv[i - 1] - cv[j - 1])

        def alt_row(i, j):
            prev = lv[i - 2] if i >= 2 else lv[i - 1]
            return msm_split_merge_cost(lv[i - 1], prev, cv[j - 1], c)

        def alt_col(i, j):
            prev = cv[j - 2] if j >= 2 else cv[j - 1]
            return msm_split_merge_cost(cv[j - 1], lv[i - 1], prev, c)

    else:  # twe
        nu = spec.twe_nu
        lam = spec.twe_lambda

        def canonical(i, j):
            sp = lv[i - 2] if i >= 2 else 0.0
            tp = cv[j - 2] if j >= 2 else 0.0
            dij = float(abs(i - j))
            return point_cost(lv[i - 1], cv[j - 1], mode) + point_cost(sp, tp, mode) + nu * (dij + dij)

        def alt_row(i, j):
            sp = lv[i - 2] if i >= 2 else 0.0
            return point_cost(lv[i - 1], sp, mode) + nu + lam

        def alt_col(i, j):
            tp = cv[j - 2] if j >= 2 else 0.0
            return point_cost(cv[j - 1], tp, mode) + nu + lam

    if borders is None:
        v_vals = h_vals = None

        def init_v_border(i):
            return math.inf

        def init_h_border(j):
            return math.inf

    else:
        v_vals, h_vals = borders
        vb = v_vals.tolist()
        hb = h_vals.tolist()

        def init_v_border(i):
            return vb[i]

        def init_h_border(j):
            return hb[j]

    return Recurrence(
        spec=spec,
        lines=lines,
        cols=cols,
        init_corner=0.0,
        init_v_border=init_v_border,
        init_h_border=init_h_border,
        canonical=canonical,
        alt_row=alt_row,
        alt_col=alt_col,
        wdtw_weights=weights,
        v_border_vals=v_vals,
        h_border_vals=h_vals,
    )


def _erp_border(values, gap: float, mode: str, row: bool) -> np.ndarray:
    # cumulative cost of gap-aligning the whole prefix; index 0 is the corner
    out = np.empty(len(values) + 1, dtype=np.float64)
    out[0] = 0.0
    acc = 0.0
    for k, v in enumerate(values, start=1):
        acc = acc + (point_cost(v, gap, mode) if row else point_cost(gap, v, mode))
        out[k] = acc
    out.setflags(write=False)
    return out
