"""Slow, obviously-correct reference implementations.

Test-only: a full-matrix transcription of the recurrence and an exhaustive
path enumeration.  Both share the kernel layer with the engines, so a
disagreement isolates an engine bug rather than a cost-function bug.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DimensionError
from .kernels import DistanceSpec, make_recurrence
from .series import as_series

_ENUM_LIMIT = 8


def oracle_full_matrix(spec: DistanceSpec, s, t, window: int | None = None):
    """Materialize the whole cost matrix; returns (cost, matrix).

    Rows follow ``s``, columns follow ``t`` (no shortest-series swap).
    Out-of-window cells are +inf.
    """
    rec = make_recurrence(spec, s, t, orient="st")
    ls, lt = rec.shape
    w = window if window is not None else max(ls, lt)
    m = np.full((ls + 1, lt + 1), math.inf)
    m[0, 0] = rec.init_corner
    for i in range(1, ls + 1):
        m[i, 0] = rec.init_v_border(i)
    for j in range(1, lt + 1):
        m[0, j] = rec.init_h_border(j)
    for i in range(1, ls + 1):
        for j in range(1, lt + 1):
            if abs(i - j) > w:
                continue
            m[i, j] = min(
                m[i - 1, j - 1] + rec.canonical(i, j),
                m[i - 1, j] + rec.alt_row(i, j),
                m[i, j - 1] + rec.alt_col(i, j),
            )
    return float(m[ls, lt]), m


def oracle_path_enum(spec: DistanceSpec, s, t, window: int | None = None) -> float:
    """Minimum cost over every monotone, continuous alignment path.

    Exponential: inputs are capped at length 8.  Paths may ride a computed
    border (gap-aligned prefixes) before entering the grid; for +inf borders
    those prefixes are skipped as they can never be optimal.
    """
    s = as_series(s)
    t = as_series(t)
    ls, lt = len(s), len(t)
    if ls > _ENUM_LIMIT or lt > _ENUM_LIMIT:
        raise DimensionError(f"path enumeration is limited to lengths <= {_ENUM_LIMIT}")
    rec = make_recurrence(spec, s, t, orient="st")
    w = window if window is not None else max(ls, lt)
    canonical = rec.canonical
    alt_row = rec.alt_row
    alt_col = rec.alt_col
    rides_borders = rec.v_border_vals is not None
    vb = rec.v_border_vals
    hb = rec.h_border_vals
    best = math.inf

    def visit(i, j, acc):
        nonlocal best
        # move costs are non-negative, so a prefix already at the best known
        # total cannot improve on it
        if acc >= best:
            return
        if i == ls and j == lt:
            best = acc
            return
        if i < ls and j < lt and abs(i - j) <= w:
            visit(i + 1, j + 1, acc + canonical(i + 1, j + 1))
        if i < ls and j >= 1 and abs(i + 1 - j) <= w:
            visit(i + 1, j, acc + alt_row(i + 1, j))
        if j < lt and i >= 1 and abs(i - j - 1) <= w:
            visit(i, j + 1, acc + alt_col(i, j + 1))
        if rides_borders:
            if j == 0 and i < ls:
                visit(i + 1, 0, vb[i + 1])
            if i == 0 and j < lt:
                visit(0, j + 1, hb[j + 1])

    visit(0, 0, rec.init_corner)
    return best
