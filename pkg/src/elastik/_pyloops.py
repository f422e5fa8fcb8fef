"""Pure-Python evaluation engines over a Recurrence.

Reference implementations of the three row-buffered engines.  They are the
fallback when the compiled kernels are unavailable, and the ground truth the
compiled kernels are tested against (bit-for-bit: both sides perform the same
floating-point operations in the same order).

All engines keep exactly two row buffers of length cols+1.  A cell "counts"
each time its min-of-dependencies expression is evaluated; border writes do
not count.
"""

from __future__ import annotations

import math

INF = math.inf


def base(rec):
    """Full-matrix cost: every cell of the (lines x cols) grid, no window."""
    n_lines, n_cols = rec.shape
    canonical = rec.canonical
    alt_row = rec.alt_row
    alt_col = rec.alt_col
    prev = [INF] * (n_cols + 1)
    curr = [INF] * (n_cols + 1)
    curr[0] = rec.init_corner
    init_h = rec.init_h_border
    for j in range(1, n_cols + 1):
        curr[j] = init_h(j)
    for i in range(1, n_lines + 1):
        prev, curr = curr, prev
        curr[0] = rec.init_v_border(i)
        for j in range(1, n_cols + 1):
            v = prev[j - 1] + canonical(i, j)
            a = prev[j] + alt_row(i, j)
            if a < v:
                v = a
            a = curr[j - 1] + alt_col(i, j)
            if a < v:
                v = a
            curr[j] = v
    return curr[n_cols], n_lines * n_cols


def ea(rec, window, cutoff):
    """Windowed cost with classic row-minimum early abandoning.

    Returns +inf as soon as no cell of a completed row (border included) is
    <= cutoff; out-of-band dependencies are implicitly +inf via the buffer
    fill.
    """
    n_lines, n_cols = rec.shape
    if window < n_lines - n_cols:
        return INF, 0
    canonical = rec.canonical
    alt_row = rec.alt_row
    alt_col = rec.alt_col
    prev = [INF] * (n_cols + 1)
    curr = [INF] * (n_cols + 1)
    curr[0] = rec.init_corner
    init_h = rec.init_h_border
    for j in range(1, min(window + 1, n_cols) + 1):
        curr[j] = init_h(j)
    cells = 0
    for i in range(1, n_lines + 1):
        prev, curr = curr, prev
        jstart = max(1, i - window)
        jstop = min(i + window, n_cols)
        curr[jstart - 1] = rec.init_v_border(i) if jstart == 1 else INF
        # the border cell joins the row minimum: a path may ride a computed
        # border below the band and re-enter later
        minv = curr[jstart - 1]
        for j in range(jstart, jstop + 1):
            v = prev[j - 1] + canonical(i, j)
            a = prev[j] + alt_row(i, j)
            if a < v:
                v = a
            a = curr[j - 1] + alt_col(i, j)
            if a < v:
                v = a
            curr[j] = v
            cells += 1
            if v < minv:
                minv = v
        if minv > cutoff:
            return INF, cells
    return curr[n_cols], cells


def eapruned(rec, window, cutoff, debug=False):
    """Windowed cost with pruning integrated into early abandoning.

    Rows are evaluated in five stages around two frontiers: ``next_start``
    (first column not yet discarded from the left) and ``pruning_point``
    (first column of the previous row's above-cutoff tail).  Cells left of
    ``next_start`` and right of the stopping point are never computed.

    Exact when the true windowed cost is <= cutoff, +inf otherwise.
    """
    n_lines, n_cols = rec.shape
    if window < n_lines - n_cols:
        return INF, 0
    canonical = rec.canonical
    alt_row = rec.alt_row
    alt_col = rec.alt_col
    prev = [INF] * (n_cols + 1)
    curr = [INF] * (n_cols + 1)
    curr[0] = rec.init_corner
    init_h = rec.init_h_border
    border_top = min(window + 1, n_cols)
    # seed the pruning point from the initialized border row: first column of
    # its above-cutoff tail (stays 1 for +inf borders)
    npp = 1
    for j in range(1, border_top + 1):
        curr[j] = init_h(j)
        if curr[j] <= cutoff:
            npp = j + 1
    next_start = 1
    pruning_point = npp
    cells = 0

    if debug:
        written = [list(range(n_cols + 1)), list(range(n_cols + 1))]
        span = {id(prev): written[0], id(curr): written[1]}

        def note(buf, lo, hi):
            w = span[id(buf)]
            w[:] = [-1] * lo + list(range(lo, hi + 1)) + [-1] * (n_cols - hi)

    for i in range(1, n_lines + 1):
        prev, curr = curr, prev
        jstart = max(i - window, next_start)
        jstop = min(i + window, n_cols)
        j = jstart
        lo_written = jstart - 1

        # stage 1: left edge of the row (computed border or window cut)
        curr[jstart - 1] = rec.init_v_border(i) if jstart == 1 else INF
        alive = curr[jstart - 1] <= cutoff

        if debug:
            read_ok = span[id(prev)]

            def dep(idx):
                # a read outside the previous row's written span would be stale
                assert read_ok[idx] == idx, f"stale read at row {i}, col {idx}"
                return prev[idx]

        else:
            dep = prev.__getitem__

        # stage 2: discard points; left neighbour is dead, so only the
        # diagonal and top dependencies exist
        if curr[jstart - 1] > cutoff:
            while j <= pruning_point - 1 and j == next_start:
                v = dep(j - 1) + canonical(i, j)
                a = dep(j) + alt_row(i, j)
                if a < v:
                    v = a
                cells += 1
                curr[j] = v
                if v <= cutoff:
                    npp = j + 1
                    alive = True
                else:
                    next_start += 1
                j += 1

        # stage 3: full three-dependency cells up to the pruning point
        while j <= pruning_point - 1:
            v = dep(j - 1) + canonical(i, j)
            a = dep(j) + alt_row(i, j)
            if a < v:
                v = a
            a = curr[j - 1] + alt_col(i, j)
            if a < v:
                v = a
            cells += 1
            curr[j] = v
            if v <= cutoff:
                npp = j + 1
                alive = True
            j += 1

        # stage 4: the pruning point itself; its top dependency is known dead
        if j <= jstop:
            if j == next_start and curr[j - 1] > cutoff:
                # everything left of here is dead too: diagonal only, and a
                # failure here kills every path
                v = dep(j - 1) + canonical(i, j)
                cells += 1
                curr[j] = v
                if v <= cutoff:
                    npp = j + 1
                    alive = True
                else:
                    return INF, cells
            else:
                v = dep(j - 1) + canonical(i, j)
                a = curr[j - 1] + alt_col(i, j)
                if a < v:
                    v = a
                cells += 1
                curr[j] = v
                if v <= cutoff:
                    npp = j + 1
                    alive = True
            j += 1
        elif j == next_start:
            # discard points reached the row end: no path left open
            return INF, cells

        # stage 5: past the pruning point only the left dependency is live;
        # stop at the first above-cutoff value
        while j <= jstop and j == npp:
            v = curr[j - 1] + alt_col(i, j)
            cells += 1
            curr[j] = v
            if v <= cutoff:
                npp = j + 1
                alive = True
            j += 1

        if not alive:
            # nothing on this row (border included) can reach the cutoff
            return INF, cells
        if debug:
            note(curr, lo_written, j - 1)
        pruning_point = npp

    if j <= n_cols:
        # the last cell of the final row was pruned, hence above the cutoff
        return INF, cells
    cost = curr[n_cols]
    # a final cell assembled from pruned neighbours can overshoot; everything
    # above the cutoff is reported as abandoned
    if cost > cutoff:
        return INF, cells
    return cost, cells
