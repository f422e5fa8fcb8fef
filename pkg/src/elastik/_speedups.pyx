# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled row kernels: a bit-for-bit twin of elastik._pyloops.

The engines here perform the same floating-point operations in the same
order as the pure-Python reference, so results (costs and cell counts) are
identical between backends.  Keep the two files in sync.
"""

from libc.math cimport INFINITY, fabs

import numpy as np

EMPTY = np.empty(0, dtype=np.float64)
EMPTY.setflags(write=False)

_ENGINES = {"base": 0, "ea": 1, "eapruned": 2}

# kind codes follow elastik.kernels.KINDS: dtw, cdtw, wdtw, erp, msm, twe

cdef struct Params:
    int kind
    int mode
    double gap
    double msm_c
    double nu
    double lam
    const double* weights
    const double* vb
    const double* hb
    bint has_borders


cdef inline double pc(double a, double b, int mode) noexcept nogil:
    cdef double d
    if mode == 0:
        d = a - b
        return d * d
    return fabs(a - b)


cdef inline double msm_cost(double np_, double x, double y, double c) noexcept nogil:
    cdef double d1, d2
    if (x <= np_ and np_ <= y) or (x >= np_ and np_ >= y):
        return c
    d1 = fabs(np_ - x)
    d2 = fabs(np_ - y)
    return c + (d1 if d1 < d2 else d2)


cdef inline double canonical(const double* li, const double* co,
                             Py_ssize_t i, Py_ssize_t j, Params* p) noexcept nogil:
    cdef double sp, tp, dij
    if p.kind <= 1 or p.kind == 3:      # dtw, cdtw, erp
        return pc(li[i - 1], co[j - 1], p.mode)
    if p.kind == 2:                     # wdtw
        return pc(li[i - 1], co[j - 1], p.mode) * p.weights[i - j if i >= j else j - i]
    if p.kind == 4:                     # msm
        return fabs(li[i - 1] - co[j - 1])
    sp = li[i - 2] if i >= 2 else 0.0   # twe match
    tp = co[j - 2] if j >= 2 else 0.0
    dij = <double>(i - j if i >= j else j - i)
    return pc(li[i - 1], co[j - 1], p.mode) + pc(sp, tp, p.mode) + p.nu * (dij + dij)


cdef inline double alt_row(const double* li, const double* co,
                           Py_ssize_t i, Py_ssize_t j, Params* p) noexcept nogil:
    cdef double sp
    if p.kind <= 1:
        return pc(li[i - 1], co[j - 1], p.mode)
    if p.kind == 2:
        return pc(li[i - 1], co[j - 1], p.mode) * p.weights[i - j if i >= j else j - i]
    if p.kind == 3:
        return pc(li[i - 1], p.gap, p.mode)
    if p.kind == 4:
        sp = li[i - 2] if i >= 2 else li[i - 1]
        return msm_cost(li[i - 1], sp, co[j - 1], p.msm_c)
    sp = li[i - 2] if i >= 2 else 0.0
    return pc(li[i - 1], sp, p.mode) + p.nu + p.lam


cdef inline double alt_col(const double* li, const double* co,
                           Py_ssize_t i, Py_ssize_t j, Params* p) noexcept nogil:
    cdef double tp
    if p.kind <= 1:
        return pc(li[i - 1], co[j - 1], p.mode)
    if p.kind == 2:
        return pc(li[i - 1], co[j - 1], p.mode) * p.weights[i - j if i >= j else j - i]
    if p.kind == 3:
        return pc(p.gap, co[j - 1], p.mode)
    if p.kind == 4:
        tp = co[j - 2] if j >= 2 else co[j - 1]
        return msm_cost(co[j - 1], li[i - 1], tp, p.msm_c)
    tp = co[j - 2] if j >= 2 else 0.0
    return pc(co[j - 1], tp, p.mode) + p.nu + p.lam


cdef inline double vborder(Py_ssize_t i, Params* p) noexcept nogil:
    return p.vb[i] if p.has_borders else INFINITY


cdef inline double hborder(Py_ssize_t j, Params* p) noexcept nogil:
    return p.hb[j] if p.has_borders else INFINITY


cdef double _base(const double* li, Py_ssize_t nl, const double* co, Py_ssize_t nc,
                  Params* p, double* prev, double* curr, long long* cells) noexcept nogil:
    cdef Py_ssize_t i, j
    cdef double v, a
    cdef double* tmp
    curr[0] = 0.0
    for j in range(1, nc + 1):
        curr[j] = hborder(j, p)
    for i in range(1, nl + 1):
        tmp = prev; prev = curr; curr = tmp
        curr[0] = vborder(i, p)
        for j in range(1, nc + 1):
            v = prev[j - 1] + canonical(li, co, i, j, p)
            a = prev[j] + alt_row(li, co, i, j, p)
            if a < v:
                v = a
            a = curr[j - 1] + alt_col(li, co, i, j, p)
            if a < v:
                v = a
            curr[j] = v
    cells[0] = <long long>nl * <long long>nc
    return curr[nc]


cdef double _ea(const double* li, Py_ssize_t nl, const double* co, Py_ssize_t nc,
                Py_ssize_t window, double cutoff, Params* p,
                double* prev, double* curr, long long* cells) noexcept nogil:
    cdef Py_ssize_t i, j, jstart, jstop, border_top
    cdef double v, a, minv
    cdef double* tmp
    cells[0] = 0
    if window < nl - nc:
        return INFINITY
    curr[0] = 0.0
    border_top = window + 1 if window + 1 < nc else nc
    for j in range(1, border_top + 1):
        curr[j] = hborder(j, p)
    for i in range(1, nl + 1):
        tmp = prev; prev = curr; curr = tmp
        jstart = i - window if i - window > 1 else 1
        jstop = i + window if i + window < nc else nc
        curr[jstart - 1] = vborder(i, p) if jstart == 1 else INFINITY
        minv = curr[jstart - 1]
        for j in range(jstart, jstop + 1):
            v = prev[j - 1] + canonical(li, co, i, j, p)
            a = prev[j] + alt_row(li, co, i, j, p)
            if a < v:
                v = a
            a = curr[j - 1] + alt_col(li, co, i, j, p)
            if a < v:
                v = a
            curr[j] = v
            cells[0] += 1
            if v < minv:
                minv = v
        if minv > cutoff:
            return INFINITY
    return curr[nc]


cdef double _eapruned(const double* li, Py_ssize_t nl, const double* co, Py_ssize_t nc,
                      Py_ssize_t window, double cutoff, Params* p,
                      double* prev, double* curr, long long* cells) noexcept nogil:
    cdef Py_ssize_t i, j, jstart, jstop, border_top, next_start, pruning_point, npp
    cdef double v, a, cost
    cdef double* tmp
    cdef bint alive
    cells[0] = 0
    if window < nl - nc:
        return INFINITY
    curr[0] = 0.0
    border_top = window + 1 if window + 1 < nc else nc
    npp = 1
    for j in range(1, border_top + 1):
        curr[j] = hborder(j, p)
        if curr[j] <= cutoff:
            npp = j + 1
    next_start = 1
    pruning_point = npp
    for i in range(1, nl + 1):
        tmp = prev; prev = curr; curr = tmp
        jstart = i - window if i - window > next_start else next_start
        jstop = i + window if i + window < nc else nc
        j = jstart

        # stage 1: left edge of the row
        curr[jstart - 1] = vborder(i, p) if jstart == 1 else INFINITY
        alive = curr[jstart - 1] <= cutoff

        # stage 2: discard points (left neighbour dead; no left dependency)
        if curr[jstart - 1] > cutoff:
            while j <= pruning_point - 1 and j == next_start:
                v = prev[j - 1] + canonical(li, co, i, j, p)
                a = prev[j] + alt_row(li, co, i, j, p)
                if a < v:
                    v = a
                cells[0] += 1
                curr[j] = v
                if v <= cutoff:
                    npp = j + 1
                    alive = True
                else:
                    next_start += 1
                j += 1

        # stage 3: full three-dependency cells up to the pruning point
        while j <= pruning_point - 1:
            v = prev[j - 1] + canonical(li, co, i, j, p)
            a = prev[j] + alt_row(li, co, i, j, p)
            if a < v:
                v = a
            a = curr[j - 1] + alt_col(li, co, i, j, p)
            if a < v:
                v = a
            cells[0] += 1
            curr[j] = v
            if v <= cutoff:
                npp = j + 1
                alive = True
            j += 1

        # stage 4: the pruning point (top dependency known dead)
        if j <= jstop:
            if j == next_start and curr[j - 1] > cutoff:
                v = prev[j - 1] + canonical(li, co, i, j, p)
                cells[0] += 1
                curr[j] = v
                if v <= cutoff:
                    npp = j + 1
                    alive = True
                else:
                    return INFINITY
            else:
                v = prev[j - 1] + canonical(li, co, i, j, p)
                a = curr[j - 1] + alt_col(li, co, i, j, p)
                if a < v:
                    v = a
                cells[0] += 1
                curr[j] = v
                if v <= cutoff:
                    npp = j + 1
                    alive = True
            j += 1
        elif j == next_start:
            return INFINITY

        # stage 5: after the pruning point (left dependency only)
        while j <= jstop and j == npp:
            v = curr[j - 1] + alt_col(li, co, i, j, p)
            cells[0] += 1
            curr[j] = v
            if v <= cutoff:
                npp = j + 1
                alive = True
            j += 1

        if not alive:
            return INFINITY
        pruning_point = npp

    if j <= nc:
        # the last cell of the final row was pruned, hence above the cutoff
        return INFINITY
    cost = curr[nc]
    if cost > cutoff:
        return INFINITY
    return cost


def run(str engine, const double[::1] lines, const double[::1] cols, int kind, int mode,
        Py_ssize_t window, double cutoff, double erp_gap, double msm_c,
        double twe_nu, double twe_lambda, const double[::1] weights,
        const double[::1] vborder_vals, const double[::1] hborder_vals):
    """Run one engine over raw arrays; returns (cost, cells_computed)."""
    cdef Params p
    cdef Py_ssize_t nl = lines.shape[0]
    cdef Py_ssize_t nc = cols.shape[0]
    cdef int code = _ENGINES[engine]
    cdef long long cells = 0
    cdef double cost

    p.kind = kind
    p.mode = mode
    p.gap = erp_gap
    p.msm_c = msm_c
    p.nu = twe_nu
    p.lam = twe_lambda
    p.weights = NULL
    p.vb = NULL
    p.hb = NULL
    p.has_borders = False
    if weights.shape[0] > 0:
        p.weights = &weights[0]
    if vborder_vals.shape[0] > 0:
        p.vb = &vborder_vals[0]
        p.hb = &hborder_vals[0]
        p.has_borders = True

    buf = np.full(2 * (nc + 1), np.inf)
    cdef double[::1] bv = buf
    cdef double* prev = &bv[0]
    cdef double* curr = &bv[nc + 1]
    cdef const double* li = &lines[0]
    cdef const double* co = &cols[0]

    with nogil:
        if code == 0:
            cost = _base(li, nl, co, nc, &p, prev, curr, &cells)
        elif code == 1:
            cost = _ea(li, nl, co, nc, window, cutoff, &p, prev, curr, &cells)
        else:
            cost = _eapruned(li, nl, co, nc, window, cutoff, &p, prev, curr, &cells)
    return cost, cells
