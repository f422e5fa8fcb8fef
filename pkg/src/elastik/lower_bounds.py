"""Streaming min/max envelopes and the LB-Keogh bounds for dtw/cdtw."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError
from .series import as_series


@dataclass(frozen=True)
class Envelope:
    """Per-point running max/min of a series over a +-window band."""

    upper: np.ndarray
    lower: np.ndarray
    window: int


def build_envelope(s, window: int) -> Envelope:
    """Sliding min/max over [i-window, i+window], amortized O(L).

    Monotone-deque construction: each index enters and leaves the working
    deques at most once.
    """
    s = as_series(s)
    if window < 0:
        raise ValueError("window must be >= 0")
    n = len(s)
    values = s.tolist()
    upper = np.empty(n)
    lower = np.empty(n)
    maxq: deque[int] = deque()
    minq: deque[int] = deque()
    right = 0
    for i in range(n):
        hi = min(n - 1, i + window)
        while right <= hi:
            v = values[right]
            while maxq and values[maxq[-1]] <= v:
                maxq.pop()
            maxq.append(right)
            while minq and values[minq[-1]] >= v:
                minq.pop()
            minq.append(right)
            right += 1
        lo = i - window
        while maxq[0] < lo:
            maxq.popleft()
        while minq[0] < lo:
            minq.popleft()
        upper[i] = values[maxq[0]]
        lower[i] = values[minq[0]]
    return Envelope(upper=upper, lower=lower, window=window)


def lb_keogh(q, env: Envelope, cost_mode: str = "squared") -> float:
    """Sum of per-point distances from ``q`` to the envelope.

    Lower-bounds the windowed dtw/cdtw between ``q`` and the enveloped
    series under the same cost mode.  Accumulates left to right so that the
    degenerate window-0 case matches the engine's own rounding.
    """
    q = as_series(q)
    if len(q) != len(env.upper):
        raise DimensionError(
            f"query length {len(q)} does not match envelope length {len(env.upper)}"
        )
    upper = env.upper.tolist()
    lower = env.lower.tolist()
    squared = cost_mode == "squared"
    total = 0.0
    for qi, u, l in zip(q.tolist(), upper, lower):
        if qi > u:
            d = qi - u
        elif qi < l:
            d = l - qi
        else:
            continue
        total += d * d if squared else d
    return total


def lb_keogh2(q, c, env_c: Envelope, env_q: Envelope, cutoff: float = np.inf,
              cost_mode: str = "squared") -> float:
    """Cascaded LB-Keogh: max of both argument orders.

    The second (reversed) evaluation is skipped when the first alone already
    exceeds ``cutoff``.
    """
    first = lb_keogh(q, env_c, cost_mode)
    if first > cutoff:
        return first
    second = lb_keogh(c, env_q, cost_mode)
    return second if second > first else first
