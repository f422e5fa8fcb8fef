"""NN search, 1-NN classification and sliding-window subsequence search.

These are the consumers that feed running-best cutoffs to the engines.
Candidates are always scanned in dataset order and ties keep the first
index, so results are identical across engine variants and lower-bound
modes by construction.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .engines import VARIANTS, distance
from .errors import DimensionError, SearchError, SpecError
from .kernels import DistanceSpec
from .lower_bounds import Envelope, build_envelope, lb_keogh, lb_keogh2
from .series import LabeledDataset, as_series, znormalize

LB_MODES = ("none", "keogh", "keogh2")


@dataclass(frozen=True)
class SearchConfig:
    """Distance, engine variant and lower-bound mode for one search run."""

    spec: DistanceSpec
    variant: str = "eapruned"
    lb: str = "none"
    normalize: bool = False
    debug: bool = False
    backend: str | None = None

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise SpecError(f"unknown variant {self.variant!r}; expected one of {VARIANTS}")
        if self.lb not in LB_MODES:
            raise SpecError(f"unknown lb mode {self.lb!r}; expected one of {LB_MODES}")
        if self.lb != "none" and self.spec.kind not in ("dtw", "cdtw"):
            raise SpecError("lower bounds are only available for dtw and cdtw")


@dataclass
class SearchStats:
    """Per-query accounting; skips + computed + abandoned == candidates seen."""

    computed: int = 0
    abandoned: int = 0
    lb_skips: int = 0
    cells: int = 0
    wall_time: float = 0.0
    trace: list = field(default_factory=list)


@dataclass(frozen=True)
class SearchRecord:
    """One classified query, as reported by :func:`classify_1nn`."""

    query_index: int
    actual: int
    predicted: int
    nn_index: int
    nn_distance: float
    computed: int
    abandoned: int
    lb_skips: int
    cells: int
    wall_time: float


def _candidate_envelopes(candidates, cfg: SearchConfig) -> list[Envelope] | None:
    if cfg.lb == "none":
        return None
    return [
        build_envelope(c, cfg.spec.effective_window(len(c))) for c in candidates
    ]


def nn_search(query, candidates, cfg: SearchConfig, envelopes: list[Envelope] | None = None):
    """Scan ``candidates`` in order for the nearest neighbour of ``query``.

    Returns ``(distance, index, stats)``; ties keep the lowest index.  The
    running best is handed to the engine as its cutoff, and with a lower
    bound enabled a candidate is skipped outright when its bound already
    reaches the running best.
    """
    query = as_series(query)
    candidates = list(candidates)
    if not candidates:
        raise SearchError("candidate set is empty")
    if envelopes is None:
        envelopes = _candidate_envelopes(candidates, cfg)
    env_q = None
    if cfg.lb == "keogh2":
        env_q = build_envelope(query, cfg.spec.effective_window(len(query)))

    stats = SearchStats()
    start = time.perf_counter()
    d_nn = math.inf
    best = -1
    for idx, cand in enumerate(candidates):
        # lb-keogh is undefined for unequal lengths; fall through to the engine
        if envelopes is not None and len(cand) == len(query):
            if cfg.lb == "keogh":
                bound = lb_keogh(query, envelopes[idx], cfg.spec.cost_mode)
            else:
                bound = lb_keogh2(query, cand, envelopes[idx], env_q, d_nn, cfg.spec.cost_mode)
            if bound >= d_nn:
                stats.lb_skips += 1
                continue
        if cfg.debug:
            stats.trace.append((idx, d_nn))
        res = distance(cfg.spec, cfg.variant, query, cand, cutoff=d_nn, backend=cfg.backend)
        stats.cells += res.cells_computed
        if math.isinf(res.cost):
            stats.abandoned += 1
            continue
        stats.computed += 1
        if res.cost < d_nn:
            d_nn = res.cost
            best = idx
    stats.wall_time = time.perf_counter() - start
    return d_nn, best, stats


def classify_1nn(train: LabeledDataset, test: LabeledDataset, cfg: SearchConfig,
                 threads: int | None = None) -> list[SearchRecord]:
    """1-NN classification of every test series against the train set.

    Queries are independent; ``threads`` > 1 distributes them (candidate
    scanning within a query stays serial, as the cutoff is a serial
    dependency).  Records are returned in query order regardless.
    """
    candidates = train.series
    labels = train.labels
    envelopes = _candidate_envelopes(candidates, cfg)

    def one(item):
        qidx, (actual, query) = item
        d_nn, best, stats = nn_search(query, candidates, cfg, envelopes=envelopes)
        return SearchRecord(
            query_index=qidx,
            actual=actual,
            predicted=labels[best] if best >= 0 else -1,
            nn_index=best,
            nn_distance=d_nn,
            computed=stats.computed,
            abandoned=stats.abandoned,
            lb_skips=stats.lb_skips,
            cells=stats.cells,
            wall_time=stats.wall_time,
        )

    items = list(enumerate(test.entries))
    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(one, items))
    return [one(item) for item in items]


def subsequence_search(query, reference, cfg: SearchConfig):
    """Best-matching window of ``reference`` against ``query``.

    Evaluates every offset, z-normalizing each window first when
    ``cfg.normalize`` is set; the running best is the engines' cutoff and an
    optional LB-Keogh check (against the query envelope) skips hopeless
    windows.  Returns ``(offset, distance, stats)``; ties keep the lowest
    offset.
    """
    if cfg.spec.kind not in ("dtw", "cdtw"):
        raise SpecError("subsequence search supports dtw and cdtw only")
    query = as_series(query)
    reference = as_series(reference)
    lq = len(query)
    if lq > len(reference):
        raise DimensionError(
            f"query length {lq} exceeds reference length {len(reference)}"
        )
    if cfg.normalize:
        query = znormalize(query)
    env_q = None
    if cfg.lb != "none":
        env_q = build_envelope(query, cfg.spec.effective_window(lq))

    stats = SearchStats()
    start = time.perf_counter()
    best_d = math.inf
    best_offset = -1
    for offset in range(len(reference) - lq + 1):
        window = reference[offset:offset + lq]
        if cfg.normalize:
            window = znormalize(window)
        if env_q is not None:
            bound = lb_keogh(window, env_q, cfg.spec.cost_mode)
            if cfg.lb == "keogh2" and bound < best_d:
                env_w = build_envelope(window, cfg.spec.effective_window(lq))
                bound = lb_keogh2(query, window, env_w, env_q, best_d, cfg.spec.cost_mode)
            if bound >= best_d:
                stats.lb_skips += 1
                continue
        if cfg.debug:
            stats.trace.append((offset, best_d))
        res = distance(cfg.spec, cfg.variant, query, window, cutoff=best_d, backend=cfg.backend)
        stats.cells += res.cells_computed
        if math.isinf(res.cost):
            stats.abandoned += 1
            continue
        stats.computed += 1
        if res.cost < best_d:
            best_d = res.cost
            best_offset = offset
    stats.wall_time = time.perf_counter() - start
    return best_offset, best_d, stats
