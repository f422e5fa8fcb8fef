"""Elastic distances for univariate time series.

Six distances (dtw, cdtw, wdtw, erp, msm, twe) in four engine variants
(base, ea, eapruned, pruned_only), with computed-cell instrumentation,
LB-Keogh lower bounds, 1-NN classification and subsequence search.

Hot kernels live in a compiled extension when available; a pure-Python
twin is selected at import time otherwise (see :func:`backend_name`).
"""

from . import _backend
from .engines import (
    EngineResult,
    VARIANTS,
    compute_base,
    compute_ea,
    compute_eapruned,
    compute_pruned_only,
    diagonal_upper_bound,
    distance,
)
from .errors import (
    DegenerateInputError,
    DimensionError,
    ElastikError,
    EmptyDatasetError,
    ParseError,
    SearchError,
    SpecError,
)
from .kernels import (
    COST_MODES,
    KINDS,
    DistanceSpec,
    Recurrence,
    make_recurrence,
    msm_split_merge_cost,
    point_cost,
    twe_costs,
    wdtw_weight,
    wdtw_weight_table,
)
from .lower_bounds import Envelope, build_envelope, lb_keogh, lb_keogh2
from .search import (
    LB_MODES,
    SearchConfig,
    SearchRecord,
    SearchStats,
    classify_1nn,
    nn_search,
    subsequence_search,
)
from .series import (
    LabeledDataset,
    as_series,
    derivative,
    gen_random_walk,
    load_tsv,
    write_tsv,
    znormalize,
)

__version__ = "0.1.0"


def backend_name() -> str:
    """The backend distance computations will use: "compiled" or "python"."""
    return _backend.resolve(None)


def compiled_available() -> bool:
    return _backend.compiled_available()
