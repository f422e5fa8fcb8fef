import math

import numpy as np
import pytest

import elastik as ek

BACKENDS = ["python"] + (["compiled"] if ek.compiled_available() else [])

FIG_S = [3.0, 1.0, 4.0, 4.0, 1.0, 1.0]
FIG_T = [1.0, 3.0, 2.0, 1.0, 2.0, 2.0]


def close(x, y, rel=1e-9):
    if math.isinf(x) or math.isinf(y):
        return math.isinf(x) and math.isinf(y)
    return abs(x - y) <= rel * max(1.0, abs(x), abs(y))


def random_spec(kind, rng, maxlen, mode="squared"):
    """A valid random parameterization for the given distance kind."""
    if kind == "dtw":
        return ek.DistanceSpec(kind="dtw", cost_mode=mode)
    if kind == "cdtw":
        return ek.DistanceSpec(kind="cdtw", window=int(rng.integers(0, maxlen + 1)), cost_mode=mode)
    if kind == "wdtw":
        return ek.DistanceSpec(kind="wdtw", wdtw_g=float(rng.uniform(0.0, 0.6)), cost_mode=mode)
    if kind == "erp":
        return ek.DistanceSpec(
            kind="erp", window=int(rng.integers(0, maxlen + 1)),
            erp_gap=float(rng.uniform(-1.0, 1.0)), cost_mode=mode,
        )
    if kind == "msm":
        return ek.DistanceSpec(kind="msm", msm_c=float(rng.uniform(0.0, 2.0)), cost_mode=mode)
    if kind == "twe":
        return ek.DistanceSpec(
            kind="twe", twe_nu=float(rng.uniform(0.0, 1.0)),
            twe_lambda=float(rng.uniform(0.0, 2.0)), cost_mode=mode,
        )
    raise ValueError(kind)


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)


@pytest.fixture(params=BACKENDS)
def backend(request):
    return request.param
