"""Time-series data model, dataset IO, normalization and synthetic data.

A time series is a 1-D contiguous ``float64`` numpy array of finite values
with length >= 1.  :func:`as_series` is the validating constructor used at
every public entry point; internal code passes the arrays around directly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateInputError, EmptyDatasetError, ParseError

_DELIMITERS = {"tab": "\t", "comma": ","}


def as_series(values) -> np.ndarray:
    """Validate and convert ``values`` into a time series array.

    Raises ``ValueError`` on empty input, non-1-D input or non-finite values.
    """
    arr = np.ascontiguousarray(values, dtype=np.float64)
    if arr.ndim != 1:
        raise ValueError(f"time series must be 1-D, got shape {arr.shape}")
    if arr.size < 1:
        raise ValueError("time series must contain at least one value")
    if not np.isfinite(arr).all():
        raise ValueError("time series values must all be finite")
    return arr


@dataclass(frozen=True)
class LabeledDataset:
    """A named collection of (integer label, series) pairs.

    Series lengths may differ; the distance engines support disparate
    lengths.
    """

    name: str
    entries: tuple[tuple[int, np.ndarray], ...]

    def __post_init__(self):
        if not self.entries:
            raise EmptyDatasetError(f"dataset {self.name!r} has no entries")

    def __len__(self):
        return len(self.entries)

    @property
    def labels(self) -> list[int]:
        return [label for label, _ in self.entries]

    @property
    def series(self) -> list[np.ndarray]:
        return [values for _, values in self.entries]


def load_tsv(path, delimiter: str = "tab", name: str | None = None) -> LabeledDataset:
    """Load a dataset in UCR format: one series per line, label first.

    Fields are separated by a single tab or comma; lines end with LF or CRLF;
    blank lines are ignored.  Labels are numeric and truncated to int.
    """
    sep = _delimiter_char(delimiter)
    entries = []
    with open(path, "r", encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.rstrip("\r\n")
            if not line.strip():
                continue
            fields = line.split(sep)
            if len(fields) < 2:
                raise ParseError("expected a label and at least one value", lineno, 1)
            label = int(_parse_field(fields[0], lineno, 1))
            values = np.empty(len(fields) - 1, dtype=np.float64)
            for col, token in enumerate(fields[1:], start=2):
                values[col - 2] = _parse_field(token, lineno, col)
            entries.append((label, values))
    if not entries:
        raise EmptyDatasetError(f"no series found in {path}")
    if name is None:
        name = str(path)
    return LabeledDataset(name=name, entries=tuple(entries))


def write_tsv(dataset: LabeledDataset, path, delimiter: str = "tab") -> None:
    """Write a dataset in the format accepted by :func:`load_tsv`.

    Values are rendered with ``repr`` so a reload is bit-for-bit identical.
    """
    sep = _delimiter_char(delimiter)
    with open(path, "w", encoding="utf-8") as handle:
        for label, values in dataset.entries:
            handle.write(sep.join([str(int(label))] + [repr(float(v)) for v in values]))
            handle.write("\n")


def _delimiter_char(delimiter: str) -> str:
    try:
        return _DELIMITERS[delimiter]
    except KeyError:
        raise ValueError(f"delimiter must be one of {sorted(_DELIMITERS)}, got {delimiter!r}") from None


def _parse_field(token: str, lineno: int, col: int) -> float:
    try:
        value = float(token)
    except ValueError:
        raise ParseError(f"not a number: {token!r}", lineno, col) from None
    if not np.isfinite(value):
        raise ParseError(f"non-finite value: {token!r}", lineno, col)
    return value


def znormalize(s: np.ndarray) -> np.ndarray:
    """Return ``s`` shifted to mean 0 and scaled to population stddev 1.

    Near-constant input (stddev < 1e-12) clamps to all zeros so downstream
    scans stay total.  Requires length >= 2.
    """
    s = np.asarray(s, dtype=np.float64)
    if s.size < 2:
        raise DegenerateInputError("z-normalization needs at least 2 points")
    mean = s.mean()
    std = s.std()
    if std < 1e-12:
        return np.zeros_like(s)
    return (s - mean) / std


def derivative(s: np.ndarray) -> np.ndarray:
    """First-derivative transform; output is 2 points shorter than input.

    Element ``i`` of the output combines the step ahead of point ``i`` with
    half the two-step slope: ``((s[i+1]-s[i]) + (s[i+2]-s[i])/2) / 2``.
    Requires length >= 3.
    """
    s = np.asarray(s, dtype=np.float64)
    if s.size < 3:
        raise DegenerateInputError("derivative transform needs at least 3 points")
    return ((s[1:-1] - s[:-2]) + (s[2:] - s[:-2]) / 2.0) / 2.0


def gen_random_walk(
    count: int,
    length: int,
    classes: int,
    seed: int,
    name: str = "random-walk",
    drift_step: float = 0.15,
) -> LabeledDataset:
    """Deterministic synthetic dataset of labelled random walks.

    Labels cycle 0..classes-1; class ``k`` walks drift by
    ``drift_step * (k - (classes-1)/2)`` per step, which keeps the classes
    separable under 1-NN while individual walks stay noisy.
    """
    if count < 1 or length < 1 or classes < 1:
        raise ValueError("count, length and classes must all be >= 1")
    rng = np.random.default_rng(seed)
    entries = []
    for idx in range(count):
        label = idx % classes
        drift = drift_step * (label - (classes - 1) / 2.0)
        steps = rng.normal(loc=drift, scale=1.0, size=length)
        entries.append((label, np.cumsum(steps)))
    return LabeledDataset(name=name, entries=tuple(entries))
