"""Selection of the compiled row kernels vs the pure-Python fallback.

The compiled extension is optional.  ``ELASTIK_BACKEND`` forces a choice:
``compiled`` (error if missing), ``python``, or ``auto`` (default: compiled
when available).
"""

from __future__ import annotations

import os

try:
    from . import _speedups
except ImportError:  # pragma: no cover - depends on the build
    _speedups = None

_VALID = ("auto", "compiled", "python")


def resolve(backend: str | None = None) -> str:
    """Return the concrete backend name ("compiled" or "python") to use."""
    choice = backend or os.environ.get("ELASTIK_BACKEND", "auto")
    if choice not in _VALID:
        raise ValueError(f"backend must be one of {_VALID}, got {choice!r}")
    if choice == "auto":
        return "compiled" if _speedups is not None else "python"
    if choice == "compiled" and _speedups is None:
        raise RuntimeError("compiled backend requested but elastik._speedups is not built")
    return choice


def speedups():
    return _speedups


def compiled_available() -> bool:
    return _speedups is not None
