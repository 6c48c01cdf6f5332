"""Kernel lane selection: numba-compiled kernels or a pure-numpy fallback.

The default lane is "numba" whenever numba imports cleanly.  Setting the
environment variable QSTEER_PURE_NUMPY to anything other than "" or "0"
forces the vectorized numpy lane.  Batch entry points also take an explicit
``lane=`` argument so benchmarks and tests can compare both in one process.
"""

from __future__ import annotations

import os

NUMBA_AVAILABLE = False
try:
    from numba import njit as _njit

    NUMBA_AVAILABLE = True
except ImportError:  # pragma: no cover - exercised only without numba
    _njit = None


def _forced_numpy() -> bool:
    return os.environ.get("QSTEER_PURE_NUMPY", "0") not in ("", "0")


DEFAULT_LANE = "numpy" if (_forced_numpy() or not NUMBA_AVAILABLE) else "numba"


def maybe_njit(**kwargs):
    """numba.njit when available, otherwise a no-op decorator."""
    if NUMBA_AVAILABLE:
        return _njit(**kwargs)

    def deco(fn):
        return fn

    return deco


def resolve_lane(lane: str | None) -> str:
    if lane is None:
        lane = DEFAULT_LANE
    if lane not in ("numba", "numpy"):
        raise ValueError(f"unknown kernel lane {lane!r} (expected 'numba' or 'numpy')")
    if lane == "numba" and not NUMBA_AVAILABLE:
        raise RuntimeError("numba lane requested but numba is not importable")
    return lane
