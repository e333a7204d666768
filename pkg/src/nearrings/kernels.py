"""Sweep-kernel dispatch: compiled extension if available, numpy otherwise.

Set NEARRING_NO_EXT=1 to force the pure-Python backend (used by the
benchmark and the backend-parity tests).
"""

from __future__ import annotations

import os

import numpy as np

from . import _sweeps_py

if os.environ.get("NEARRING_NO_EXT"):
    _impl = _sweeps_py
    BACKEND = "python"
else:
    try:
        from . import _fastsweeps as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        _impl = _sweeps_py
        BACKEND = "python"


def assoc_counterexample(mul: np.ndarray):
    return _impl.assoc_counterexample(np.ascontiguousarray(mul, dtype=np.int32))


def ldist_counterexample(mul: np.ndarray, add: np.ndarray):
    return _impl.ldist_counterexample(
        np.ascontiguousarray(mul, dtype=np.int32),
        np.ascontiguousarray(add, dtype=np.int32),
    )


def assoc_sampled(mul: np.ndarray, xs, ys, zs) -> int:
    """Index of the first failing sampled triple, or -1."""
    lhs = mul[mul[xs, ys], zs]
    rhs = mul[xs, mul[ys, zs]]
    bad = np.flatnonzero(lhs != rhs)
    return int(bad[0]) if bad.size else -1


def ldist_sampled(mul: np.ndarray, add: np.ndarray, xs, ys, zs) -> int:
    """Index of the first failing sampled triple, or -1."""
    lhs = mul[xs, add[ys, zs]]
    rhs = add[mul[xs, ys], mul[xs, zs]]
    bad = np.flatnonzero(lhs != rhs)
    return int(bad[0]) if bad.size else -1
