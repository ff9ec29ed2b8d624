"""Ternary sliding-window representation and its similarity-based distance.

A series is first mapped point by point onto {-1, 0, +1} against a band of
``alpha`` standard deviations around the mean, then each window of ``window``
consecutive points is collapsed to the sign that holds the majority of its
nonzero points. The distance between two equal-length trit vectors counts
agreeing nonzero positions only.
"""

from __future__ import annotations

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .core import DataError, DatasetStats, FdParams, FdVector, TimeSeries

__all__ = [
    "tritize_point",
    "tritize",
    "symbolize_segment",
    "fd_discretize",
    "fd_discretize_matrix",
    "fd_similarity",
    "fdist",
]


def tritize_point(v: float, stats: DatasetStats, alpha: float) -> int:
    """Map one value to a trit: +1 at or above mu + alpha*sigma, -1 at or
    below mu - alpha*sigma, 0 strictly inside the band. Boundary values are
    deliberately nonzero."""
    hi = stats.mu + alpha * stats.sigma
    lo = stats.mu - alpha * stats.sigma
    if v >= hi:
        return 1
    if v <= lo:
        return -1
    return 0


def tritize(values: np.ndarray, stats: DatasetStats, alpha: float) -> np.ndarray:
    """Vectorized ``tritize_point`` over an array of any shape."""
    v = np.asarray(values, dtype=np.float64)
    hi = stats.mu + alpha * stats.sigma
    lo = stats.mu - alpha * stats.sigma
    out = np.zeros(v.shape, dtype=np.int8)
    # +1 assigned last so it wins when alpha = 0 collapses both thresholds
    # onto mu, matching the scalar rule's branch order.
    out[v <= lo] = -1
    out[v >= hi] = 1
    return out


def symbolize_segment(segment, stats: DatasetStats, alpha: float) -> int:
    """Collapse one window of values to a single trit by nonzero majority.

    Ties between equally many +1 and -1 points resolve by comparing the
    magnitude of the largest positive-trit value against the magnitude of
    the smallest negative-trit value; an exact magnitude tie yields +1.
    A window with no nonzero trits yields 0.
    """
    seg = np.asarray(segment, dtype=np.float64)
    if seg.ndim != 1 or seg.size == 0:
        raise DataError("segment must be a non-empty one-dimensional array")
    tr = tritize(seg, stats, alpha)
    pos = int(np.count_nonzero(tr == 1))
    neg = int(np.count_nonzero(tr == -1))
    if pos > neg:
        return 1
    if neg > pos:
        return -1
    if pos == 0:
        return 0
    vmax = seg[tr == 1].max()
    vmin = seg[tr == -1].min()
    return 1 if abs(vmax) >= abs(vmin) else -1


def fd_discretize_matrix(values: np.ndarray, params: FdParams,
                         stats: DatasetStats) -> np.ndarray:
    """Discretize a (m, n) matrix of series row-wise into (m, n - w + 1) trits.

    Single pass shared by the one-series entry point and the classifier,
    which represents whole splits at once.
    """
    v = np.asarray(values, dtype=np.float64)
    if v.ndim == 1:
        v = v[None, :]
    if v.ndim != 2:
        raise DataError(f"expected a 1- or 2-dimensional array, got shape {v.shape}")
    w = params.window
    n = v.shape[1]
    if n < w:
        raise DataError(f"series length {n} shorter than window {w}")
    if stats.sigma == 0:
        raise DataError("degenerate stats: sigma is zero")

    tr = tritize(v, stats, params.alpha)
    win_t = sliding_window_view(tr, w, axis=1)
    pos = (win_t == 1).sum(axis=2)
    neg = (win_t == -1).sum(axis=2)
    out = np.sign(pos - neg).astype(np.int8)

    tied = (pos == neg) & (pos > 0)
    if tied.any():
        win_v = sliding_window_view(v, w, axis=1)[tied]
        wt = win_t[tied]
        vmax = np.where(wt == 1, win_v, -np.inf).max(axis=1)
        vmin = np.where(wt == -1, win_v, np.inf).min(axis=1)
        out[tied] = np.where(np.abs(vmax) >= np.abs(vmin), 1, -1).astype(np.int8)
    return out


def fd_discretize(t: TimeSeries, params: FdParams, stats: DatasetStats) -> FdVector:
    """Slide a width-``window`` window over the series and symbolize each
    position. Output length is ``len(t) - window + 1``."""
    trits = fd_discretize_matrix(t.values, params, stats)[0]
    return FdVector(trits, source_length=len(t), window=params.window)


def _check_pair(a: FdVector, b: FdVector) -> int:
    if len(a) != len(b):
        raise DataError(f"trit vectors differ in length: {len(a)} vs {len(b)}")
    return len(a)


def fd_similarity(a: FdVector, b: FdVector) -> int:
    """Count positions where both vectors carry the same nonzero trit.

    Matching zeros do not count: a flat stretch agrees with nothing,
    including another flat stretch.
    """
    _check_pair(a, b)
    return int(np.count_nonzero((a.trits == b.trits) & (a.trits != 0)))


def fdist(a: FdVector, b: FdVector) -> float:
    """Dissimilarity in [0, 1]: one minus the fraction of agreeing nonzero
    positions. Not a metric; a vector has nonzero self-distance unless every
    position is nonzero."""
    length = _check_pair(a, b)
    return 1.0 - fd_similarity(a, b) / length
