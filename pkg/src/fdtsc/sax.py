"""Symbolic aggregate baseline: z-normalization, piecewise aggregate
approximation, Gaussian-breakpoint symbolization, and the lower-bounding
word distance."""

from __future__ import annotations

import logging
from functools import lru_cache

import numpy as np
from scipy.stats import norm

from .core import DataError, SaxParams, SaxWord, TimeSeries

__all__ = [
    "NORM_TOLERANCE",
    "znormalize",
    "paa",
    "gaussian_breakpoints",
    "build_dist_table",
    "sax_word",
    "mindist",
]

log = logging.getLogger(__name__)

# Per-series standard deviations at or below this are treated as constant.
NORM_TOLERANCE = 1e-9


def znormalize(t: TimeSeries, *, degenerate: str = "error") -> TimeSeries:
    """Shift to zero mean and scale to unit population standard deviation.

    A series whose standard deviation does not exceed ``NORM_TOLERANCE``
    carries no shape information. ``degenerate="error"`` rejects it;
    ``degenerate="zero"`` substitutes the all-zero series and logs a warning.
    """
    if degenerate not in ("error", "zero"):
        raise ValueError(f"degenerate must be 'error' or 'zero', got {degenerate!r}")
    v = t.values
    if v.size < 2:
        raise DataError("cannot normalize a series shorter than 2 points")
    sd = float(np.std(v))
    if sd <= NORM_TOLERANCE:
        if degenerate == "error":
            raise DataError(f"degenerate series: standard deviation {sd} within tolerance")
        log.warning("constant series normalized to all zeros (sd=%g)", sd)
        return TimeSeries(np.zeros_like(v), label=t.label)
    return TimeSeries((v - float(np.mean(v))) / sd, label=t.label)


def _paa_values(v: np.ndarray, r: int) -> np.ndarray:
    n = v.size
    if n % r == 0:
        return v.reshape(r, n // r).mean(axis=1)
    # Frames of width n/r generally split source points; integrate the step
    # function exactly so total mass is preserved for any n, r.
    width = n / r
    edges = np.arange(r + 1) * width
    idx = np.minimum(np.floor(edges).astype(np.int64), n)
    frac = edges - idx
    cum = np.concatenate(([0.0], np.cumsum(v)))
    ext = np.concatenate((v, [0.0]))  # idx == n only where frac == 0
    at_edges = cum[idx] + frac * ext[idx]
    return np.diff(at_edges) / width


def paa(t: TimeSeries, segments: int) -> np.ndarray:
    """Reduce the series to ``segments`` frame means of equal width.

    When the length is not divisible by ``segments`` the frame boundaries
    fall inside points, and each straddled point contributes to both
    neighbours in proportion to the overlap.
    """
    n = len(t)
    if int(segments) != segments or not 1 <= segments <= n:
        raise DataError(f"segments must be an integer in [1, {n}], got {segments}")
    return _paa_values(t.values, int(segments))


@lru_cache(maxsize=None)
def gaussian_breakpoints(alphabet: int) -> np.ndarray:
    """The a-1 standard-normal quantiles that cut the real line into
    ``alphabet`` equiprobable intervals."""
    if int(alphabet) != alphabet or not 2 <= alphabet <= 20:
        raise DataError(f"alphabet size must be an integer in [2, 20], got {alphabet}")
    beta = norm.ppf(np.arange(1, alphabet) / alphabet)
    beta.setflags(write=False)
    return beta


@lru_cache(maxsize=None)
def build_dist_table(alphabet: int) -> np.ndarray:
    """Pairwise symbol distances: zero for adjacent or equal symbols,
    otherwise the gap between the breakpoints just inside the two cells."""
    beta = gaussian_breakpoints(alphabet)
    i = np.arange(alphabet)
    lo = np.minimum.outer(i, i)
    hi = np.maximum.outer(i, i)
    # indices clamped because np.where evaluates the unused branch too
    gap = beta[np.clip(hi - 1, 0, alphabet - 2)] - beta[np.clip(lo, 0, alphabet - 2)]
    table = np.where(hi - lo <= 1, 0.0, gap)
    table.setflags(write=False)
    return table


def sax_word(t: TimeSeries, params: SaxParams, *, degenerate: str = "error") -> SaxWord:
    """Normalize, aggregate, and map each frame mean to the 1-based index of
    its breakpoint interval. A mean lying exactly on a breakpoint takes the
    higher symbol."""
    n = len(t)
    if params.segments > n:
        raise DataError(f"segments {params.segments} exceed series length {n}")
    z = znormalize(t, degenerate=degenerate)
    means = _paa_values(z.values, params.segments)
    beta = gaussian_breakpoints(params.alphabet)
    # side="right" counts breakpoints <= mean, so a mean exactly on a
    # breakpoint lands in the higher cell.
    symbols = np.searchsorted(beta, means, side="right") + 1
    return SaxWord(symbols.astype(np.int16), source_length=n, alphabet=params.alphabet)


def mindist(a: SaxWord, b: SaxWord) -> float:
    """Lower bound on the Euclidean distance of the normalized sources.

    Never exceeds the true Euclidean distance between the two z-normalized
    series (the compression step only discards separation).
    """
    if len(a) != len(b):
        raise DataError(f"words differ in length: {len(a)} vs {len(b)}")
    if a.alphabet != b.alphabet:
        raise DataError(f"words differ in alphabet: {a.alphabet} vs {b.alphabet}")
    if a.source_length != b.source_length:
        raise DataError(
            f"words differ in source length: {a.source_length} vs {b.source_length}"
        )
    table = build_dist_table(a.alphabet)
    cells = table[a.symbols - 1, b.symbols - 1]
    return float(np.sqrt(a.source_length / len(a)) * np.sqrt(np.sum(cells * cells)))
