"""Domain types shared by every module: series, datasets, parameters, errors."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "DataError",
    "TimeSeries",
    "LabeledDataset",
    "DatasetStats",
    "FdParams",
    "FdVector",
    "SaxParams",
    "SaxWord",
    "ValidationResult",
    "validate_rows",
    "validate_dataset",
]

TRITS = (-1, 0, 1)


class DataError(ValueError):
    """Invalid or inconsistent input data (bad file, bad shape, bad parameter)."""


def _as_float_vector(values, what: str) -> np.ndarray:
    v = np.asarray(values, dtype=np.float64)
    if v.ndim != 1:
        raise DataError(f"{what} must be one-dimensional, got shape {v.shape}")
    if v.size == 0:
        raise DataError(f"{what} is empty")
    if not np.all(np.isfinite(v)):
        raise DataError(f"{what} contains a non-finite value")
    v.setflags(write=False)
    return v


@dataclass(frozen=True, eq=False)
class TimeSeries:
    """A finite, non-empty sequence of real values with an optional integer label."""

    values: np.ndarray
    label: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "values", _as_float_vector(self.values, "series"))
        if self.label is not None:
            object.__setattr__(self, "label", int(self.label))

    def __len__(self) -> int:
        return int(self.values.size)


@dataclass(frozen=True)
class ValidationResult:
    ok: bool
    index: int | None = None
    reason: str | None = None


def validate_rows(rows: Iterable[tuple[object, Sequence[float]]],
                  expected_length: int | None = None) -> ValidationResult:
    """Check (label, values) rows for the dataset invariants.

    Reports the index and reason of the first violation instead of raising,
    so callers can attach file/line context. Rows must be non-empty, finite,
    labeled, and share one length (seeded by ``expected_length`` if given).
    """
    n = expected_length
    count = 0
    for i, (label, values) in enumerate(rows):
        count += 1
        v = np.asarray(values, dtype=np.float64)
        if v.ndim != 1 or v.size == 0:
            return ValidationResult(False, i, "empty series")
        if not np.all(np.isfinite(v)):
            return ValidationResult(False, i, "non-finite value")
        if label is None:
            return ValidationResult(False, i, "missing label")
        if n is None:
            n = int(v.size)
        elif v.size != n:
            return ValidationResult(False, i, f"length mismatch: expected {n}, got {v.size}")
    if count == 0:
        return ValidationResult(False, None, "empty dataset")
    return ValidationResult(True)


@dataclass(frozen=True, eq=False)
class LabeledDataset:
    """Equal-length labeled series under one name. Construction validates;
    ``expected_length`` defaults to the first series' length."""

    name: str
    series: tuple[TimeSeries, ...]
    expected_length: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "series", tuple(self.series))
        res = validate_rows(
            ((s.label, s.values) for s in self.series), self.expected_length
        )
        if not res.ok:
            where = f" (series {res.index})" if res.index is not None else ""
            raise DataError(f"{self.name}: {res.reason}{where}")
        if self.expected_length is None:
            object.__setattr__(self, "expected_length", len(self.series[0]))

    @classmethod
    def from_rows(cls, name: str, rows: Iterable[tuple[int, Sequence[float]]]) -> "LabeledDataset":
        return cls(name, tuple(TimeSeries(v, label=l) for l, v in rows))

    @property
    def length(self) -> int:
        return int(self.expected_length)

    @property
    def labels(self) -> np.ndarray:
        return np.array([s.label for s in self.series], dtype=np.int64)

    def values_matrix(self) -> np.ndarray:
        return np.stack([s.values for s in self.series])

    def __len__(self) -> int:
        return len(self.series)


def validate_dataset(d: LabeledDataset) -> ValidationResult:
    return validate_rows(((s.label, s.values) for s in d.series))


@dataclass(frozen=True)
class DatasetStats:
    """Pooled mean and population standard deviation of a training split."""

    mu: float
    sigma: float

    def __post_init__(self):
        if not (np.isfinite(self.mu) and np.isfinite(self.sigma)):
            raise DataError("stats must be finite")
        if self.sigma < 0:
            raise DataError(f"sigma must be non-negative, got {self.sigma}")


@dataclass(frozen=True)
class FdParams:
    """Sliding-window width and deviation multiplier for tritization."""

    window: int = 4
    alpha: float = 0.01

    def __post_init__(self):
        if int(self.window) != self.window or self.window < 1:
            raise DataError(f"window must be a positive integer, got {self.window}")
        object.__setattr__(self, "window", int(self.window))
        if not np.isfinite(self.alpha) or self.alpha < 0:
            raise DataError(f"alpha must be finite and non-negative, got {self.alpha}")


@dataclass(frozen=True, eq=False)
class FdVector:
    """Ternary representation of one series: one trit per window position.

    Keeps the source length so the window width stays recoverable
    (window = source_length - len(trits) + 1).
    """

    trits: np.ndarray
    source_length: int
    window: int

    def __post_init__(self):
        t = np.asarray(self.trits, dtype=np.int8)
        if t.ndim != 1 or t.size == 0:
            raise DataError("trit vector must be a non-empty one-dimensional array")
        if not np.isin(t, TRITS).all():
            raise DataError("trit values must be -1, 0, or +1")
        t.setflags(write=False)
        object.__setattr__(self, "trits", t)
        expected = self.source_length - self.window + 1
        if t.size != expected:
            raise DataError(
                f"trit count {t.size} inconsistent with source length "
                f"{self.source_length} and window {self.window}"
            )

    def __len__(self) -> int:
        return int(self.trits.size)

    @property
    def nonzero_count(self) -> int:
        return int(np.count_nonzero(self.trits))


@dataclass(frozen=True)
class SaxParams:
    """Segment count and alphabet size for the symbolic baseline."""

    segments: int
    alphabet: int = 4

    def __post_init__(self):
        if int(self.segments) != self.segments or self.segments < 1:
            raise DataError(f"segments must be a positive integer, got {self.segments}")
        object.__setattr__(self, "segments", int(self.segments))
        if int(self.alphabet) != self.alphabet or not 2 <= self.alphabet <= 20:
            raise DataError(f"alphabet size must be an integer in [2, 20], got {self.alphabet}")
        object.__setattr__(self, "alphabet", int(self.alphabet))


@dataclass(frozen=True, eq=False)
class SaxWord:
    """Symbolic word over alphabet {1..a}, one symbol per segment."""

    symbols: np.ndarray
    source_length: int
    alphabet: int

    def __post_init__(self):
        s = np.asarray(self.symbols, dtype=np.int16)
        if s.ndim != 1 or s.size == 0:
            raise DataError("symbol vector must be a non-empty one-dimensional array")
        if s.min() < 1 or s.max() > self.alphabet:
            raise DataError(f"symbols must lie in [1, {self.alphabet}]")
        if s.size > self.source_length:
            raise DataError("more segments than source points")
        s.setflags(write=False)
        object.__setattr__(self, "symbols", s)

    def __len__(self) -> int:
        return int(self.symbols.size)
