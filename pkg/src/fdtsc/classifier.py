"""1NN classification over either representation, plus split evaluation."""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .core import (
    DataError,
    DatasetStats,
    FdParams,
    FdVector,
    LabeledDataset,
    SaxParams,
    SaxWord,
    TimeSeries,
)
from .dataset_io import compute_stats
from .fd import fd_discretize_matrix
from .sax import build_dist_table, sax_word

__all__ = ["ReferenceStore", "Prediction", "EvalReport", "build_store", "classify_1nn", "evaluate"]


class Prediction(NamedTuple):
    label: int
    index: int
    distance: float


@dataclass(frozen=True, eq=False)
class ReferenceStore:
    """Immutable train-split representations with parallel labels.

    ``matrix`` holds one representation per row: trits for method "fd",
    1-based symbols for method "sax". Queries only read, so any number may
    run concurrently.
    """

    method: str
    matrix: np.ndarray
    labels: np.ndarray
    params: FdParams | SaxParams
    source_length: int
    stats: DatasetStats | None = None

    def __post_init__(self):
        if self.method not in ("fd", "sax"):
            raise DataError(f"unknown method {self.method!r}")
        m = np.asarray(self.matrix)
        lab = np.asarray(self.labels, dtype=np.int64)
        if m.ndim != 2 or m.shape[0] == 0:
            raise DataError("store must hold at least one representation")
        if lab.shape != (m.shape[0],):
            raise DataError(
                f"{m.shape[0]} representations but {lab.size} labels"
            )
        m.setflags(write=False)
        lab.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "labels", lab)

    def __len__(self) -> int:
        return int(self.matrix.shape[0])

    @property
    def representations(self) -> tuple:
        """Row views wrapped back into their value objects."""
        if self.method == "fd":
            w = self.params.window
            return tuple(
                FdVector(row, source_length=self.source_length, window=w)
                for row in self.matrix
            )
        return tuple(
            SaxWord(row, source_length=self.source_length, alphabet=self.params.alphabet)
            for row in self.matrix
        )


def _represent_matrix(values: np.ndarray, method: str, params,
                      stats: DatasetStats | None) -> np.ndarray:
    if method == "fd":
        return fd_discretize_matrix(values, params, stats)
    # Constant series carry no shape; they normalize to all zeros (with a
    # warning) rather than failing a whole split.
    words = [sax_word(TimeSeries(row), params, degenerate="zero") for row in values]
    return np.stack([w.symbols for w in words])


def build_store(train: LabeledDataset, method: str, params,
                stats: DatasetStats | None = None) -> ReferenceStore:
    """Represent a training split. For "fd", stats default to the pooled
    train statistics; "sax" normalizes per series and takes none."""
    if method == "fd":
        if not isinstance(params, FdParams):
            raise DataError("method 'fd' requires FdParams")
        if stats is None:
            stats = compute_stats(train)
    elif method == "sax":
        if not isinstance(params, SaxParams):
            raise DataError("method 'sax' requires SaxParams")
        stats = None
    else:
        raise DataError(f"unknown method {method!r}")
    matrix = _represent_matrix(train.values_matrix(), method, params, stats)
    return ReferenceStore(
        method=method,
        matrix=matrix,
        labels=train.labels,
        params=params,
        source_length=train.length,
        stats=stats,
    )


def _fd_distances(store_matrix: np.ndarray, query: np.ndarray) -> np.ndarray:
    sims = ((store_matrix == query) & (query != 0)).sum(axis=1)
    return 1.0 - sims / store_matrix.shape[1]


def _sax_distances(store_matrix: np.ndarray, query: np.ndarray,
                   table: np.ndarray, source_length: int) -> np.ndarray:
    cells = table[store_matrix - 1, query - 1]
    scale = np.sqrt(source_length / store_matrix.shape[1])
    return scale * np.sqrt((cells * cells).sum(axis=1))


def _query_vector(store: ReferenceStore, query) -> np.ndarray:
    if store.method == "fd":
        if not isinstance(query, FdVector):
            raise DataError("fd store requires an FdVector query")
        if len(query) != store.matrix.shape[1]:
            raise DataError(
                f"query length {len(query)} does not match store length {store.matrix.shape[1]}"
            )
        return query.trits
    if not isinstance(query, SaxWord):
        raise DataError("sax store requires a SaxWord query")
    if len(query) != store.matrix.shape[1]:
        raise DataError(
            f"query length {len(query)} does not match store length {store.matrix.shape[1]}"
        )
    if query.alphabet != store.params.alphabet:
        raise DataError(
            f"query alphabet {query.alphabet} does not match store alphabet {store.params.alphabet}"
        )
    if query.source_length != store.source_length:
        raise DataError(
            f"query source length {query.source_length} does not match store {store.source_length}"
        )
    return query.symbols


def classify_1nn(store: ReferenceStore, query) -> Prediction:
    """Nearest neighbour by the store's own distance; distance ties go to
    the lowest store index."""
    qv = _query_vector(store, query)
    if store.method == "fd":
        dists = _fd_distances(store.matrix, qv)
    else:
        dists = _sax_distances(
            store.matrix, qv, build_dist_table(store.params.alphabet), store.source_length
        )
    idx = int(np.argmin(dists))  # first occurrence wins ties
    return Prediction(label=int(store.labels[idx]), index=idx, distance=float(dists[idx]))


def _classify_block(store: ReferenceStore, queries: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Predict labels and matched indices for a block of query rows."""
    n = queries.shape[0]
    labels = np.empty(n, dtype=np.int64)
    indices = np.empty(n, dtype=np.int64)
    if store.method == "fd":
        for i in range(n):
            d = _fd_distances(store.matrix, queries[i])
            j = int(np.argmin(d))
            indices[i] = j
            labels[i] = store.labels[j]
    else:
        table = build_dist_table(store.params.alphabet)
        for i in range(n):
            d = _sax_distances(store.matrix, queries[i], table, store.source_length)
            j = int(np.argmin(d))
            indices[i] = j
            labels[i] = store.labels[j]
    return labels, indices


def _classify_matrix(store: ReferenceStore, queries: np.ndarray, jobs: int = 1):
    if jobs <= 1 or queries.shape[0] < 2 * jobs:
        return _classify_block(store, queries)
    # Per-query argmin is worker-local, so any split yields serial results.
    bounds = np.array_split(np.arange(queries.shape[0]), jobs)
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        parts = list(pool.map(lambda ix: _classify_block(store, queries[ix]), bounds))
    labels = np.concatenate([p[0] for p in parts])
    indices = np.concatenate([p[1] for p in parts])
    return labels, indices


@dataclass(frozen=True)
class EvalReport:
    """Outcome of classifying one test split against one train split."""

    dataset: str
    method: str  # "FD" | "SAX"
    params: dict
    error: float
    confusion: dict
    n_test: int
    predictions: tuple
    repeats: int = 1
    mean_s: float = 0.0
    min_s: float = 0.0
    max_s: float = 0.0
    run_seconds: tuple = ()
    repr_seconds: tuple = ()
    query_seconds: tuple = ()
    jobs: int = 1

    def __post_init__(self):
        if not 0.0 <= self.error <= 1.0:
            raise DataError(f"error rate {self.error} outside [0, 1]")
        if sum(self.confusion.values()) != self.n_test:
            raise DataError("confusion counts must sum to the test size")

    def params_text(self) -> str:
        items = ";".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        return items if self.jobs == 1 else f"{items};jobs={self.jobs}"


def _method_tag(method: str) -> str:
    return {"fd": "FD", "sax": "SAX"}[method]


def evaluate(train: LabeledDataset, test: LabeledDataset, method: str, params,
             *, jobs: int = 1, dataset: str | None = None) -> EvalReport:
    """Fit on train only, represent both splits, classify every test series,
    and report the exact misclassification fraction with one timed pass.

    The wall-clock figures cover representation plus classification; the two
    phases are also reported separately.
    """
    if train.length != test.length:
        raise DataError(
            f"train series length {train.length} differs from test {test.length}"
        )
    train_labels = set(train.labels.tolist())
    missing = sorted(set(test.labels.tolist()) - train_labels)
    if missing:
        raise DataError(f"test labels {missing} never appear in the train split")

    t0 = time.perf_counter()
    store = build_store(train, method, params)
    queries = _represent_matrix(test.values_matrix(), method, params, store.stats)
    t1 = time.perf_counter()
    pred_labels, _ = _classify_matrix(store, queries, jobs=jobs)
    t2 = time.perf_counter()

    truth = test.labels
    wrong = int(np.count_nonzero(pred_labels != truth))
    confusion: dict[tuple[int, int], int] = {}
    for t, p in zip(truth.tolist(), pred_labels.tolist()):
        confusion[(t, p)] = confusion.get((t, p), 0) + 1

    if method == "fd":
        pdict = {"window": params.window, "alpha": params.alpha, "stats": "train"}
    else:
        pdict = {"segments": params.segments, "alphabet": params.alphabet}
    name = dataset if dataset is not None else train.name
    total = t2 - t0
    return EvalReport(
        dataset=name,
        method=_method_tag(method),
        params=pdict,
        error=wrong / len(test),
        confusion=confusion,
        n_test=len(test),
        predictions=tuple(int(x) for x in pred_labels),
        repeats=1,
        mean_s=total,
        min_s=total,
        max_s=total,
        run_seconds=(total,),
        repr_seconds=(t1 - t0,),
        query_seconds=(t2 - t1,),
        jobs=jobs,
    )
