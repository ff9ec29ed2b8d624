"""Ternary sliding-window time series representation with a fast
agreement-based distance, a symbolic aggregate baseline, compressed storage,
dataset IO, 1NN classification, and a benchmark harness."""

from .core import (
    DataError,
    DatasetStats,
    FdParams,
    FdVector,
    LabeledDataset,
    SaxParams,
    SaxWord,
    TimeSeries,
    ValidationResult,
    validate_dataset,
    validate_rows,
)
from .fd import (
    fd_discretize,
    fd_discretize_matrix,
    fd_similarity,
    fdist,
    symbolize_segment,
    tritize,
    tritize_point,
)
from .sax import (
    NORM_TOLERANCE,
    build_dist_table,
    gaussian_breakpoints,
    mindist,
    paa,
    sax_word,
    znormalize,
)
from .codec import (
    MAGIC,
    pack_trits,
    read_fdt,
    rle_decode,
    rle_encode,
    rle_expand,
    unpack_trits,
    write_fdt,
)
from .dataset_io import (
    DATA_ROOT_ENV,
    ManifestRow,
    compute_stats,
    data_root,
    dataset_manifest,
    load_ucr_file,
    load_ucr_pair,
    manifest_row,
)
from .classifier import (
    EvalReport,
    Prediction,
    ReferenceStore,
    build_store,
    classify_1nn,
    evaluate,
)
from .bench import (
    REFERENCE_ERRORS,
    REFERENCE_TIMES_S,
    SuiteResult,
    SuiteRow,
    default_sax_segments,
    distance_microbenchmark,
    emit_bars,
    emit_results_csv,
    emit_runs_csv,
    emit_scatter,
    emit_speed_gain_csv,
    run_suite,
    time_method,
    write_suite,
)

__version__ = "0.1.0"
