"""Timing and accuracy harness: repeated evaluation runs, win/loss tallies,
CSV emission, and plot data for error comparison charts."""

from __future__ import annotations

import json
import logging
import platform
import time
from dataclasses import dataclass, replace
from pathlib import Path
from statistics import fmean
from typing import Iterable, Sequence

import numpy as np

from .classifier import EvalReport, evaluate
from .core import DataError, FdParams, SaxParams
from .dataset_io import dataset_manifest, load_ucr_pair, manifest_row

__all__ = [
    "REFERENCE_ERRORS",
    "REFERENCE_TIMES_S",
    "default_sax_segments",
    "distance_microbenchmark",
    "time_method",
    "SuiteRow",
    "SuiteResult",
    "run_suite",
    "emit_results_csv",
    "emit_speed_gain_csv",
    "emit_runs_csv",
    "emit_scatter",
    "emit_bars",
    "write_suite",
]

log = logging.getLogger(__name__)

# Published reference results for this method pair on the 29 archive sets,
# kept as context for comparing a local reproduction. Errors are
# (sax, fd); times are (fd_seconds, sax_seconds, speed_gain) measured on
# hardware that is not ours, so they are never asserted, only reported.
REFERENCE_ERRORS = {
    "ChlorineConcentration": (0.742, 0.482),
    "CinCECGTorso": (0.304, 0.277),
    "ECG5000": (0.195, 0.097),
    "ElectricDevices": (0.878, 0.545),
    "FaceAll": (0.571, 0.305),
    "FacesUCR": (0.476, 0.251),
    "FordA": (0.378, 0.348),
    "InsectWingbeatSound": (0.494, 0.449),
    "ItalyPowerDemand": (0.459, 0.373),
    "Mallat": (0.668, 0.311),
    "MoteStrain": (0.277, 0.215),
    "NonInvasiveFetalECGThorax1": (0.908, 0.414),
    "NonInvasiveFetalECGThorax2": (0.871, 0.370),
    "Phoneme": (0.946, 0.929),
    "StarLightCurves": (0.165, 0.146),
    "Symbols": (0.354, 0.220),
    "TwoLeadECG": (0.475, 0.310),
    "TwoPatterns": (0.307, 0.546),
    "UWaveGestureLibraryAll": (0.062, 0.076),
    "UWaveGestureLibraryX": (0.414, 0.387),
    "UWaveGestureLibraryY": (0.463, 0.474),
    "UWaveGestureLibraryZ": (0.420, 0.478),
    "Wafer": (0.006, 0.004),
    "Yoga": (0.390, 0.231),
    "Crop": (0.918, 0.595),
    "FreezerRegularTrain": (0.496, 0.413),
    "FreezerSmallTrain": (0.330, 0.327),
    "MixedShapesRegularTrain": (0.231, 0.209),
    "MixedShapesSmallTrain": (0.233, 0.254),
}

REFERENCE_TIMES_S = {
    "ChlorineConcentration": (4.49, 8.14, 1.8129),
    "CinCECGTorso": (2.54, 35.33, 13.9094),
    "ECG5000": (4.95, 21.37, 4.3172),
    "ElectricDevices": (144.37, 329.55, 2.2827),
    "FaceAll": (2.43, 4.02, 1.6543),
    "FacesUCR": (0.12, 0.17, 1.4167),
    "FordA": (3.80, 15.01, 3.9500),
    "InsectWingbeatSound": (1.71, 6.54, 3.8246),
    "ItalyPowerDemand": (0.13, 0.40, 3.0769),
    "Mallat": (0.33, 1.42, 4.3030),
    "MoteStrain": (0.16, 0.24, 1.5000),
    "NonInvasiveFetalECGThorax1": (24.40, 165.17, 6.7693),
    "NonInvasiveFetalECGThorax2": (24.48, 146.56, 5.9869),
    "Phoneme": (5.32, 40.74, 7.6579),
    "StarLightCurves": (99.39, 663.06, 6.6713),
    "Symbols": (0.47, 0.42, 0.8936),
    "TwoLeadECG": (0.15, 0.13, 0.8667),
    "TwoPatterns": (9.72, 19.24, 1.9794),
    "UWaveGestureLibraryAll": (37.81, 205.49, 5.4348),
    "UWaveGestureLibraryX": (10.94, 36.17, 3.3062),
    "UWaveGestureLibraryY": (10.75, 36.38, 3.3842),
    "UWaveGestureLibraryZ": (13.06, 61.20, 4.6861),
    "Wafer": (13.54, 33.08, 2.4431),
    "Yoga": (4.39, 24.47, 5.5740),
    "Crop": (214.48, 459.17, 2.1409),
    "FreezerRegularTrain": (2.09, 7.67, 3.6699),
    "FreezerSmallTrain": (1.04, 1.15, 1.1058),
    "MixedShapesRegularTrain": (11.52, 87.38, 7.5851),
    "MixedShapesSmallTrain": (3.86, 19.57, 5.0699),
}


def default_sax_segments(n: int) -> int:
    """Word length when none is requested: an eighth of the series, at least 1."""
    return max(1, round(n / 8))


def time_method(train, test, method: str, params, *, repeats: int = 10,
                warmup: bool = True, jobs: int = 1,
                dataset: str | None = None) -> EvalReport:
    """Run the full representation + classification pass ``repeats`` times
    and fold the wall-clock samples into one report.

    A warm-up pass (excluded from the samples) absorbs cold caches and lazy
    imports. Timing never alters results; identical predictions across runs
    are enforced.
    """
    if repeats < 1:
        raise DataError(f"repeats must be at least 1, got {repeats}")
    if warmup:
        evaluate(train, test, method, params, jobs=jobs, dataset=dataset)
    runs = [
        evaluate(train, test, method, params, jobs=jobs, dataset=dataset)
        for _ in range(repeats)
    ]
    first = runs[0]
    for r in runs[1:]:
        if r.predictions != first.predictions:
            raise RuntimeError(
                f"nondeterministic predictions across timed runs on {first.dataset}"
            )
    times = [r.mean_s for r in runs]
    return replace(
        first,
        repeats=repeats,
        mean_s=fmean(times),
        min_s=min(times),
        max_s=max(times),
        run_seconds=tuple(times),
        repr_seconds=tuple(r.repr_seconds[0] for r in runs),
        query_seconds=tuple(r.query_seconds[0] for r in runs),
    )


def distance_microbenchmark(length: int = 128, store_size: int = 2048,
                            queries: int = 64, rounds: int = 3,
                            alphabet: int = 4, seed: int = 0) -> dict:
    """Time full-store distance scans for both methods at equal
    representation length; gain > 1 means the trit distance ran faster.

    Representation cost is excluded on purpose: this isolates the per-pair
    distance work, which is the claim the gain figures rest on.
    """
    from .classifier import _fd_distances, _sax_distances
    from .sax import build_dist_table

    rng = np.random.default_rng(seed)
    trits = rng.integers(-1, 2, size=(store_size, length)).astype(np.int8)
    trit_queries = rng.integers(-1, 2, size=(queries, length)).astype(np.int8)
    syms = rng.integers(1, alphabet + 1, size=(store_size, length)).astype(np.int16)
    sym_queries = rng.integers(1, alphabet + 1, size=(queries, length)).astype(np.int16)
    table = build_dist_table(alphabet)
    source_length = 8 * length  # scale factor only; irrelevant to timing

    _fd_distances(trits, trit_queries[0])
    _sax_distances(syms, sym_queries[0], table, source_length)

    fd_best = sax_best = float("inf")
    for _ in range(rounds):
        t0 = time.perf_counter()
        for q in trit_queries:
            _fd_distances(trits, q)
        fd_best = min(fd_best, time.perf_counter() - t0)
        t0 = time.perf_counter()
        for q in sym_queries:
            _sax_distances(syms, q, table, source_length)
        sax_best = min(sax_best, time.perf_counter() - t0)
    return {
        "length": length,
        "store_size": store_size,
        "queries": queries,
        "fd_s": fd_best,
        "sax_s": sax_best,
        "gain": sax_best / fd_best,
    }


@dataclass(frozen=True)
class SuiteRow:
    dataset: str
    fd: EvalReport | None = None
    sax: EvalReport | None = None
    failure: str | None = None

    @property
    def complete(self) -> bool:
        return self.fd is not None and self.sax is not None

    @property
    def speed_gain(self) -> float | None:
        """How many times faster FD ran than the baseline (mean over runs)."""
        if not self.complete or self.fd.mean_s == 0:
            return None
        return self.sax.mean_s / self.fd.mean_s


@dataclass(frozen=True)
class SuiteResult:
    rows: tuple[SuiteRow, ...]
    repeats: int
    jobs: int

    @property
    def tally(self) -> str:
        """Win counts as '<baseline wins>/<n> <fd wins>/<n>' over complete rows.

        Equal errors count as a win for neither side.
        """
        done = [r for r in self.rows if r.complete]
        n = len(done)
        sax_wins = sum(1 for r in done if r.sax.error < r.fd.error)
        fd_wins = sum(1 for r in done if r.fd.error < r.sax.error)
        return f"{sax_wins}/{n} {fd_wins}/{n}"

    def scatter_points(self) -> list[tuple[str, float, float]]:
        return [(r.dataset, r.fd.error, r.sax.error) for r in self.rows if r.complete]

    def reports(self) -> list[EvalReport]:
        out: list[EvalReport] = []
        for r in self.rows:
            if r.fd is not None:
                out.append(r.fd)
            if r.sax is not None:
                out.append(r.sax)
        return out


def run_suite(root, names: Sequence[str], fd_params: FdParams | None = None,
              sax_params: SaxParams | None = None, *, repeats: int = 10,
              jobs: int = 1) -> SuiteResult:
    """Evaluate both methods on each named dataset under ``root``.

    Per-dataset failures are recorded in the row and the suite continues.
    A name outside the 29-dataset manifest gets a warning, as does a test
    split whose size disagrees with the manifest.
    """
    fd_params = fd_params or FdParams()
    rows: list[SuiteRow] = []
    for name in names:
        row = manifest_row(name)
        if row is None:
            log.warning(
                "%s is not one of the %d manifest datasets; attempting anyway",
                name, len(dataset_manifest()),
            )
        try:
            train, test = load_ucr_pair(root, name)
            if row is not None and len(test) != row.size:
                log.warning(
                    "%s: test split holds %d series, manifest says %d",
                    name, len(test), row.size,
                )
            sp = sax_params or SaxParams(segments=default_sax_segments(train.length))
            fd_rep = time_method(train, test, "fd", fd_params,
                                 repeats=repeats, jobs=jobs, dataset=name)
            sax_rep = time_method(train, test, "sax", sp,
                                  repeats=repeats, jobs=jobs, dataset=name)
            rows.append(SuiteRow(name, fd=fd_rep, sax=sax_rep))
        except (DataError, OSError) as e:
            log.error("%s: %s", name, e)
            rows.append(SuiteRow(name, failure=str(e)))
    return SuiteResult(rows=tuple(rows), repeats=repeats, jobs=jobs)


def _fmt(x: float) -> str:
    # repr keeps the shortest exact form, so identical reports give
    # byte-identical files.
    return repr(float(x))


def emit_results_csv(reports: Iterable[EvalReport], path) -> Path:
    path = Path(path)
    lines = ["dataset,method,error,mean_s,min_s,max_s,params"]
    for r in reports:
        lines.append(
            f"{r.dataset},{r.method},{_fmt(r.error)},{_fmt(r.mean_s)},"
            f"{_fmt(r.min_s)},{_fmt(r.max_s)},{r.params_text()}"
        )
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def emit_speed_gain_csv(result: SuiteResult, path) -> Path:
    path = Path(path)
    lines = ["dataset,fd_s,sax_s,gain"]
    for row in result.rows:
        if row.complete:
            lines.append(
                f"{row.dataset},{_fmt(row.fd.mean_s)},{_fmt(row.sax.mean_s)},"
                f"{_fmt(row.speed_gain)}"
            )
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def emit_runs_csv(reports: Iterable[EvalReport], path) -> Path:
    """Per-run log; the summary statistics are recomputable from it."""
    path = Path(path)
    lines = ["dataset,method,run,seconds,repr_s,query_s"]
    for r in reports:
        for i, (s, rs, qs) in enumerate(zip(r.run_seconds, r.repr_seconds, r.query_seconds)):
            lines.append(f"{r.dataset},{r.method},{i},{_fmt(s)},{_fmt(rs)},{_fmt(qs)}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def emit_scatter(points: Iterable[tuple[str, float, float]], csv_path,
                 svg_path=None) -> Path:
    """Error-vs-error plot data: x = FD error, y = baseline error, so points
    above the y = x diagonal are datasets where FD classified better."""
    pts = list(points)
    if not pts:
        raise DataError("no points to plot")
    csv_path = Path(csv_path)
    lines = ["dataset,fd_error,sax_error"]
    for name, fd_e, sax_e in pts:
        lines.append(f"{name},{_fmt(fd_e)},{_fmt(sax_e)}")
    csv_path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    if svg_path is not None:
        _render_scatter(pts, Path(svg_path))
    return csv_path


def emit_bars(points: Iterable[tuple[str, float, float]], csv_path,
              svg_path=None) -> Path:
    """Paired error bars per dataset, FD then baseline, in input order."""
    pts = list(points)
    if not pts:
        raise DataError("no points to plot")
    csv_path = Path(csv_path)
    lines = ["dataset,method,error"]
    for name, fd_e, sax_e in pts:
        lines.append(f"{name},FD,{_fmt(fd_e)}")
        lines.append(f"{name},SAX,{_fmt(sax_e)}")
    csv_path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    if svg_path is not None:
        _render_bars(pts, Path(svg_path))
    return csv_path


def _svg_figure():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def _save_svg(fig, path: Path) -> None:
    import matplotlib

    # Fixed hash salt and no date stamp keep reruns byte-identical.
    with matplotlib.rc_context({"svg.hashsalt": "fdtsc"}):
        fig.savefig(path, format="svg", metadata={"Date": None})


def _render_scatter(pts, path: Path) -> None:
    plt = _svg_figure()
    fig, ax = plt.subplots(figsize=(5, 5))
    xs = [p[1] for p in pts]
    ys = [p[2] for p in pts]
    lim = max(0.05, max(xs + ys) * 1.05)
    ax.plot([0, lim], [0, lim], lw=1, color="#888888", zorder=1)
    ax.scatter(xs, ys, s=18, color="#d4a017", zorder=2)
    ax.set_xlim(0, lim)
    ax.set_ylim(0, lim)
    ax.set_xlabel("FD error")
    ax.set_ylabel("SAX error")
    fig.tight_layout()
    _save_svg(fig, path)
    plt.close(fig)


def _render_bars(pts, path: Path) -> None:
    plt = _svg_figure()
    fig, ax = plt.subplots(figsize=(max(4.0, 0.45 * len(pts)), 4))
    idx = np.arange(len(pts))
    width = 0.4
    ax.bar(idx - width / 2, [p[1] for p in pts], width, label="FD", color="#d4a017")
    ax.bar(idx + width / 2, [p[2] for p in pts], width, label="SAX", color="#2060c0")
    ax.set_xticks(idx)
    ax.set_xticklabels([p[0] for p in pts], rotation=90, fontsize=7)
    ax.set_ylabel("error")
    ax.legend()
    fig.tight_layout()
    _save_svg(fig, path)
    plt.close(fig)


def write_suite(result: SuiteResult, out_dir) -> dict[str, Path]:
    """Write every suite artifact under ``out_dir`` and return the paths.

    Data files depend only on the reports; the run timestamp lives in
    meta.json alone.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    reports = result.reports()
    pts = result.scatter_points()
    paths = {
        "results": emit_results_csv(reports, out / "results.csv"),
        "speed_gain": emit_speed_gain_csv(result, out / "speed_gain.csv"),
        "runs": emit_runs_csv(reports, out / "runs.csv"),
    }
    if pts:
        paths["scatter"] = emit_scatter(pts, out / "scatter.csv", out / "scatter.svg")
        paths["bars"] = emit_bars(pts, out / "bars.csv", out / "bars.svg")
        paths["suite"] = _emit_suite_csv(result, out / "suite.csv")
    meta = {
        "created": time.strftime("%Y-%m-%dT%H:%M:%S%z"),
        "repeats": result.repeats,
        "jobs": result.jobs,
        "tally": result.tally,
        "python": platform.python_version(),
        "numpy": np.__version__,
        "failures": {r.dataset: r.failure for r in result.rows if r.failure},
    }
    meta_path = out / "meta.json"
    meta_path.write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    paths["meta"] = meta_path
    return paths


def _emit_suite_csv(result: SuiteResult, path: Path) -> Path:
    """Joint per-dataset table with the win/loss tally as the final row."""
    lines = ["dataset,fd_error,sax_error,fd_mean_s,sax_mean_s,speed_gain"]
    for row in result.rows:
        if row.complete:
            lines.append(
                f"{row.dataset},{_fmt(row.fd.error)},{_fmt(row.sax.error)},"
                f"{_fmt(row.fd.mean_s)},{_fmt(row.sax.mean_s)},{_fmt(row.speed_gain)}"
            )
        else:
            lines.append(f"{row.dataset},,,,,")
    sax_wins, fd_wins = result.tally.split(" ")
    lines.append(f"TALLY,{fd_wins},{sax_wins},,,")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path
