"""Command-line frontend.

Subcommands: ``repr`` (discretize series), ``decode`` (read binary vectors
back to text), ``classify`` (1NN evaluation of one split pair), ``bench``
(timed multi-dataset suite). Exit codes: 0 success, 1 usage error, 2 data
error, 3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .bench import (
    dataset_manifest,
    default_sax_segments,
    run_suite,
    write_suite,
)
from .codec import read_fdt, rle_encode, write_fdt
from .core import DataError, DatasetStats, FdParams, SaxParams
from .classifier import evaluate
from .dataset_io import compute_stats, data_root, load_ucr_file
from .fd import fd_discretize

__all__ = ["main", "run", "build_parser"]


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; the contract reserves 2 for data
    errors, so remap to 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fdtsc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("repr", help="discretize series into trit vectors")
    p.add_argument("--input", required=True, help="series file, one labeled row per series")
    p.add_argument("--window", type=int, required=True, help="sliding window width")
    p.add_argument("--alpha", type=float, required=True, help="deviation multiplier")
    p.add_argument("--stats-from", metavar="FILE",
                   help="compute mean/deviation from this file instead of the input")
    p.add_argument("--mu", type=float, help="explicit mean (requires --sigma)")
    p.add_argument("--sigma", type=float, help="explicit standard deviation (requires --mu)")
    out = p.add_mutually_exclusive_group()
    out.add_argument("--rle", metavar="FILE", help="write run-length text here")
    out.add_argument("--binary", metavar="FILE", help="write packed binary records here")
    p.set_defaults(func=cmd_repr)

    p = sub.add_parser("decode", help="expand binary trit records to run-length text")
    p.add_argument("--input", required=True, help="binary file written by repr --binary")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("classify", help="1NN evaluation of a train/test split pair")
    p.add_argument("--train", required=True)
    p.add_argument("--test", required=True)
    p.add_argument("--method", required=True, choices=("fd", "sax"))
    p.add_argument("--window", type=int, default=4)
    p.add_argument("--alpha", type=float, default=0.01)
    p.add_argument("--segments", type=int,
                   help="word length for sax (default: length/8, rounded)")
    p.add_argument("--alphabet", type=int, default=4)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("bench", help="timed suite over locally stored datasets")
    p.add_argument("--root", help="dataset root (default: $FD_TSC_DATA_ROOT)")
    p.add_argument("--datasets", default="all",
                   help="comma-separated names, or 'all' for the built-in manifest")
    p.add_argument("--repeats", type=int, default=10)
    p.add_argument("--window", type=int, default=4)
    p.add_argument("--alpha", type=float, default=0.01)
    p.add_argument("--segments", type=int,
                   help="fixed word length (default: per dataset, length/8)")
    p.add_argument("--alphabet", type=int, default=4)
    p.add_argument("--jobs", type=int, default=1,
                   help="parallel classification workers; timings are labeled")
    p.add_argument("--out", metavar="DIR", help="write CSV/SVG artifacts here")
    p.set_defaults(func=cmd_bench)
    return parser


def _dataset_name(path: str) -> str:
    stem = Path(path).stem
    for suffix in ("_TRAIN", "_TEST"):
        if stem.endswith(suffix):
            return stem[: -len(suffix)]
    return stem


def cmd_repr(args) -> int:
    if (args.mu is None) != (args.sigma is None):
        print("fdtsc repr: error: --mu and --sigma must be given together", file=sys.stderr)
        return 1
    if args.stats_from and args.mu is not None:
        print("fdtsc repr: error: --stats-from conflicts with --mu/--sigma", file=sys.stderr)
        return 1
    ds = load_ucr_file(args.input)
    if args.stats_from:
        stats, source = compute_stats(load_ucr_file(args.stats_from)), args.stats_from
    elif args.mu is not None:
        stats, source = DatasetStats(mu=args.mu, sigma=args.sigma), "explicit"
    else:
        stats, source = compute_stats(ds), "input"
    params = FdParams(window=args.window, alpha=args.alpha)
    vectors = [fd_discretize(s, params, stats) for s in ds.series]
    print(
        f"series={len(vectors)} window={params.window} alpha={params.alpha} "
        f"stats={source} mu={stats.mu:.6g} sigma={stats.sigma:.6g}",
        file=sys.stderr,
    )
    if args.binary:
        with open(args.binary, "wb") as fh:
            write_fdt(fh, vectors)
    elif args.rle:
        Path(args.rle).write_text(
            "".join(rle_encode(v) + "\n" for v in vectors), encoding="utf-8"
        )
    else:
        for v in vectors:
            print(rle_encode(v))
    return 0


def cmd_decode(args) -> int:
    with open(args.input, "rb") as fh:
        vectors = read_fdt(fh)
    for v in vectors:
        print(rle_encode(v))
    return 0


def cmd_classify(args) -> int:
    train = load_ucr_file(args.train)
    test = load_ucr_file(args.test)
    if args.method == "fd":
        params = FdParams(window=args.window, alpha=args.alpha)
    else:
        segments = args.segments or default_sax_segments(train.length)
        params = SaxParams(segments=segments, alphabet=args.alphabet)
    report = evaluate(train, test, args.method, params,
                      jobs=args.jobs, dataset=_dataset_name(args.train))
    if args.format == "json":
        payload = {
            "dataset": report.dataset,
            "method": report.method,
            "params": report.params,
            "error": report.error,
            "n_test": report.n_test,
            "seconds": report.mean_s,
            "confusion": {f"{t}->{p}": c for (t, p), c in sorted(report.confusion.items())},
        }
        print(json.dumps(payload, sort_keys=True))
    else:
        print("dataset,method,error,mean_s,min_s,max_s,params")
        print(
            f"{report.dataset},{report.method},{report.error!r},{report.mean_s!r},"
            f"{report.min_s!r},{report.max_s!r},{report.params_text()}"
        )
        print("confusion,true,predicted,count")
        for (t, p), c in sorted(report.confusion.items()):
            print(f"confusion,{t},{p},{c}")
    return 0


def cmd_bench(args) -> int:
    root = data_root(args.root)
    if root is None:
        print(
            "fdtsc bench: error: no dataset root; pass --root or set FD_TSC_DATA_ROOT",
            file=sys.stderr,
        )
        return 1
    if args.datasets.strip().lower() == "all":
        names = [row.name for row in dataset_manifest()]
    else:
        names = [n.strip() for n in args.datasets.split(",") if n.strip()]
        if not names:
            print("fdtsc bench: error: --datasets names nothing", file=sys.stderr)
            return 1
    fd_params = FdParams(window=args.window, alpha=args.alpha)
    sax_params = (
        SaxParams(segments=args.segments, alphabet=args.alphabet)
        if args.segments
        else None
    )
    result = run_suite(root, names, fd_params, sax_params,
                       repeats=args.repeats, jobs=args.jobs)

    print(f"{'dataset':<28} {'fd_err':>8} {'sax_err':>8} {'fd_s':>10} {'sax_s':>10} {'gain':>8}")
    for row in result.rows:
        if row.complete:
            print(
                f"{row.dataset:<28} {row.fd.error:>8.4f} {row.sax.error:>8.4f} "
                f"{row.fd.mean_s:>10.4f} {row.sax.mean_s:>10.4f} {row.speed_gain:>8.4f}"
            )
        else:
            print(f"{row.dataset:<28} FAILED: {row.failure}")
    print(f"tally (SAX wins / FD wins): {result.tally}")
    if args.out:
        paths = write_suite(result, args.out)
        for key in sorted(paths):
            print(f"wrote {paths[key]}", file=sys.stderr)
    return 0 if any(r.complete for r in result.rows) else 2


def main(argv=None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(name)s: %(message)s")
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except DataError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except Exception as e:  # invariant violations and genuine bugs
        print(f"internal error: {type(e).__name__}: {e}", file=sys.stderr)
        return 3


def run() -> None:
    sys.exit(main())
