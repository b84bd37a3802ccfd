"""Command-line runner: ratings ingestion, cover construction, trace output.

Input formats (user, item, rating, extras ignored per line):
  tab           tab-separated, no header
  double-colon  '::'-separated, no header
  comma         comma-separated, header line expected

Raw ids are remapped to dense 0-based indices in first-appearance order;
ratings are kept as-is. The trace CSV has columns epoch,seconds,rmse,beta
with floats written in shortest round-trip form.
"""

import argparse
import os
import struct
import sys
from dataclasses import dataclass

import numpy as np

from .model import SparseObservations, rmse as model_rmse
from .optimizer import DivergenceError, RunConfig, TraceRecord, run
from .partition import (SINGLETON_SCHEMES, STRATA_SCHEMES, greedy_color,
                        hogwild_cover, pack_colors, stratify)

__all__ = [
    "IdRemap",
    "load_ratings",
    "write_trace",
    "read_trace",
    "dump_factors",
    "build_cover",
    "main",
]

FORMATS = {
    "tab": ("\t", False),
    "double-colon": ("::", False),
    "comma": (",", True),
}

FACTOR_MAGIC = b"HMF1"

SCHEMES = SINGLETON_SCHEMES + STRATA_SCHEMES


@dataclass
class IdRemap:
    """Bijection between raw file ids and dense 0-based indices."""

    row_index: dict
    col_index: dict
    rows: list
    cols: list


def load_ratings(path, fmt="tab", has_header=None):
    """Parse a ratings file into observations plus the id remapping.

    Duplicate (user, item) pairs and malformed lines are errors; timestamps
    and any further fields are ignored. Blank lines are skipped.
    """
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}")
    sep, default_header = FORMATS[fmt]
    if has_header is None:
        has_header = default_header
    row_index = {}
    col_index = {}
    rows = []
    cols = []
    vals = []
    seen = set()
    with open(path) as f:
        for lineno, line in enumerate(f, 1):
            line = line.strip()
            if not line:
                continue
            if has_header and lineno == 1:
                continue
            parts = line.split(sep)
            if len(parts) < 3:
                raise ValueError(f"{path}:{lineno}: expected at least 3 "
                                 f"fields separated by {sep!r}")
            try:
                user = int(parts[0])
                item = int(parts[1])
                rating = float(parts[2])
            except ValueError:
                raise ValueError(f"{path}:{lineno}: malformed line "
                                 f"{line!r}") from None
            if (user, item) in seen:
                raise ValueError(f"{path}:{lineno}: duplicate rating for "
                                 f"user {user}, item {item}")
            seen.add((user, item))
            a = row_index.setdefault(user, len(row_index))
            b = col_index.setdefault(item, len(col_index))
            rows.append(a)
            cols.append(b)
            vals.append(rating)
    if not rows:
        raise ValueError(f"{path}: no ratings found")
    obs = SparseObservations(rows, cols, vals,
                             len(row_index), len(col_index))
    remap = IdRemap(row_index, col_index,
                    list(row_index), list(col_index))
    return obs, remap


def write_trace(records, path):
    """Write trace records as CSV, floats in shortest round-trip form."""
    with open(path, "w") as f:
        f.write("epoch,seconds,rmse,beta\n")
        for r in records:
            f.write(f"{r.epoch},{r.seconds!r},{r.rmse!r},{r.beta!r}\n")


def read_trace(path):
    """Inverse of write_trace."""
    records = []
    with open(path) as f:
        header = f.readline().strip()
        if header != "epoch,seconds,rmse,beta":
            raise ValueError(f"{path}: unexpected trace header {header!r}")
        for line in f:
            line = line.strip()
            if not line:
                continue
            epoch, seconds, value, b = line.split(",")
            records.append(TraceRecord(int(epoch), float(seconds),
                                       float(value), float(b)))
    return records


def dump_factors(model, prefix):
    """Write both factors as raw float64 with a 16-byte header.

    Header: magic "HMF1", then uint32 num_rows, num_cols, rank (little
    endian). X1 follows as (num_rows, rank) row-major in the -x1.bin file,
    X2 as (rank, num_cols) row-major in the -x2.bin file.
    """
    header = struct.pack("<4sIII", FACTOR_MAGIC, model.num_rows,
                         model.num_cols, model.rank)
    with open(prefix + "-x1.bin", "wb") as f:
        f.write(header)
        f.write(np.ascontiguousarray(model.x1).tobytes())
    with open(prefix + "-x2.bin", "wb") as f:
        f.write(header)
        f.write(np.ascontiguousarray(model.x2).tobytes())


def build_cover(obs, scheme, K, rng):
    """Construct the cover for a scheme name as used on the command line."""
    if scheme == "hogwild":
        return hogwild_cover(len(obs), K, rng)
    if scheme == "color":
        return pack_colors(greedy_color(obs, "first-fit"), K, len(obs))
    if scheme == "color-b":
        return pack_colors(greedy_color(obs, "random-available", rng),
                           K, len(obs))
    if scheme == "strata":
        return stratify(obs, K, "equilength")
    if scheme == "strata-b":
        return stratify(obs, K, "balanced")
    raise ValueError(f"unknown scheme {scheme!r}")


def _parser():
    p = argparse.ArgumentParser(
        prog="hamsi",
        description="Parallel incremental optimization for sparse matrix "
                    "factorization.")
    p.add_argument("--input", required=True, help="ratings file")
    p.add_argument("--format", choices=sorted(FORMATS), default="tab")
    p.add_argument("--has-header", action=argparse.BooleanOptionalAction,
                   default=None, help="override the per-format header default")
    p.add_argument("--rank", type=int, default=50)
    p.add_argument("--algorithm", choices=("hamsi", "mbgd"), default="hamsi")
    p.add_argument("--scheme", choices=SCHEMES, default="strata-b")
    p.add_argument("--subsets", type=int, default=None,
                   help="K; default 20 for hogwild/color schemes, "
                        "threads for strata schemes")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--eta", type=float, default=None,
                   help="default 0.06 (hamsi) or 0.001 (mbgd)")
    p.add_argument("--gamma", type=float, default=0.51)
    p.add_argument("--memory", type=int, default=8)
    p.add_argument("--schedule", choices=("det", "stoc"), default="det")
    p.add_argument("--max-epochs", type=int, default=None)
    p.add_argument("--max-seconds", type=float, default=None)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--trace", default=None, help="trace CSV output path")
    p.add_argument("--strict-blocks", action="store_true",
                   help="restrict each step to the current subset's support")
    p.add_argument("--count-rmse-time", action="store_true",
                   help="charge evaluation time against the stop clock")
    p.add_argument("--dump-cover", action="store_true",
                   help="print per-subset block sizes and the work metric")
    p.add_argument("--dump-factors", default=None, metavar="PREFIX",
                   help="write final factors to PREFIX-x1.bin/PREFIX-x2.bin")
    p.add_argument("--timings-csv", default=None,
                   help="append scheme,threads,gradient_seconds to this CSV")
    return p


def _append_timing(path, scheme, threads, gradient_seconds):
    fresh = not os.path.exists(path) or os.path.getsize(path) == 0
    with open(path, "a") as f:
        if fresh:
            f.write("scheme,threads,gradient_seconds\n")
        f.write(f"{scheme},{threads},{gradient_seconds!r}\n")


def main(argv=None):
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    try:
        obs, _ = load_ratings(args.input, args.format, args.has_header)
    except (OSError, ValueError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    K = args.subsets
    if K is None:
        K = args.threads if args.scheme in STRATA_SCHEMES else 20
    eta = args.eta
    if eta is None:
        eta = 0.06 if args.algorithm == "hamsi" else 0.001

    config = RunConfig(
        algorithm=args.algorithm, rank=args.rank, eta=eta, gamma=args.gamma,
        memory=args.memory, schedule=args.schedule, threads=args.threads,
        max_epochs=args.max_epochs, max_seconds=args.max_seconds,
        seed=args.seed, strict_blocks=args.strict_blocks,
        count_rmse_time=args.count_rmse_time)
    try:
        config.validate()
        if K < 1:
            raise ValueError("subsets must be >= 1")
        rng = np.random.default_rng(args.seed)
        cover = build_cover(obs, args.scheme, K, rng)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    if args.dump_cover:
        print(cover.describe(args.threads))

    try:
        result = run(config, obs, cover)
    except DivergenceError as exc:
        if args.trace is not None:
            write_trace(exc.trace, args.trace)
        print(f"error: {exc}", file=sys.stderr)
        return 3

    if args.trace is not None:
        write_trace(result.trace, args.trace)
    if args.timings_csv is not None:
        _append_timing(args.timings_csv, args.scheme, args.threads,
                       result.gradient_seconds)
    if args.dump_factors is not None:
        dump_factors(result.model, args.dump_factors)

    if result.trace:
        final = result.trace[-1].rmse
    else:
        final = model_rmse(result.model, obs)
    print(f"epochs {len(result.trace)} final rmse {final!r}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
