"""Command-line front end.

Exit status: 0 on success, 1 on a processing error, 2 on a usage or input
format error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import __version__
from .band_detection import Band, BandKind, BandList, DetectionParams
from .evaluation import GroundTruth, detection_rate, evaluate, percent_display
from .pbm import PbmFormatError, UnsupportedFormatError, read_pbm, write_pbm
from .pipeline import PipelineConfig, segment
from .rle_codec import RleDocument, RleError, decode_image, encode_image, read_rle_csv, write_rle_csv
from .synthetic import PageSpec, generate, make_corpus
from .terminal_columns import Side

SCHEMA = 1
THREADS_ENV = "RLE_LINESEG_THREADS"


class UsageError(Exception):
    """Bad input or arguments: exit status 2."""


class ProcessingError(Exception):
    """Valid input that could not be processed: exit status 1."""


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _detect_format(path: Path, fmt: str) -> str:
    if fmt != "auto":
        return fmt
    if path.suffix.lower() == ".csv":
        return "rlecsv"
    return "pbm"


def load_document(path: str | os.PathLike, fmt: str = "auto") -> RleDocument:
    path = Path(path)
    try:
        if _detect_format(path, fmt) == "rlecsv":
            return read_rle_csv(path)
        return encode_image(read_pbm(path))
    except FileNotFoundError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except (UnsupportedFormatError, PbmFormatError, RleError) as exc:
        raise UsageError(f"{path}: {exc}") from None


def _load_raster(path: Path, fmt: str) -> np.ndarray:
    if _detect_format(path, fmt) == "rlecsv":
        return decode_image(load_document(path, "rlecsv"))
    try:
        return read_pbm(path)
    except FileNotFoundError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except (UnsupportedFormatError, PbmFormatError) as exc:
        raise UsageError(f"{path}: {exc}") from None


def _load_json(path: str | os.PathLike):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON ({exc})") from None


# --- encode ---------------------------------------------------------------

def cmd_encode(args) -> int:
    doc = load_document(args.input, "pbm")
    write_rle_csv(doc, args.output)
    pixels = doc.width * doc.height
    print(f"width={doc.width} height={doc.height} runs={doc.run_count} "
          f"compression_ratio={pixels / doc.run_count:.2f} pixels/run")
    return 0


# --- segment --------------------------------------------------------------

def _config(args) -> PipelineConfig:
    try:
        params = DetectionParams(
            threshold_divisor=args.threshold_divisor,
            large_band_divisor=args.large_band_divisor,
            under_sep_factor=args.under_sep_factor,
            max_recursion_depth=args.max_depth,
            over_sep_fraction=args.over_sep_fraction,
            insertion_factor=args.insertion_factor,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    sides = (Side.LEFT, Side.RIGHT) if args.sides == "both" else (Side(args.sides),)
    return PipelineConfig(
        params=params,
        sides=sides,
        enable_insertion=args.enable_insertion,
        enable_deletion=args.enable_deletion,
        deletion_first=not args.insertion_first,
        tolerance=args.tolerance,
    )


def segment_report(doc: RleDocument, config: PipelineConfig) -> dict:
    results = segment(doc, config)
    return {
        "schema": SCHEMA,
        "width": doc.width,
        "height": doc.height,
        "params": config.to_dict(),
        "sides": {side.value: results[side].to_dict() for side in config.sides},
    }


def _batch_inputs(directory: Path) -> list[Path]:
    return sorted(p for p in directory.iterdir() if p.suffix.lower() in (".pbm", ".csv"))


def cmd_segment(args) -> int:
    config = _config(args)
    src = Path(args.input)
    if src.is_dir():
        files = _batch_inputs(src)
        workers = int(os.environ.get(THREADS_ENV, "0") or 0) or (os.cpu_count() or 1)

        def one(path: Path) -> dict:
            return {"file": path.name, **segment_report(load_document(path, args.format), config)}

        with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
            pages = list(pool.map(one, files))
        out = {"schema": SCHEMA, "pages": pages}
    else:
        out = segment_report(load_document(src, args.format), config)
    text = _dump(out)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


# --- evaluate -------------------------------------------------------------

def _bands_from_json(items, height: int) -> BandList | None:
    if not items:
        return None
    return BandList(tuple(Band(BandKind(b["kind"]), b["start"], b["end"]) for b in items), height)


def _detected_from_json(data, side: Side) -> tuple[list[int], BandList | None]:
    if not isinstance(data, dict):
        raise UsageError("detected points must be a JSON object")
    try:
        if "sides" in data:
            entry = data["sides"][side.value]
            return list(entry["points"]), _bands_from_json(entry.get("bands"), data["height"])
        return list(data["points"]), None
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"detected JSON does not match the schema: {exc}") from None


def cmd_evaluate(args) -> int:
    if args.o2o is not None or args.n is not None:
        if args.o2o is None or args.n is None:
            raise UsageError("--o2o and --n go together")
        try:
            dr = detection_rate(args.o2o, args.n)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        sys.stdout.write(_dump({
            "schema": SCHEMA, "o2o": args.o2o, "N": args.n,
            "dr": float(dr), "dr_percent": percent_display(dr),
        }))
        return 0
    if not (args.detected and args.truth):
        raise UsageError("evaluate needs DETECTED and TRUTH files (or --o2o/--n)")
    try:
        truth = GroundTruth.from_dict(_load_json(args.truth))
    except ValueError as exc:
        raise UsageError(f"{args.truth}: {exc}") from None
    points, bands = _detected_from_json(_load_json(args.detected), Side(truth.side))
    if not all(isinstance(p, int) for p in points):
        raise UsageError("detected points must be integers")
    report = evaluate(sorted(points), truth, args.tolerance, bands)
    sys.stdout.write(_dump(report.to_dict()))
    return 0


# --- generate -------------------------------------------------------------

def cmd_generate(args) -> int:
    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    if args.spec:
        try:
            specs = [PageSpec.from_dict(_load_json(args.spec))]
        except (KeyError, TypeError, ValueError) as exc:
            raise UsageError(f"{args.spec}: {exc}") from None
    else:
        specs = make_corpus(args.pages, args.seed, args.touch_fraction, args.sliver_fraction)
    for k, spec in enumerate(specs):
        stem = out / f"page_{k:03d}"
        raster, truth = generate(spec)
        write_pbm(raster, stem.with_suffix(".pbm"))
        write_rle_csv(encode_image(raster), stem.with_suffix(".csv"))
        stem.with_suffix(".spec.json").write_text(spec.to_json() + "\n", encoding="utf-8")
        for side, gt in truth.items():
            Path(f"{stem}.{side.value}.json").write_text(_dump(gt.to_dict()), encoding="utf-8")
    print(f"wrote {len(specs)} page(s) to {out}")
    return 0


# --- overlay --------------------------------------------------------------

def cmd_overlay(args) -> int:
    raster = _load_raster(Path(args.input), args.format).copy()
    height, width = raster.shape
    data = _load_json(args.points)
    if not isinstance(data, dict):
        raise UsageError("points JSON must be an object")
    if "sides" in data:
        marks = [(Side(s), entry["points"]) for s, entry in data["sides"].items()]
    elif "points" in data:
        marks = [(Side(data.get("side", "left")), data["points"])]
    else:
        raise UsageError("points JSON has neither 'sides' nor 'points'")
    tick = max(1, min(args.tick_length, width))
    for side, points in marks:
        for p in points:
            if not isinstance(p, int) or not 0 <= p < height:
                raise ProcessingError(f"point {p!r} lies outside the page (height {height})")
            if side is Side.LEFT:
                raster[p, :tick] = 1
            else:
                raster[p, width - tick :] = 1
    write_pbm(raster, args.output)
    return 0


# --- parser ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rle-lineseg",
        description="Text-line separator points from run-length compressed binary pages.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("encode", help="PBM (P1/P4) to RLE CSV")
    p.add_argument("input")
    p.add_argument("output")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("segment", help="detect separator points, JSON on stdout")
    p.add_argument("input", help="PBM, RLE CSV or a directory of them")
    p.add_argument("--format", choices=("auto", "pbm", "rlecsv"), default="auto")
    p.add_argument("--sides", choices=("left", "right", "both"), default="both")
    p.add_argument("--enable-insertion", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--enable-deletion", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--insertion-first", action="store_true",
                   help="run insertion before over-separation deletion")
    defaults = DetectionParams()
    p.add_argument("--threshold-divisor", type=float, default=defaults.threshold_divisor)
    p.add_argument("--large-band-divisor", type=float, default=defaults.large_band_divisor)
    p.add_argument("--under-sep-factor", type=float, default=defaults.under_sep_factor)
    p.add_argument("--over-sep-fraction", type=float, default=defaults.over_sep_fraction)
    p.add_argument("--insertion-factor", type=float, default=defaults.insertion_factor)
    p.add_argument("--max-depth", type=int, default=defaults.max_recursion_depth)
    p.add_argument("--tolerance", type=int, default=None)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_segment)

    p = sub.add_parser("evaluate", help="score detected points against ground truth")
    p.add_argument("detected", nargs="?")
    p.add_argument("truth", nargs="?")
    p.add_argument("--tolerance", type=int, default=None)
    p.add_argument("--o2o", type=int, help="precomputed one-to-one match count")
    p.add_argument("--n", type=int, help="precomputed ground-truth count")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("generate", help="write a synthetic corpus with ground truth")
    p.add_argument("outdir")
    p.add_argument("--pages", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--touch-fraction", type=float, default=0.2)
    p.add_argument("--sliver-fraction", type=float, default=0.2)
    p.add_argument("--spec", help="render a single PageSpec JSON instead")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("overlay", help="draw separator ticks onto a page")
    p.add_argument("input")
    p.add_argument("points", help="segment output or {'side', 'points'} JSON")
    p.add_argument("output", help="PBM to write")
    p.add_argument("--format", choices=("auto", "pbm", "rlecsv"), default="auto")
    p.add_argument("--tick-length", type=int, default=10)
    p.set_defaults(func=cmd_overlay)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ProcessingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
