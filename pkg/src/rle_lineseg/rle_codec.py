"""Row-wise run-length encoding of binary rasters.

Every encoded row alternates white and black run lengths and always starts
with a white slot; a row that begins with ink gets a leading ``0``.  Rows are
stored without trailing zero padding; padding only shows up in the
rectangular matrix form (see :func:`padded_matrix`).

``decode_row`` / ``decode_image`` exist for round-trip checks and the
uncompressed oracle.  The segmentation pipeline never calls them.
"""
from __future__ import annotations

import csv
import os
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

__all__ = [
    "RleError",
    "InvalidInputError",
    "CorruptRowError",
    "RleParseError",
    "RleDocument",
    "encode_row",
    "decode_row",
    "encode_image",
    "decode_image",
    "padded_matrix",
    "read_rle_csv",
    "write_rle_csv",
]

# Run lengths must fit an unsigned 64-bit integer.
MAX_RUN = 2**64 - 1

BitRowLike = Union[str, Sequence[int], np.ndarray]


class RleError(ValueError):
    """Base class for run-length codec errors."""


class InvalidInputError(RleError):
    pass


class CorruptRowError(RleError):
    def __init__(self, row: int | None, message: str):
        self.row = row
        where = f"row {row}: " if row is not None else ""
        super().__init__(where + message)


class RleParseError(RleError):
    def __init__(self, message: str, row: int | None = None):
        self.row = row
        where = f"row {row}: " if row is not None else ""
        super().__init__(where + message)


def _strip_padding(runs: Sequence[int]) -> tuple[int, ...]:
    if not isinstance(runs, tuple):
        runs = tuple(int(r) for r in runs)
    end = len(runs)
    while end > 1 and runs[end - 1] == 0:
        end -= 1
    return runs if end == len(runs) else runs[:end]


def _check_row(runs: tuple[int, ...], width: int, row: int | None = None) -> None:
    if not runs:
        raise CorruptRowError(row, "empty run list")
    if any(r < 0 for r in runs):
        raise CorruptRowError(row, "negative run length")
    if any(r == 0 for r in runs[1:]):
        raise CorruptRowError(row, "zero-length interior run")
    total = sum(runs)
    if total != width:
        raise CorruptRowError(row, f"runs sum to {total}, expected width {width}")


@dataclass(frozen=True)
class RleDocument:
    """A binary image as one run-length row per raster row."""

    width: int
    height: int
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.width < 1:
            raise InvalidInputError("width must be at least 1")
        if self.height < 1:
            raise InvalidInputError("height must be at least 1")
        rows = tuple(_strip_padding(r) for r in self.rows)
        if len(rows) != self.height:
            raise InvalidInputError(f"expected {self.height} rows, got {len(rows)}")
        for i, runs in enumerate(rows):
            _check_row(runs, self.width, i)
        object.__setattr__(self, "rows", rows)

    @property
    def run_count(self) -> int:
        return sum(len(r) for r in self.rows)


def _as_bits(row: BitRowLike) -> np.ndarray:
    if isinstance(row, str):
        if set(row) - {"0", "1"}:
            raise InvalidInputError("bit string may only contain '0' and '1'")
        return np.frombuffer(row.encode("ascii"), dtype=np.uint8) - ord("0")
    bits = np.asarray(row)
    if bits.ndim != 1:
        raise InvalidInputError("a bit row must be one-dimensional")
    if bits.size and not np.isin(bits, (0, 1)).all():
        raise InvalidInputError("bit row values must be 0 or 1")
    return bits.astype(np.uint8, copy=False)


def _encode_bits(bits: np.ndarray) -> tuple[int, ...]:
    change = np.flatnonzero(bits[1:] != bits[:-1]) + 1
    edges = np.concatenate(([0], change, [bits.size]))
    runs = np.diff(edges).tolist()
    if bits[0] == 1:
        runs.insert(0, 0)
    return tuple(runs)


def encode_row(row: BitRowLike) -> tuple[int, ...]:
    """Encode one binary row (``1`` = ink) as white-first run lengths.

    >>> encode_row("00110000111110")
    (2, 2, 4, 5, 1)
    >>> encode_row("10000000000000")
    (0, 1, 13)
    """
    bits = _as_bits(row)
    if bits.size == 0:
        raise InvalidInputError("cannot encode an empty row")
    return _encode_bits(bits)


def decode_row(runs: Sequence[int], width: int) -> np.ndarray:
    runs = _strip_padding(runs)
    _check_row(runs, width)
    values = np.arange(len(runs), dtype=np.uint8) % 2
    return np.repeat(values, runs)


def encode_image(raster) -> RleDocument:
    """Encode a 2-D binary raster (list of rows or array) into an RleDocument."""
    if isinstance(raster, np.ndarray):
        if raster.ndim != 2:
            raise InvalidInputError("raster must be two-dimensional")
        rows = list(raster)
    else:
        rows = [_as_bits(r) for r in raster]
    if not rows:
        raise InvalidInputError("raster has no rows")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise InvalidInputError("ragged raster: rows differ in width")
    if width == 0:
        raise InvalidInputError("raster has zero width")
    encoded = tuple(encode_row(r) for r in rows)
    return RleDocument(width=width, height=len(encoded), rows=encoded)


def decode_image(doc: RleDocument) -> np.ndarray:
    out = np.empty((doc.height, doc.width), dtype=np.uint8)
    for i, runs in enumerate(doc.rows):
        out[i] = decode_row(runs, doc.width)
    return out


def padded_matrix(doc: RleDocument) -> np.ndarray:
    """Rectangular, zero-padded run matrix as laid out in the classic table form."""
    ncols = max(len(r) for r in doc.rows)
    mat = np.zeros((doc.height, ncols), dtype=np.uint64)
    for i, runs in enumerate(doc.rows):
        mat[i, : len(runs)] = runs
    return mat


def _parse_int(cell: str, row: int | None) -> int:
    cell = cell.strip()
    if not cell.isdigit():
        raise RleParseError(f"non-numeric cell {cell!r}", row)
    value = int(cell)
    if value > MAX_RUN:
        raise RleParseError(f"value {value} overflows a 64-bit run length", row)
    return value


def read_rle_csv(path: str | os.PathLike) -> RleDocument:
    """Read the ``width,height`` header plus one run-length line per raster row.

    Errors carry the zero-based raster row index where one applies.
    """
    try:
        with open(path, newline="", encoding="ascii") as fh:
            return _read_rows(csv.reader(fh))
    except UnicodeDecodeError:
        raise RleParseError("file is not ASCII text") from None


def _read_rows(reader) -> RleDocument:
    header = next(reader, None)
    if not header:
        raise RleParseError("missing width,height header")
    if len(header) != 2:
        raise RleParseError("header must be 'width,height'")
    width, height = (_parse_int(c, None) for c in header)
    if width < 1:
        raise RleParseError("width must be at least 1")
    if height < 1:
        raise RleParseError("height must be at least 1")
    rows = []
    blank_tail = 0
    for cells in reader:
        if not cells:
            blank_tail += 1
            continue
        i = len(rows)
        if blank_tail:
            raise RleParseError("empty line", i)
        if i >= height:
            raise RleParseError(f"header declares {height} rows, file has more")
        runs = _strip_padding([_parse_int(c, i) for c in cells])
        _check_row(runs, width, i)
        rows.append(runs)
    if len(rows) != height:
        raise RleParseError(f"header declares {height} rows, file has {len(rows)}")
    return RleDocument(width=width, height=height, rows=tuple(rows))


def write_rle_csv(doc: RleDocument, path: str | os.PathLike) -> None:
    with open(path, "w", newline="\n", encoding="ascii") as fh:
        fh.write(f"{doc.width},{doc.height}\n")
        for runs in doc.rows:
            fh.write(",".join(str(r) for r in runs) + "\n")
