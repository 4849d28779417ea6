"""Minimal Netpbm bitmap (P1 / P4) reader and writer.

Pixels follow the Netpbm convention: 1 is black, which we treat as ink.
"""
from __future__ import annotations

import os

import numpy as np

__all__ = ["UnsupportedFormatError", "PbmFormatError", "read_pbm", "write_pbm"]


class UnsupportedFormatError(ValueError):
    pass


class PbmFormatError(ValueError):
    pass


def _tokens(data: bytes, pos: int, count: int) -> tuple[list[bytes], int]:
    """Read ``count`` whitespace-separated header tokens, skipping comments."""
    out = []
    n = len(data)
    while len(out) < count:
        while pos < n and data[pos : pos + 1].isspace():
            pos += 1
        if pos < n and data[pos : pos + 1] == b"#":
            while pos < n and data[pos : pos + 1] not in (b"\n", b"\r"):
                pos += 1
            continue
        start = pos
        while pos < n and not data[pos : pos + 1].isspace() and data[pos : pos + 1] != b"#":
            pos += 1
        if start == pos:
            raise PbmFormatError("truncated PBM header")
        out.append(data[start:pos])
    return out, pos


def parse_pbm(data: bytes) -> np.ndarray:
    magic = data[:2]
    if magic not in (b"P1", b"P4"):
        raise UnsupportedFormatError("unsupported format: only PBM P1/P4 is accepted")
    (w_tok, h_tok), pos = _tokens(data, 2, 2)
    try:
        width, height = int(w_tok), int(h_tok)
    except ValueError:
        raise PbmFormatError("non-numeric PBM dimensions") from None
    if width < 1 or height < 1:
        raise PbmFormatError("PBM dimensions must be positive")

    if magic == b"P4":
        # exactly one whitespace byte separates header and raster
        pos += 1
        stride = (width + 7) // 8
        raw = np.frombuffer(data, dtype=np.uint8, count=stride * height, offset=pos) \
            if len(data) - pos >= stride * height else None
        if raw is None:
            raise PbmFormatError("truncated P4 raster")
        bits = np.unpackbits(raw.reshape(height, stride), axis=1)
        return bits[:, :width].copy()

    body = data[pos:]
    # strip comments, keep only the 0/1 digits
    digits = bytearray()
    for line in body.splitlines():
        line = line.split(b"#", 1)[0]
        digits.extend(c for c in line if c in b"01")
        stray = bytes(c for c in line if c not in b"01" and not chr(c).isspace())
        if stray:
            raise PbmFormatError(f"unexpected bytes in P1 raster: {stray[:8]!r}")
    if len(digits) < width * height:
        raise PbmFormatError("truncated P1 raster")
    arr = np.frombuffer(bytes(digits[: width * height]), dtype=np.uint8) - ord("0")
    return arr.reshape(height, width)


def read_pbm(path: str | os.PathLike) -> np.ndarray:
    with open(path, "rb") as fh:
        return parse_pbm(fh.read())


def write_pbm(raster: np.ndarray, path: str | os.PathLike, plain: bool = False) -> None:
    raster = np.asarray(raster, dtype=np.uint8)
    height, width = raster.shape
    with open(path, "wb") as fh:
        if plain:
            fh.write(f"P1\n{width} {height}\n".encode("ascii"))
            for row in raster:
                fh.write(" ".join(str(int(v)) for v in row).encode("ascii") + b"\n")
        else:
            fh.write(f"P4\n{width} {height}\n".encode("ascii"))
            fh.write(np.packbits(raster, axis=1).tobytes())
