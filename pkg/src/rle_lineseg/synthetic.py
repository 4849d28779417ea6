"""Synthetic pages with known line geometry, plus an uncompressed oracle.

Lines are drawn as a vertical ink stroke at each terminal, a few filled word
blocks and random speckle inside the line box.  Only the terminal white
depths matter to the segmenter, so no attempt is made at realistic glyphs.

Three artifacts reproduce the classic failure modes:

``TouchAtLeft(upper, lower)``
    ink bridges the gap between two consecutive lines near the left margin,
    so the left terminal sees no gap (the right one still does).
``LeftIndent(line, depth)``
    the line starts ``depth`` pixels further right than its margin.
``ConcaveSliver(line, rows)``
    ``rows`` rows in the middle of a line lose their ink near the left
    terminal, opening a pseudo gap inside the line.
"""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Union

import numpy as np

from .evaluation import GroundTruth
from .pipeline import PipelineConfig, SideResult, segment_columns
from .terminal_columns import Side, TerminalColumn

__all__ = [
    "LineSpec",
    "TouchAtLeft",
    "LeftIndent",
    "ConcaveSliver",
    "PageSpec",
    "InvalidSpecError",
    "generate",
    "raster_depths",
    "oracle_segment",
    "random_page_spec",
    "make_corpus",
]


class InvalidSpecError(ValueError):
    pass


@dataclass(frozen=True)
class LineSpec:
    top: int
    bottom: int
    left_margin: int
    right_margin: int
    ink_density: float = 0.3


@dataclass(frozen=True)
class TouchAtLeft:
    upper: int
    lower: int
    kind: str = field(default="touch_at_left", init=False)


@dataclass(frozen=True)
class LeftIndent:
    line: int
    depth: int
    kind: str = field(default="left_indent", init=False)


@dataclass(frozen=True)
class ConcaveSliver:
    line: int
    rows: int
    kind: str = field(default="concave_sliver", init=False)


Artifact = Union[TouchAtLeft, LeftIndent, ConcaveSliver]
_ARTIFACTS = {"touch_at_left": TouchAtLeft, "left_indent": LeftIndent, "concave_sliver": ConcaveSliver}


@dataclass(frozen=True)
class PageSpec:
    width: int
    height: int
    lines: tuple[LineSpec, ...]
    seed: int = 0
    artifacts: tuple[Artifact, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "lines", tuple(self.lines))
        object.__setattr__(self, "artifacts", tuple(self.artifacts))
        self.validate()

    def validate(self) -> None:
        w, h = self.width, self.height
        if w < 1 or h < 1:
            raise InvalidSpecError("page dimensions must be positive")
        bridged = {(a.upper, a.lower) for a in self.artifacts if isinstance(a, TouchAtLeft)}
        for a in self.artifacts:
            if isinstance(a, TouchAtLeft):
                if a.lower != a.upper + 1 or not 0 <= a.upper < len(self.lines) - 1:
                    raise InvalidSpecError("TouchAtLeft must name two consecutive lines")
            elif not 0 <= a.line < len(self.lines):
                raise InvalidSpecError(f"{a.kind} refers to a missing line")
            if isinstance(a, ConcaveSliver) and not 1 <= a.rows <= self.lines[a.line].bottom - self.lines[a.line].top - 1:
                raise InvalidSpecError("sliver must leave ink rows above and below it")
        for i, ln in enumerate(self.lines):
            if not 0 <= ln.top < ln.bottom < h:
                raise InvalidSpecError(f"line {i} rows out of order or off the page")
            if not (0 <= ln.left_margin < w / 2 and 0 <= ln.right_margin < w / 2):
                raise InvalidSpecError(f"line {i} margins must be below half the width")
            if not 0 < ln.ink_density <= 1:
                raise InvalidSpecError(f"line {i} ink density must lie in (0, 1]")
            if i and ln.top <= self.lines[i - 1].bottom and (i - 1, i) not in bridged:
                raise InvalidSpecError(f"lines {i - 1} and {i} overlap without a bridging artifact")
            if i and ln.top < self.lines[i - 1].top:
                raise InvalidSpecError("lines must be ordered top to bottom")

    def to_dict(self) -> dict:
        return {
            "width": self.width,
            "height": self.height,
            "seed": self.seed,
            "lines": [asdict(ln) for ln in self.lines],
            "artifacts": [asdict(a) for a in self.artifacts],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "PageSpec":
        artifacts = []
        for a in data.get("artifacts", []):
            a = dict(a)
            kind = a.pop("kind")
            artifacts.append(_ARTIFACTS[kind](**a))
        return cls(
            width=data["width"],
            height=data["height"],
            lines=tuple(LineSpec(**ln) for ln in data["lines"]),
            seed=data.get("seed", 0),
            artifacts=tuple(artifacts),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def _separator_rows(spec: PageSpec) -> list[tuple[int, int]]:
    """True white intervals below each line: inter-line gaps and the bottom margin."""
    out = []
    for cur, nxt in zip(spec.lines, spec.lines[1:]):
        if nxt.top - cur.bottom > 1:
            out.append((cur.bottom + 1, nxt.top - 1))
    last = spec.lines[-1].bottom if spec.lines else -1
    if last < spec.height - 1:
        out.append((last + 1, spec.height - 1))
    return out


def ground_truth(spec: PageSpec) -> dict[Side, GroundTruth]:
    points = tuple((a + b) // 2 for a, b in _separator_rows(spec) if a != 0)
    lines = tuple((ln.top, ln.bottom) for ln in spec.lines)
    return {side: GroundTruth(side, points, len(spec.lines), lines) for side in Side}


def generate(spec: PageSpec) -> tuple[np.ndarray, dict[Side, GroundTruth]]:
    """Render ``spec`` deterministically; returns the raster and per-side truth."""
    rng = np.random.default_rng(spec.seed)
    w = spec.width
    raster = np.zeros((spec.height, w), dtype=np.uint8)
    indent = {a.line: a.depth for a in spec.artifacts if isinstance(a, LeftIndent)}
    extents = []
    for i, ln in enumerate(spec.lines):
        x0 = min(ln.left_margin + indent.get(i, 0), w - 1 - ln.right_margin)
        x1 = w - 1 - ln.right_margin
        extents.append((x0, x1))
        rows = slice(ln.top, ln.bottom + 1)
        nrows = ln.bottom - ln.top + 1
        box = raster[rows, x0 : x1 + 1]
        box |= (rng.random(box.shape) < ln.ink_density).astype(np.uint8)
        for _ in range(int(rng.integers(1, 6))):
            xa, xb = np.sort(rng.integers(x0, x1 + 1, size=2))
            ya, yb = np.sort(rng.integers(0, nrows, size=2))
            raster[ln.top + ya : ln.top + yb + 1, xa : xb + 1] = 1
        raster[rows, x0] = 1
        raster[rows, x1] = 1

    for a in spec.artifacts:
        if isinstance(a, ConcaveSliver):
            ln = spec.lines[a.line]
            x0, x1 = extents[a.line]
            cavity = max(1, (x1 - x0) // 3)
            r0 = ln.top + (ln.bottom - ln.top + 1 - a.rows) // 2
            raster[r0 : r0 + a.rows, x0 : x0 + cavity] = 0
            raster[r0 : r0 + a.rows, x0 + cavity] = 1
        elif isinstance(a, TouchAtLeft):
            up, lo = spec.lines[a.upper], spec.lines[a.lower]
            x0, x1 = extents[a.upper]
            bridge = max(2, (x1 - x0) // 10)
            raster[up.bottom + 1 : lo.top, x0 : x0 + bridge] = 1
    return raster, ground_truth(spec)


def raster_depths(raster: np.ndarray) -> tuple[TerminalColumn, TerminalColumn]:
    """Leading and trailing white counts per row, computed on the raw raster."""
    ink = np.asarray(raster) != 0
    width = ink.shape[1]
    has_ink = ink.any(axis=1)
    lead = np.where(has_ink, ink.argmax(axis=1), width)
    trail = np.where(has_ink, ink[:, ::-1].argmax(axis=1), width)
    return (
        TerminalColumn(Side.LEFT, tuple(int(v) for v in lead), width),
        TerminalColumn(Side.RIGHT, tuple(int(v) for v in trail), width),
    )


def oracle_segment(raster: np.ndarray, config: PipelineConfig = PipelineConfig()) -> dict[Side, SideResult]:
    """Segment from the uncompressed raster: projection of leading/trailing white."""
    left, right = raster_depths(raster)
    return segment_columns(left, right, config)


def random_page_spec(
    rng: np.random.Generator,
    *,
    n_lines: tuple[int, int] = (5, 9),
    width: tuple[int, int] = (300, 700),
    line_height: tuple[int, int] = (14, 28),
    height_jitter: int = 2,
    gap: tuple[int, int] = (10, 20),
    artifact: str | None = None,
    threshold_divisor: int = 25,
) -> PageSpec:
    """Draw a page with homogeneous line heights and margins that stay within
    a third of the detection threshold of each other."""
    w = int(rng.integers(width[0], width[1] + 1))
    t = max(1, w // threshold_divisor)
    jitter = max(0, t // 3)
    n = int(rng.integers(n_lines[0], n_lines[1] + 1))
    base_h = int(rng.integers(line_height[0], line_height[1] + 1))
    base_l = int(rng.integers(10, w // 8))
    base_r = int(rng.integers(10, w // 6))
    y = int(rng.integers(5, 41))
    lines = []
    for i in range(n):
        if i:
            y += int(rng.integers(gap[0], gap[1] + 1))
        lh = max(4, base_h + int(rng.integers(-height_jitter, height_jitter + 1)))
        lines.append(
            LineSpec(
                top=y,
                bottom=y + lh - 1,
                left_margin=base_l + int(rng.integers(0, jitter + 1)),
                right_margin=base_r + int(rng.integers(0, jitter + 1)),
                ink_density=float(rng.uniform(0.15, 0.5)),
            )
        )
        y += lh
    h = y + int(rng.integers(5, 41))

    artifacts: list[Artifact] = []
    if artifact == "touch_at_left":
        i = int(rng.integers(0, n - 1))
        artifacts.append(TouchAtLeft(i, i + 1))
    elif artifact == "concave_sliver":
        i = int(rng.integers(0, n))
        artifacts.append(ConcaveSliver(i, int(rng.integers(3, 6))))
    elif artifact == "left_indent":
        i = int(rng.integers(0, n))
        artifacts.append(LeftIndent(i, int(rng.integers(3 * t, 6 * t))))
    elif artifact is not None:
        raise ValueError(f"unknown artifact {artifact!r}")
    return PageSpec(w, h, tuple(lines), seed=int(rng.integers(0, 2**31)), artifacts=tuple(artifacts))


def make_corpus(
    n_pages: int = 100,
    seed: int = 0,
    touch_fraction: float = 0.2,
    sliver_fraction: float = 0.2,
) -> list[PageSpec]:
    """A reproducible page set; the given fractions carry one artifact each."""
    rng = np.random.default_rng(seed)
    n_touch = round(n_pages * touch_fraction)
    n_sliver = round(n_pages * sliver_fraction)
    kinds = ["touch_at_left"] * n_touch + ["concave_sliver"] * n_sliver
    kinds += [None] * (n_pages - len(kinds))
    order = rng.permutation(n_pages)
    return [random_page_spec(rng, artifact=kinds[k]) for k in order]
