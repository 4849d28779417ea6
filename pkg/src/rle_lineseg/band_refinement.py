"""Correction passes over a detected band list.

* Under-separation search: separator bands that are either taller than a
  fixed fraction of the page, or more than ``under_sep_factor`` times the
  average separator width, become regions of interest (ROI).  Oversized bands
  are kept out of the average.
* ROI recursion: each ROI slice is re-thresholded against its own minimum
  (same threshold) until no new ROI appears.
* Over-separation deletion: a text band much thinner than the median text
  band (a glyph concavity sliver) is merged back through its thinner interior
  neighbouring separator.
* Insertion: a text band much taller than the median is checked against the
  opposite terminal column; gaps found there are added as separator points.

All width comparisons are done on integers / Fractions so ties are exact.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence

from .band_detection import (
    Band,
    BandList,
    DetectionParams,
    default_threshold,
    detect_mask,
    group_mask,
    mask_to_bands,
)
from .terminal_columns import Side, TerminalColumn

__all__ = [
    "RoiKind",
    "RoiInterval",
    "RoiSet",
    "RefinementTrace",
    "average_pool",
    "find_under_separation",
    "refine_roi",
    "remove_over_separation",
    "insert_missing_separators",
    "refine_bands",
    "median_width",
]


class RoiKind(str, Enum):
    OVERSIZED = "oversized_band"
    WIDE = "wide_band"


@dataclass(frozen=True)
class RoiInterval:
    start: int
    end: int
    kind: RoiKind

    @property
    def width(self) -> int:
        return self.end - self.start + 1

    @property
    def key(self) -> tuple[int, int]:
        return (self.start, self.end)


@dataclass(frozen=True)
class RoiSet:
    intervals: tuple[RoiInterval, ...] = ()

    def __iter__(self):
        return iter(self.intervals)

    def __len__(self):
        return len(self.intervals)

    def __bool__(self):
        return bool(self.intervals)


@dataclass
class RefinementTrace:
    deleted_bands: list[Band] = field(default_factory=list)
    inserted_separators: list[int] = field(default_factory=list)
    recursion_depth_used: int = 0
    cap_hit: bool = False

    def to_dict(self) -> dict:
        return {
            "deleted_bands": [b.to_dict() for b in self.deleted_bands],
            "inserted_separators": list(self.inserted_separators),
            "recursion_depth_used": self.recursion_depth_used,
            "cap_hit": self.cap_hit,
        }


def _exceeds(width: int, factor: Fraction, reference: Fraction) -> bool:
    return width > factor * reference


def average_pool(bands: BandList, height: int, params: DetectionParams) -> tuple[list[Band], list[Band]]:
    """Split separator bands into (oversized, averaged) groups.

    Oversized bands are taller than ``height / large_band_divisor``; only the
    second group feeds the average separator width.
    """
    limit = Fraction(height) / Fraction(params.large_band_divisor)
    oversized, pool = [], []
    for band in bands.separators:
        (oversized if band.width > limit else pool).append(band)
    return oversized, pool


def find_under_separation(
    bands: BandList, height: int | None = None, params: DetectionParams = DetectionParams()
) -> RoiSet:
    if height is None:
        height = bands.height
    oversized, pool = average_pool(bands, height, params)
    found = [RoiInterval(b.start, b.end, RoiKind.OVERSIZED) for b in oversized]
    if pool:
        average = Fraction(sum(b.width for b in pool), len(pool))
        factor = Fraction(params.under_sep_factor)
        found += [
            RoiInterval(b.start, b.end, RoiKind.WIDE)
            for b in pool
            if _exceeds(b.width, factor, average)
        ]
    return RoiSet(tuple(sorted(found, key=lambda iv: iv.start)))


def refine_roi(
    column: TerminalColumn,
    bands: BandList,
    roi: RoiSet,
    params: DetectionParams = DetectionParams(),
    trace: RefinementTrace | None = None,
) -> BandList:
    """Re-threshold ROI slices against their local minimum until no new ROI shows up.

    A slice that comes back uniformly labelled (no contrast, or blank rows
    only) keeps its separator label and is not revisited; anything else is
    relabelled, which turns at least one row into text.
    """
    if trace is None:
        trace = RefinementTrace()
    t = default_threshold(column.width, params)
    settled: set[tuple[int, int]] = set()
    pending = list(roi)
    depth = 0
    while pending:
        if depth >= params.max_recursion_depth:
            trace.cap_hit = True
            break
        depth += 1
        mask = bands.to_mask()
        for iv in pending:
            local = detect_mask(column.depths[iv.start : iv.end + 1], t, column.width)
            if any(local) and not all(local):
                mask[iv.start : iv.end + 1] = local
            else:
                settled.add(iv.key)
        bands = mask_to_bands(mask, bands.height)
        roi = find_under_separation(bands, bands.height, params)
        pending = [iv for iv in roi if iv.key not in settled]
    trace.recursion_depth_used = max(trace.recursion_depth_used, depth)
    return bands


def median_width(bands: Iterable[Band]) -> Fraction:
    widths = sorted(b.width for b in bands)
    if not widths:
        raise ValueError("median of no bands")
    mid = len(widths) // 2
    if len(widths) % 2:
        return Fraction(widths[mid])
    return Fraction(widths[mid - 1] + widths[mid], 2)


def _interior_neighbours(bands: Sequence[Band], i: int) -> list[Band]:
    """Separator neighbours of text band ``i`` that have text on their far side too."""
    out = []
    if i >= 2 and bands[i - 1].is_separator:
        out.append(bands[i - 1])
    if i + 2 < len(bands) and bands[i + 1].is_separator:
        out.append(bands[i + 1])
    return out


def remove_over_separation(
    bands: BandList,
    params: DetectionParams = DetectionParams(),
    trace: RefinementTrace | None = None,
) -> tuple[BandList, RefinementTrace]:
    if trace is None:
        trace = RefinementTrace()
    fraction = Fraction(params.over_sep_fraction)
    while True:
        seq = bands.bands
        texts = [b for b in seq if not b.is_separator]
        if len(texts) <= 1:
            break
        cutoff = fraction * median_width(texts)
        slivers = [
            (b.width, i)
            for i, b in enumerate(seq)
            if not b.is_separator and b.width < cutoff and _interior_neighbours(seq, i)
        ]
        if not slivers:
            break
        _, i = min(slivers)
        # thinner neighbour wins; the upper one on a tie
        victim = min(_interior_neighbours(seq, i), key=lambda b: (b.width, b.start))
        mask = bands.to_mask()
        mask[victim.start : victim.end + 1] = [0] * victim.width
        bands = mask_to_bands(mask, bands.height)
        trace.deleted_bands.append(victim)
    return bands, trace


def insert_missing_separators(
    left: TerminalColumn,
    right: TerminalColumn,
    bands: BandList,
    params: DetectionParams = DetectionParams(),
    side: Side = Side.LEFT,
    trace: RefinementTrace | None = None,
) -> tuple[BandList, RefinementTrace]:
    """Look for gaps inside oversized text bands using the other terminal.

    ``bands`` belong to ``side``; the opposite column is searched.  The band
    list itself is returned unchanged: insertions are recorded as row indices
    in the trace.
    """
    if trace is None:
        trace = RefinementTrace()
    if len(left) != bands.height or len(right) != bands.height:
        raise ValueError("terminal columns must match the band list height")
    texts = bands.texts
    if not texts:
        return bands, trace
    other = right if Side(side) is Side.LEFT else left
    t = default_threshold(other.width, params)
    factor = Fraction(params.insertion_factor)
    median = median_width(texts)
    for band in texts:
        if not _exceeds(band.width, factor, median):
            continue
        local = detect_mask(other.depths[band.start : band.end + 1], t, other.width)
        for piece in group_mask(local, offset=band.start):
            if piece.is_separator and piece.start > band.start and piece.end < band.end:
                trace.inserted_separators.append((piece.start + piece.end) // 2)
    trace.inserted_separators.sort()
    return bands, trace


def refine_bands(
    column: TerminalColumn,
    opposite: TerminalColumn,
    bands: BandList,
    params: DetectionParams = DetectionParams(),
    enable_deletion: bool = True,
    enable_insertion: bool = True,
    deletion_first: bool = True,
) -> tuple[BandList, RefinementTrace]:
    """Full refinement of one terminal's bands: ROI recursion, then deletion/insertion."""
    trace = RefinementTrace()
    roi = find_under_separation(bands, bands.height, params)
    bands = refine_roi(column, bands, roi, params, trace)

    side = Side(column.side)
    left, right = (column, opposite) if side is Side.LEFT else (opposite, column)

    def delete(b):
        return remove_over_separation(b, params, trace)[0] if enable_deletion else b

    def insert(b):
        if enable_insertion:
            insert_missing_separators(left, right, b, params, side, trace)
        return b

    steps = (delete, insert) if deletion_first else (insert, delete)
    for step in steps:
        bands = step(bands)
    return bands, trace
