"""Separator-band detection on a terminal white-depth column.

The column is shifted down by its own minimum (which removes the page
margin) and every row whose shifted depth exceeds the threshold is labelled
separator.  Maximal runs of equal labels become bands.  Two passes over the
column: one for the minimum, one for the labels.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence

from .terminal_columns import TerminalColumn

__all__ = [
    "BandKind",
    "Band",
    "BandList",
    "DetectionParams",
    "default_threshold",
    "detect_mask",
    "mask_to_bands",
    "group_mask",
    "detect_bands",
]


class BandKind(str, Enum):
    SEPARATOR = "separator"
    TEXT = "text"


@dataclass(frozen=True)
class Band:
    kind: BandKind
    start: int
    end: int  # inclusive

    def __post_init__(self):
        if self.start > self.end:
            raise ValueError(f"band start {self.start} after end {self.end}")

    @property
    def width(self) -> int:
        return self.end - self.start + 1

    @property
    def is_separator(self) -> bool:
        return self.kind is BandKind.SEPARATOR

    def to_dict(self) -> dict:
        return {"kind": self.kind.value, "start": self.start, "end": self.end, "width": self.width}


@dataclass(frozen=True)
class BandList:
    bands: tuple[Band, ...]
    height: int

    def __post_init__(self):
        object.__setattr__(self, "bands", tuple(self.bands))
        if self.height < 1 or not self.bands:
            raise ValueError("a band list covers at least one row")
        if self.bands[0].start != 0 or self.bands[-1].end != self.height - 1:
            raise ValueError("bands must cover [0, height)")
        for prev, cur in zip(self.bands, self.bands[1:]):
            if cur.start != prev.end + 1:
                raise ValueError("bands must tile without gaps or overlaps")
            if cur.kind is prev.kind:
                raise ValueError("adjacent bands must alternate kinds")

    def __iter__(self):
        return iter(self.bands)

    def __len__(self):
        return len(self.bands)

    @property
    def separators(self) -> list[Band]:
        return [b for b in self.bands if b.is_separator]

    @property
    def texts(self) -> list[Band]:
        return [b for b in self.bands if not b.is_separator]

    def to_mask(self) -> list[int]:
        mask = []
        for b in self.bands:
            mask.extend([1 if b.is_separator else 0] * b.width)
        return mask


@dataclass(frozen=True)
class DetectionParams:
    """Tunable knobs for detection and refinement.

    ``threshold_divisor`` sets the separator threshold as a fraction of page
    width (25 by default; 15 and 35 are the usual alternatives).  Bands taller
    than ``height / large_band_divisor`` are always re-examined, and bands wider
    than ``under_sep_factor`` times the average are re-examined too.
    """

    threshold_divisor: float = 25
    large_band_divisor: float = 10
    under_sep_factor: float = 2.0
    max_recursion_depth: int = 8
    over_sep_fraction: float = 0.5
    insertion_factor: float = 2.0

    def __post_init__(self):
        for name in (
            "threshold_divisor",
            "large_band_divisor",
            "under_sep_factor",
            "max_recursion_depth",
            "over_sep_fraction",
            "insertion_factor",
        ):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if self.threshold_divisor < 1:
            raise ValueError("threshold_divisor must be at least 1")

    def to_dict(self) -> dict:
        return {k: getattr(self, k) for k in self.__dataclass_fields__}


def default_threshold(width: int, params: DetectionParams = DetectionParams()) -> int:
    if width < 1:
        raise ValueError("width must be at least 1")
    t = Fraction(width) / Fraction(params.threshold_divisor)
    return max(1, int(t))  # int() floors a non-negative Fraction


def detect_mask(
    column: TerminalColumn | Sequence[int], t: int, full_width: int | None = None
) -> list[int]:
    """Label rows whose min-shifted depth exceeds ``t`` as separator (1).

    With ``full_width`` set, a row that is white across the whole page is a
    separator regardless of the minimum, so a blank page is one big gap
    rather than one big text line.
    """
    depths = column.depths if isinstance(column, TerminalColumn) else column
    if len(depths) == 0:
        raise ValueError("empty column")
    lowest = min(depths)
    return [1 if d - lowest > t or d == full_width else 0 for d in depths]


def mask_to_bands(mask: Sequence[int], height: int | None = None) -> BandList:
    if height is None:
        height = len(mask)
    if len(mask) != height:
        raise ValueError("mask length must equal height")
    return BandList(tuple(group_mask(mask)), height)


def group_mask(mask: Sequence[int], offset: int = 0) -> list[Band]:
    """Maximal equal-label runs of ``mask`` as bands, row indices shifted by ``offset``."""
    bands = []
    start = 0
    for i in range(1, len(mask) + 1):
        if i == len(mask) or mask[i] != mask[start]:
            kind = BandKind.SEPARATOR if mask[start] else BandKind.TEXT
            bands.append(Band(kind, offset + start, offset + i - 1))
            start = i
    return bands


def detect_bands(column: TerminalColumn, params: DetectionParams = DetectionParams()) -> BandList:
    t = default_threshold(column.width, params)
    return mask_to_bands(detect_mask(column.depths, t, column.width), column.height)
