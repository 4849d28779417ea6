"""Separator points from refined bands: band midpoints, top margin dropped."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .band_detection import Band, BandList
from .band_refinement import RefinementTrace
from .terminal_columns import Side

__all__ = ["Provenance", "SeparatorPoints", "band_midpoint", "assemble"]


class Provenance(str, Enum):
    DETECTED = "Detected"
    INSERTED = "Inserted"


@dataclass(frozen=True)
class SeparatorPoints:
    side: Side
    points: tuple[int, ...]
    provenance: tuple[Provenance, ...]
    height: int

    def __post_init__(self):
        if len(self.points) != len(self.provenance):
            raise ValueError("one provenance tag per point")
        if any(b <= a for a, b in zip(self.points, self.points[1:])):
            raise ValueError("points must be strictly increasing")
        if any(p < 0 or p >= self.height for p in self.points):
            raise ValueError("points must lie inside the page")

    def __len__(self):
        return len(self.points)

    def to_dict(self) -> dict:
        return {
            "side": Side(self.side).value,
            "points": list(self.points),
            "provenance": [Provenance(p).value for p in self.provenance],
        }


def band_midpoint(band: Band) -> int:
    if not band.is_separator:
        raise ValueError("midpoints are only defined for separator bands")
    return (band.start + band.end) // 2


def assemble(bands: BandList, trace: RefinementTrace | None, side: Side) -> SeparatorPoints:
    tagged = [
        (band_midpoint(b), Provenance.DETECTED)
        for b in bands.separators
        if b.start != 0  # the top-margin band is not reported
    ]
    if trace is not None:
        tagged += [(p, Provenance.INSERTED) for p in trace.inserted_separators]
    tagged.sort()
    return SeparatorPoints(
        side=Side(side),
        points=tuple(p for p, _ in tagged),
        provenance=tuple(tag for _, tag in tagged),
        height=bands.height,
    )
