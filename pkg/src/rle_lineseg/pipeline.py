"""End-to-end segmentation of one page from its terminal columns."""
from __future__ import annotations

from dataclasses import dataclass, field

from .band_detection import BandList, DetectionParams, detect_bands
from .band_refinement import RefinementTrace, refine_bands
from .rle_codec import RleDocument
from .separator_points import SeparatorPoints, assemble
from .terminal_columns import Side, TerminalColumn, left_column, right_column

__all__ = ["PipelineConfig", "SideResult", "segment_columns", "segment"]


@dataclass(frozen=True)
class PipelineConfig:
    params: DetectionParams = field(default_factory=DetectionParams)
    sides: tuple[Side, ...] = (Side.LEFT, Side.RIGHT)
    enable_insertion: bool = True
    enable_deletion: bool = True
    deletion_first: bool = True
    tolerance: int | None = None

    def __post_init__(self):
        sides = tuple(Side(s) for s in self.sides)
        if not sides:
            raise ValueError("select at least one side")
        object.__setattr__(self, "sides", sides)

    def to_dict(self) -> dict:
        return {
            **self.params.to_dict(),
            "sides": [s.value for s in self.sides],
            "enable_insertion": self.enable_insertion,
            "enable_deletion": self.enable_deletion,
            "deletion_first": self.deletion_first,
            "tolerance": self.tolerance,
        }


@dataclass
class SideResult:
    side: Side
    initial_bands: BandList
    bands: BandList
    trace: RefinementTrace
    points: SeparatorPoints

    def to_dict(self) -> dict:
        return {
            **self.points.to_dict(),
            "bands": [b.to_dict() for b in self.bands],
            "initial_bands": [b.to_dict() for b in self.initial_bands],
            "trace": self.trace.to_dict(),
        }


def segment_columns(
    left: TerminalColumn, right: TerminalColumn, config: PipelineConfig = PipelineConfig()
) -> dict[Side, SideResult]:
    columns = {Side.LEFT: left, Side.RIGHT: right}
    out = {}
    for side in config.sides:
        column, opposite = columns[side], columns[side.opposite]
        initial = detect_bands(column, config.params)
        bands, trace = refine_bands(
            column,
            opposite,
            initial,
            config.params,
            enable_deletion=config.enable_deletion,
            enable_insertion=config.enable_insertion,
            deletion_first=config.deletion_first,
        )
        out[side] = SideResult(side, initial, bands, trace, assemble(bands, trace, side))
    return out


def segment(doc: RleDocument, config: PipelineConfig = PipelineConfig()) -> dict[Side, SideResult]:
    """Segment a page straight from its run-length rows; nothing is decoded."""
    return segment_columns(left_column(doc), right_column(doc), config)
