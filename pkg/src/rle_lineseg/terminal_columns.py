"""White-depth columns at the left and right terminals of every row.

The left column is simply the first run of each row.  The right column is a
virtual one: it is read off the last non-zero run, which is the right-margin
white depth when that run sits in a white slot and 0 when the row ends in ink.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .rle_codec import RleDocument

__all__ = ["Side", "TerminalColumn", "left_column", "right_column", "last_white_depth"]


class Side(str, Enum):
    LEFT = "left"
    RIGHT = "right"

    @property
    def opposite(self) -> "Side":
        return Side.RIGHT if self is Side.LEFT else Side.LEFT


@dataclass(frozen=True)
class TerminalColumn:
    side: Side
    depths: tuple[int, ...]
    width: int

    def __post_init__(self):
        if any(d < 0 or d > self.width for d in self.depths):
            raise ValueError("terminal depths must lie in [0, width]")

    @property
    def height(self) -> int:
        return len(self.depths)

    def __len__(self):
        return len(self.depths)


def left_column(doc: RleDocument) -> TerminalColumn:
    return TerminalColumn(Side.LEFT, tuple(runs[0] for runs in doc.rows), doc.width)


def last_white_depth(runs: Sequence[int]) -> int:
    """Right-margin white depth from a run row, scanning backwards once.

    Padding zeros are skipped; the first non-zero run found decides the result.
    """
    k = len(runs) - 1
    while k > 0 and runs[k] == 0:
        k -= 1
    # even index = white slot
    return runs[k] if k % 2 == 0 else 0


def right_column(doc: RleDocument) -> TerminalColumn:
    return TerminalColumn(
        Side.RIGHT, tuple(last_white_depth(runs) for runs in doc.rows), doc.width
    )
