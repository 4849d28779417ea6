"""One-to-one matching of separator points and the detection-rate metrics.

DR is ``o2o / N`` with N the number of ground-truth points.  TN and FP are the
under- and over-separation counts as a percentage of the total line count.
Rates are kept as exact Fractions; rounding (half-up) happens only for display.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from fractions import Fraction
from typing import Sequence

from .band_detection import BandList
from .band_refinement import median_width
from .terminal_columns import Side

__all__ = [
    "GroundTruth",
    "Match",
    "Matching",
    "EvalReport",
    "match_points",
    "detection_rate",
    "tn_rate",
    "fp_rate",
    "percent_display",
    "expected_point_count",
    "default_tolerance",
    "evaluate",
    "load_ground_truth",
    "save_ground_truth",
]


@dataclass(frozen=True)
class GroundTruth:
    """True separator rows for one terminal.

    ``lines`` optionally holds the (top, bottom) row interval of every text
    line; when present it lets the evaluator tell over-separations apart from
    plain misses.
    """

    side: Side
    true_points: tuple[int, ...]
    total_lines: int
    lines: tuple[tuple[int, int], ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "true_points", tuple(int(p) for p in self.true_points))
        if any(b <= a for a, b in zip(self.true_points, self.true_points[1:])):
            raise ValueError("ground-truth points must be strictly increasing")
        if self.total_lines < 0:
            raise ValueError("total_lines must be non-negative")
        if self.lines is not None:
            object.__setattr__(self, "lines", tuple((int(a), int(b)) for a, b in self.lines))

    def to_dict(self) -> dict:
        out = {
            "side": Side(self.side).value,
            "total_lines": self.total_lines,
            "points": list(self.true_points),
        }
        if self.lines is not None:
            out["lines"] = [list(iv) for iv in self.lines]
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "GroundTruth":
        if not isinstance(data, dict):
            raise ValueError("ground truth must be a JSON object")
        try:
            side = Side(data["side"])
            total = data["total_lines"]
            points = data["points"]
        except (KeyError, ValueError) as exc:
            raise ValueError(f"invalid ground truth: {exc}") from None
        if not isinstance(total, int) or not all(isinstance(p, int) for p in points):
            raise ValueError("invalid ground truth: total_lines and points must be integers")
        lines = data.get("lines")
        return cls(side, tuple(points), total, tuple(map(tuple, lines)) if lines is not None else None)


@dataclass(frozen=True)
class Match:
    detected: int  # index into the detected list
    truth: int  # index into the truth list
    distance: int


@dataclass(frozen=True)
class Matching:
    matches: tuple[Match, ...]
    unmatched_detected: tuple[int, ...]
    unmatched_truth: tuple[int, ...]

    @property
    def o2o(self) -> int:
        return len(self.matches)


def match_points(detected: Sequence[int], truth: Sequence[int], tolerance: int) -> Matching:
    """Greedy one-to-one matching on globally sorted pair distances.

    Ties go to the smaller detected index, then the smaller truth index.
    """
    if tolerance < 0:
        raise ValueError("tolerance must be non-negative")
    detected = list(getattr(detected, "points", detected))
    truth = list(getattr(truth, "true_points", truth))
    candidates = sorted(
        (abs(d - g), i, j)
        for i, d in enumerate(detected)
        for j, g in enumerate(truth)
        if abs(d - g) <= tolerance
    )
    used_d, used_t, matches = set(), set(), []
    for dist, i, j in candidates:
        if i in used_d or j in used_t:
            continue
        used_d.add(i)
        used_t.add(j)
        matches.append(Match(i, j, dist))
    matches.sort(key=lambda m: m.detected)
    return Matching(
        tuple(matches),
        tuple(i for i in range(len(detected)) if i not in used_d),
        tuple(j for j in range(len(truth)) if j not in used_t),
    )


def detection_rate(o2o: int, n: int) -> Fraction:
    if n <= 0:
        raise ValueError("N must be positive")
    if o2o < 0 or o2o > n:
        raise ValueError("o2o must lie in [0, N]")
    return Fraction(o2o, n)


def _percentage(count: int, total_lines: int) -> Fraction:
    if total_lines <= 0:
        raise ValueError("total_lines must be positive")
    return Fraction(count * 100, total_lines)


def tn_rate(under_count: int, total_lines: int) -> Fraction:
    return _percentage(under_count, total_lines)


def fp_rate(over_count: int, total_lines: int) -> Fraction:
    return _percentage(over_count, total_lines)


def percent_display(value: Fraction, already_percent: bool = False) -> str:
    """Format an exact rate as ``'97.09%'`` with half-up rounding."""
    pct = value if already_percent else value * 100
    dec = Decimal(pct.numerator) / Decimal(pct.denominator)
    return f"{dec.quantize(Decimal('0.01'), rounding=ROUND_HALF_UP)}%"


def expected_point_count(total_lines: int) -> int:
    """Separator points a page with ``total_lines`` lines has per terminal.

    One per inter-line gap plus the top and bottom margins.
    """
    if total_lines < 1:
        raise ValueError("total_lines must be at least 1")
    return total_lines - 1 + 2


def default_tolerance(bands: BandList | None) -> int:
    if bands is None or not bands.texts:
        return 3
    return max(3, int(median_width(bands.texts) / 2))


@dataclass
class EvalReport:
    side: Side
    o2o: int
    N: int
    dr: Fraction
    tn: Fraction
    fp: Fraction
    under_count: int
    over_count: int
    total_lines: int
    tolerance: int
    matches: list[tuple[int, int, int]] = field(default_factory=list)
    unmatched_truth: list[int] = field(default_factory=list)
    unmatched_detected: list[int] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "schema": 1,
            "side": Side(self.side).value,
            "o2o": self.o2o,
            "N": self.N,
            "dr": float(self.dr),
            "dr_fraction": [self.dr.numerator, self.dr.denominator],
            "dr_percent": percent_display(self.dr),
            "tn": float(self.tn),
            "tn_percent": percent_display(self.tn, already_percent=True),
            "fp": float(self.fp),
            "fp_percent": percent_display(self.fp, already_percent=True),
            "under_count": self.under_count,
            "over_count": self.over_count,
            "total_lines": self.total_lines,
            "tolerance": self.tolerance,
            "matches": [list(m) for m in self.matches],
            "unmatched_truth": list(self.unmatched_truth),
            "unmatched_detected": list(self.unmatched_detected),
        }


def _inside(row: int, intervals) -> bool:
    return any(a <= row <= b for a, b in intervals)


def evaluate(
    detected: Sequence[int],
    truth: GroundTruth,
    tolerance: int | None = None,
    bands: BandList | None = None,
) -> EvalReport:
    """Score one terminal of one page.

    An unmatched truth point counts as under-separation when it falls inside
    a detected text band (or unconditionally when ``bands`` is not given); an
    unmatched detected point counts as over-separation when it falls inside a
    true text line (or unconditionally when the truth carries no lines).
    """
    detected = list(getattr(detected, "points", detected))
    if tolerance is None:
        tolerance = default_tolerance(bands)
    matching = match_points(detected, truth.true_points, tolerance)
    miss_rows = [truth.true_points[j] for j in matching.unmatched_truth]
    extra_rows = [detected[i] for i in matching.unmatched_detected]

    if bands is not None:
        text_iv = [(b.start, b.end) for b in bands.texts]
        under = sum(_inside(r, text_iv) for r in miss_rows)
    else:
        under = len(miss_rows)
    if truth.lines is not None:
        over = sum(_inside(r, truth.lines) for r in extra_rows)
    else:
        over = len(extra_rows)

    n = len(truth.true_points)
    total = truth.total_lines
    return EvalReport(
        side=Side(truth.side),
        o2o=matching.o2o,
        N=n,
        dr=detection_rate(matching.o2o, n) if n else Fraction(0),
        tn=tn_rate(under, total) if total else Fraction(0),
        fp=fp_rate(over, total) if total else Fraction(0),
        under_count=under,
        over_count=over,
        total_lines=total,
        tolerance=tolerance,
        matches=[(detected[m.detected], truth.true_points[m.truth], m.distance) for m in matching.matches],
        unmatched_truth=miss_rows,
        unmatched_detected=extra_rows,
    )


def load_ground_truth(path: str | os.PathLike) -> GroundTruth:
    with open(path, encoding="utf-8") as fh:
        return GroundTruth.from_dict(json.load(fh))


def save_ground_truth(truth: GroundTruth, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(truth.to_dict(), fh, indent=2)
        fh.write("\n")
