import numpy as np
import pytest

from rle_lineseg.band_detection import Band, BandKind, BandList
from rle_lineseg.band_refinement import RefinementTrace
from rle_lineseg.pipeline import PipelineConfig, segment
from rle_lineseg.rle_codec import encode_image
from rle_lineseg.separator_points import Provenance, SeparatorPoints, assemble, band_midpoint
from rle_lineseg.synthetic import LineSpec, PageSpec, generate
from rle_lineseg.terminal_columns import Side

S, T = BandKind.SEPARATOR, BandKind.TEXT


def test_band_midpoint():
    assert band_midpoint(Band(S, 10, 20)) == 15
    assert band_midpoint(Band(S, 10, 21)) == 15
    assert band_midpoint(Band(S, 7, 7)) == 7
    with pytest.raises(ValueError):
        band_midpoint(Band(T, 0, 3))


def test_assemble_drops_top_margin():
    bands = BandList(
        (Band(S, 0, 9), Band(T, 10, 49), Band(S, 50, 59), Band(T, 60, 99), Band(S, 100, 109)), 110
    )
    pts = assemble(bands, RefinementTrace(), Side.LEFT)
    assert pts.points == (54, 104)
    assert pts.provenance == (Provenance.DETECTED,) * 2


def test_assemble_without_top_band_keeps_everything():
    bands = BandList((Band(T, 0, 9), Band(S, 10, 19), Band(T, 20, 29)), 30)
    assert assemble(bands, None, Side.RIGHT).points == (14,)


def test_assemble_single_band_page():
    assert assemble(BandList((Band(S, 0, 99),), 100), None, Side.LEFT).points == ()


def test_assemble_merges_insertions():
    bands = BandList((Band(S, 0, 4), Band(T, 5, 29), Band(S, 30, 34), Band(T, 35, 44)), 45)
    trace = RefinementTrace(inserted_separators=[17])
    pts = assemble(bands, trace, Side.LEFT)
    assert pts.points == (17, 32)
    assert pts.provenance == (Provenance.INSERTED, Provenance.DETECTED)
    # count identity: separator bands - top + inserted
    assert len(pts) == len(bands.separators) - 1 + 1


def test_points_validation():
    with pytest.raises(ValueError):
        SeparatorPoints(Side.LEFT, (5, 5), (Provenance.DETECTED,) * 2, 10)
    with pytest.raises(ValueError):
        SeparatorPoints(Side.LEFT, (12,), (Provenance.DETECTED,), 10)


def five_line_page(seed=0):
    lines, y = [], 20
    for _ in range(5):
        lines.append(LineSpec(y, y + 19, 30, 40, 0.3))
        y += 20 + 14
    return PageSpec(400, y - 14 + 25, tuple(lines), seed=seed)


def test_five_line_count_identity():
    spec = five_line_page()
    raster, truth = generate(spec)
    result = segment(encode_image(raster), PipelineConfig())
    for side in Side:
        pts = result[side].points
        assert len(pts) == 5  # four gaps plus the bottom margin
        assert pts.points == truth[side].true_points
        assert all(b > a for a, b in zip(pts.points, pts.points[1:]))
        # every point sits on a white row of the decoded raster
        assert not raster[list(pts.points)].any()
