"""
Under- and over-separation corrections
======================================

Three pages, each with one defect: lines touching at the left start, a
deeply indented line, and a concave glyph that opens a pseudo gap.  Compare
the left-terminal points with corrections switched off and on.
"""

from rle_lineseg.evaluation import evaluate
from rle_lineseg.pipeline import PipelineConfig, segment
from rle_lineseg.rle_codec import encode_image
from rle_lineseg.synthetic import ConcaveSliver, LeftIndent, LineSpec, PageSpec, TouchAtLeft, generate
from rle_lineseg.terminal_columns import Side

lines = tuple(LineSpec(20 + 34 * i, 39 + 34 * i, 25, 40) for i in range(5))
pages = {
    "touching": PageSpec(400, 200, lines, seed=1, artifacts=(TouchAtLeft(1, 2),)),
    "indent": PageSpec(400, 200, lines, seed=1, artifacts=(LeftIndent(3, 120),)),
    "sliver": PageSpec(400, 200, lines, seed=1, artifacts=(ConcaveSliver(2, 4),)),
}

off = PipelineConfig(enable_insertion=False, enable_deletion=False)
on = PipelineConfig()

for name, spec in pages.items():
    raster, truth = generate(spec)
    doc = encode_image(raster)
    print(f"{name}: truth {truth[Side.LEFT].true_points}")
    for label, config in (("off", off), ("on ", on)):
        res = segment(doc, config)[Side.LEFT]
        rep = evaluate(res.points, truth[Side.LEFT], bands=res.bands)
        tags = [p.value[0] for p in res.points.provenance]
        print(f"  corrections {label}: {res.points.points} {tags} "
              f"o2o={rep.o2o}/{rep.N} under={rep.under_count} over={rep.over_count} "
              f"roi passes={res.trace.recursion_depth_used}")
