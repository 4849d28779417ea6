"""
Detection rate on a synthetic corpus
====================================

A 100-page corpus where a fifth of the pages have touching lines and a fifth
have a concave sliver.  Scores DR, TN and FP per terminal for the three
threshold divisors 15, 25 and 35, with and without corrections.
"""

from collections import defaultdict
from fractions import Fraction

from rle_lineseg.band_detection import DetectionParams
from rle_lineseg.evaluation import evaluate, percent_display
from rle_lineseg.pipeline import PipelineConfig, segment
from rle_lineseg.rle_codec import encode_image
from rle_lineseg.synthetic import generate, make_corpus
from rle_lineseg.terminal_columns import Side

corpus = [generate(spec) for spec in make_corpus(100, seed=0)]
docs = [(encode_image(raster), truth) for raster, truth in corpus]


def score(config):
    acc = defaultdict(lambda: [0, 0, 0, 0, 0])
    for doc, truth in docs:
        result = segment(doc, config)
        for side in Side:
            rep = evaluate(result[side].points, truth[side], bands=result[side].bands)
            row = acc[side]
            row[0] += rep.o2o
            row[1] += rep.N
            row[2] += rep.under_count
            row[3] += rep.over_count
            row[4] += rep.total_lines
    return acc


print(f"{'divisor':>7} {'fix':>4} {'side':>5} {'DR':>8} {'TN':>7} {'FP':>7}")
for divisor in (15, 25, 35):
    for fix in (False, True):
        config = PipelineConfig(
            params=DetectionParams(threshold_divisor=divisor),
            enable_insertion=fix,
            enable_deletion=fix,
        )
        for side, (o2o, n, under, over, total) in score(config).items():
            print(f"{divisor:>7} {str(fix):>4} {side.value:>5} "
                  f"{percent_display(Fraction(o2o, n)):>8} "
                  f"{percent_display(Fraction(100 * under, total), True):>7} "
                  f"{percent_display(Fraction(100 * over, total), True):>7}")
