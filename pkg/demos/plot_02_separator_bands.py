"""
Separator bands on a synthetic page
===================================

Generate a page, threshold its left white-depth column at width/25 above the
column minimum, and plot the resulting bands next to the depth profile.
"""

import numpy as np

from rle_lineseg.band_detection import default_threshold, detect_bands
from rle_lineseg.pipeline import segment
from rle_lineseg.rle_codec import encode_image
from rle_lineseg.synthetic import generate, random_page_spec
from rle_lineseg.terminal_columns import Side, left_column

rng = np.random.default_rng(3)
spec = random_page_spec(rng, n_lines=(6, 6))
raster, truth = generate(spec)
doc = encode_image(raster)

column = left_column(doc)
bands = detect_bands(column)
t = default_threshold(doc.width)
print(f"{doc.width}x{doc.height} page, threshold {t} px")
for band in bands:
    print(f"  {band.kind.value:9s} rows {band.start:4d}-{band.end:4d} ({band.width})")

###############################################################################
# Midpoints of every separator band except the top margin.
result = segment(doc)
print("left points :", result[Side.LEFT].points.points)
print("truth       :", truth[Side.LEFT].true_points)

###############################################################################
# Depth profile with the separator rows shaded.
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

depths = np.array(column.depths)
fig, (ax0, ax1) = plt.subplots(1, 2, figsize=(8, 6), sharey=True)
ax0.imshow(raster, cmap="gray_r", aspect="auto")
ax0.set_title("page")
ax1.plot(depths - depths.min(), np.arange(len(depths)))
ax1.axvline(t, color="k", ls="--")
for band in bands.separators:
    ax1.axhspan(band.start, band.end, color="tab:orange", alpha=0.3)
for p in result[Side.LEFT].points.points:
    ax0.axhline(p, color="tab:red", lw=0.8)
ax1.set_title("left depth minus minimum")
ax1.invert_yaxis()
fig.savefig("separator_bands.png", dpi=100)
print("wrote separator_bands.png")
