"""
Run-length rows and terminal columns
====================================

Encode a small binary page row by row, look at the padded run matrix, and
read off the left column (first run) and the right virtual column (white
depth of the last run).
"""

import numpy as np

from rle_lineseg.rle_codec import decode_image, encode_image, padded_matrix
from rle_lineseg.terminal_columns import left_column, right_column

page = [
    "00000000000000",
    "00110000111110",
    "01111000111110",
    "01111000111110",
    "01111000111110",
    "00110000000000",
    "10000000000000",
    "10000000000000",
    "00100001111100",
    "01110001111100",
    "01111001111100",
    "01111100000000",
    "00000000000000",
]

doc = encode_image(page)

###############################################################################
# Rows that start with ink get a leading 0 so every row opens on a white run.
print(padded_matrix(doc))

###############################################################################
# Decoding gives the page back bit for bit.
assert ["".join(map(str, r)) for r in decode_image(doc)] == page

###############################################################################
# The two terminal signals used for segmentation.
print("left :", left_column(doc).depths)
print("right:", right_column(doc).depths)
print("pixels per stored run: %.2f" % (doc.width * doc.height / doc.run_count))
