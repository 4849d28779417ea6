import numpy as np
import pytest

from conftest import SAMPLE_BITS
from rle_lineseg.pbm import PbmFormatError, UnsupportedFormatError, parse_pbm, read_pbm, write_pbm


def sample_array():
    return np.array([[int(c) for c in row] for row in SAMPLE_BITS], dtype=np.uint8)


@pytest.mark.parametrize("plain", [True, False])
def test_pbm_round_trip(tmp_path, plain):
    raster = sample_array()
    path = tmp_path / "p.pbm"
    write_pbm(raster, path, plain=plain)
    assert path.read_bytes()[:2] == (b"P1" if plain else b"P4")
    assert np.array_equal(read_pbm(path), raster)


def test_p1_with_comments_and_packed_digits():
    data = b"P1\n# a comment\n4 2\n0110\n1 0 0 1 # trailing\n"
    assert parse_pbm(data).tolist() == [[0, 1, 1, 0], [1, 0, 0, 1]]


def test_p4_bit_order():
    # 0b10100000 -> first pixel black
    assert parse_pbm(b"P4\n3 1\n\xa0").tolist() == [[1, 0, 1]]


def test_rejects_other_formats():
    with pytest.raises(UnsupportedFormatError):
        parse_pbm(b"P2\n1 1\n255\n0\n")
    with pytest.raises(UnsupportedFormatError):
        parse_pbm(b"\x89PNG\r\n")


def test_truncated():
    with pytest.raises(PbmFormatError):
        parse_pbm(b"P4\n16 2\n\x00")
    with pytest.raises(PbmFormatError):
        parse_pbm(b"P1\n2 2\n0 1 1\n")
