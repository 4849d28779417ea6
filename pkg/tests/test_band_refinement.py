from fractions import Fraction

import numpy as np
import pytest

from rle_lineseg.band_detection import Band, BandKind, BandList, DetectionParams, detect_bands
from rle_lineseg.band_detection import group_mask as _group
from rle_lineseg.band_refinement import (
    RefinementTrace,
    RoiKind,
    RoiSet,
    average_pool,
    find_under_separation,
    insert_missing_separators,
    median_width,
    refine_bands,
    refine_roi,
    remove_over_separation,
)
from rle_lineseg.terminal_columns import Side, TerminalColumn

S, T = BandKind.SEPARATOR, BandKind.TEXT


def build(*widths, first=S):
    """Alternating band list from widths, starting with ``first``."""
    bands, pos, kind = [], 0, first
    for w in widths:
        bands.append(Band(kind, pos, pos + w - 1))
        pos += w
        kind = T if kind is S else S
    return BandList(tuple(bands), pos)


def col(depths, width=100, side=Side.LEFT):
    return TerminalColumn(side, tuple(depths), width)


# --- find_under_separation -------------------------------------------------

def test_oversized_band_excluded_from_average():
    bands = build(5, 40, 6, 40, 30, 40, 5, 34)
    assert bands.height == 200
    roi = find_under_separation(bands, 200)
    assert [(iv.start, iv.end, iv.kind) for iv in roi] == [(91, 120, RoiKind.OVERSIZED)]
    _, pool = average_pool(bands, 200, DetectionParams())
    assert Fraction(sum(b.width for b in pool), len(pool)) == Fraction(16, 3)


def test_uniform_bands_no_roi():
    assert not find_under_separation(build(4, 46, 4, 46, 4, 46, 4, 46), 200)


def test_wide_band_boundary():
    assert not find_under_separation(build(3, 300, 3, 300, 9, 385), 1000)
    roi = find_under_separation(build(3, 300, 3, 300, 13, 381), 1000)
    assert [(iv.width, iv.kind) for iv in roi] == [(13, RoiKind.WIDE)]


def test_no_separators_left_after_oversize_step():
    roi = find_under_separation(build(50, 50), 100)
    assert [iv.kind for iv in roi] == [RoiKind.OVERSIZED]


def brute_roi(widths_kinds, height, divisor=10, factor=2):
    seps = [(s, w) for s, w, k in widths_kinds if k is S]
    over = [(s, w) for s, w in seps if w * divisor > height]
    rest = [(s, w) for s, w in seps if w * divisor <= height]
    wide = []
    if rest:
        total, n = sum(w for _, w in rest), len(rest)
        wide = [(s, w) for s, w in rest if w * n > factor * total]
    return sorted([(s, RoiKind.OVERSIZED) for s, _ in over] + [(s, RoiKind.WIDE) for s, _ in wide])


def test_exclusion_rule_on_random_band_lists():
    rng = np.random.default_rng(11)
    for _ in range(1000):
        n = int(rng.integers(1, 16))
        widths = [int(w) for w in rng.integers(1, 60, size=n)]
        bands = build(*widths, first=S if rng.random() < 0.5 else T)
        h = bands.height
        oversized, pool = average_pool(bands, h, DetectionParams())
        # instrumented: nothing taller than h/10 reaches the average
        assert all(b.width * 10 <= h for b in pool)
        assert all(b.width * 10 > h for b in oversized)
        assert len(pool) + len(oversized) == len(bands.separators)
        roi = find_under_separation(bands, h)
        expected = brute_roi([(b.start, b.width, b.kind) for b in bands], h)
        assert [(iv.start, iv.kind) for iv in roi] == expected


# --- refine_roi -------------------------------------------------------------

def indented_page():
    # top gap, A, gap, B, [gap, indented line C, gap], D, gap, E, bottom gap
    depths = [100] * 5 + [10] * 10 + [100] * 5 + [10] * 10
    depths += [100] * 5 + [40] * 10 + [100] * 5
    depths += [10] * 10 + [100] * 5 + [10] * 10 + [100] * 5
    return col(depths)


def test_refine_roi_splits_indented_line():
    column = indented_page()
    bands = detect_bands(column)
    assert [b.width for b in bands.separators] == [5, 5, 20, 5, 5]
    roi = find_under_separation(bands)
    assert [(iv.start, iv.end) for iv in roi] == [(30, 49)]
    trace = RefinementTrace()
    refined = refine_roi(column, bands, roi, trace=trace)
    assert [(b.kind, b.start, b.end) for b in refined][4:7] == [(S, 30, 34), (T, 35, 44), (S, 45, 49)]
    assert [b.width for b in refined.separators] == [5] * 6
    assert trace.recursion_depth_used == 1 and not trace.cap_hit


def test_refine_roi_constant_slice_is_kept():
    column = col([100] * 30 + [10] * 10 + [100] * 5 + [10] * 10 + [100] * 5)
    bands = detect_bands(column)
    roi = find_under_separation(bands)
    assert roi
    trace = RefinementTrace()
    assert refine_roi(column, bands, roi, trace=trace) == bands
    assert trace.recursion_depth_used == 1


def test_refine_roi_empty_is_identity():
    column = indented_page()
    bands = detect_bands(column)
    trace = RefinementTrace()
    assert refine_roi(column, bands, RoiSet(), trace=trace) == bands
    assert trace.recursion_depth_used == 0


def nested_column():
    # a gap hiding an indented line, hiding a further-indented line
    return col([100] * 4 + [60] * 6 + [100] * 4 + [30] * 8 + [100] * 4 + [10] * 10 + [100] * 4)


def test_nested_roi_needs_two_passes():
    column = nested_column()
    bands = detect_bands(column)
    assert [(b.start, b.end) for b in bands.separators] == [(0, 25), (36, 39)]
    trace = RefinementTrace()
    out = refine_roi(column, bands, find_under_separation(bands), trace=trace)
    assert [(b.start, b.end) for b in out.separators] == [(0, 3), (10, 13), (22, 25), (36, 39)]
    assert trace.recursion_depth_used == 2 and not trace.cap_hit


def test_recursion_cap_is_recorded():
    column = nested_column()
    bands = detect_bands(column)
    params = DetectionParams(max_recursion_depth=1)
    trace = RefinementTrace()
    out = refine_roi(column, bands, find_under_separation(bands, params=params), params, trace)
    assert trace.cap_hit and trace.recursion_depth_used == 1
    assert [(b.start, b.end) for b in out.separators] == [(0, 13), (22, 25), (36, 39)]


def page_like_column(rng, params=DetectionParams()):
    width = int(rng.integers(200, 800))
    t = max(1, width // 25)
    depths = [width] * int(rng.integers(1, 30))
    base = int(rng.integers(0, width // 4))
    for _ in range(int(rng.integers(1, 10))):
        depths += [base + int(rng.integers(0, t // 2 + 1)) for _ in range(int(rng.integers(8, 30)))]
        depths += [width] * int(rng.integers(3, 25))
    return col(depths, width)


def test_recursion_terminates_on_random_columns():
    rng = np.random.default_rng(5)
    params = DetectionParams()
    for _ in range(1000):
        column = page_like_column(rng)
        bands = detect_bands(column, params)
        trace = RefinementTrace()
        refine_roi(column, bands, find_under_separation(bands, params=params), params, trace)
        assert trace.recursion_depth_used <= params.max_recursion_depth
        assert not trace.cap_hit


def test_recursion_progress_on_noisy_columns():
    rng = np.random.default_rng(9)
    params = DetectionParams()
    for _ in range(300):
        width = 300
        depths = [int(d) for d in rng.integers(0, width + 1, size=int(rng.integers(20, 200)))]
        column = col(depths, width)
        bands = detect_bands(column, params)
        seps = [sum(b.width for b in bands.separators)]
        roi = find_under_separation(bands, params=params)
        # replay pass by pass with a depth cap of k
        for k in range(1, params.max_recursion_depth + 1):
            trace = RefinementTrace()
            out = refine_roi(column, bands, roi, DetectionParams(max_recursion_depth=k), trace)
            seps.append(sum(b.width for b in out.separators))
            if not trace.cap_hit:
                break
        assert all(b < a for a, b in zip(seps, seps[1:-1]))
        assert all(b <= a for a, b in zip(seps, seps[1:]))


# --- deletion ---------------------------------------------------------------

def test_over_separation_sliver_example():
    bands = build(10, 40, 8, 38, 3, 6, 12, 41, 10)
    assert [b.width for b in bands.texts] == [40, 38, 6, 41]
    assert median_width(bands.texts) == Fraction(39)
    out, trace = remove_over_separation(bands)
    assert trace.deleted_bands == [Band(S, 96, 98)]
    assert [b.width for b in out.texts] == [40, 47, 41]
    assert out.height == bands.height


def test_deletion_noops():
    equal = build(10, 30, 8, 30, 8, 30, 10)
    assert remove_over_separation(equal)[0] == equal
    single = build(10, 30, 10)
    out, trace = remove_over_separation(single)
    assert out == single and not trace.deleted_bands


def test_margin_bands_never_deleted():
    bands = build(3, 5, 10, 40, 10, 40, 10)
    out, trace = remove_over_separation(bands)
    # the 5-row text has only the top margin and a 10-row gap; the gap is interior
    assert trace.deleted_bands == [Band(S, 8, 17)]
    assert out.bands[0] == Band(S, 0, 2)


def test_deletion_soundness_random():
    rng = np.random.default_rng(3)
    for _ in range(300):
        n = int(rng.integers(3, 15))
        widths = [int(w) for w in rng.integers(1, 50, size=2 * n + 1)]
        bands = build(*widths)
        out, trace = remove_over_separation(bands)
        # replay each deletion against the list as it stood at that moment
        current = bands
        for victim in trace.deleted_bands:
            seq = current.bands
            i = seq.index(victim)
            median = median_width(current.texts)
            assert not (seq[i - 1].width >= median and seq[i + 1].width >= median)
            mask = current.to_mask()
            mask[victim.start : victim.end + 1] = [0] * victim.width
            current = BandList(tuple(_group(mask)), current.height)
        assert current == out


# --- insertion --------------------------------------------------------------

def touching_page():
    # top, A, bridged gap, B, gap, C, gap, D, bottom
    left = [100] * 5 + [10] * 10 + [10] * 5 + [10] * 10 + [100] * 5 + [10] * 10 + [100] * 5 + [10] * 10 + [100] * 5
    right = [100] * 5 + [10] * 10 + [80] * 5 + [10] * 10 + [100] * 5 + [10] * 10 + [100] * 5 + [10] * 10 + [100] * 5
    return col(left), col(right, side=Side.RIGHT)


def test_insertion_from_opposite_terminal():
    left, right = touching_page()
    bands = detect_bands(left)
    assert [b.width for b in bands.texts] == [25, 10, 10]
    out, trace = insert_missing_separators(left, right, bands, side=Side.LEFT)
    assert out == bands
    assert trace.inserted_separators == [17]


def test_insertion_noops():
    left, right = touching_page()
    # nothing oversized on the right side
    rb = detect_bands(right)
    _, trace = insert_missing_separators(left, right, rb, side=Side.RIGHT)
    assert trace.inserted_separators == []
    # oversized band with no gap on the other side either
    _, trace = insert_missing_separators(left, left, detect_bands(left), side=Side.LEFT)
    assert trace.inserted_separators == []


def test_insertion_requires_matching_heights():
    left, right = touching_page()
    with pytest.raises(ValueError):
        insert_missing_separators(left, col([1, 2, 3]), detect_bands(left))


def test_refine_bands_composes():
    left, right = touching_page()
    bands, trace = refine_bands(left, right, detect_bands(left))
    assert trace.inserted_separators == [17]
    again, trace2 = refine_bands(left, right, bands)
    assert again == bands and trace2.inserted_separators == trace.inserted_separators
