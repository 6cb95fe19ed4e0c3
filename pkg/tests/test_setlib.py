import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fracschro.setlib import (
    Cone, HalfLine, IntervalSet, Periodic, Plane, Product, RealLine, Rotated,
    box_measure_2d, clip_measure, density_trace, disk_measure_2d, iterated_density,
    line_thickness_2d, normalize, region_from_json, segment_measure, thickness,
)

STRIPES = Periodic(2.0, (0.0, 1.0))


# -- normalize -------------------------------------------------------------

@pytest.mark.parametrize("raw, expected", [
    ([(0, 1), (0.5, 2)], ((0.0, 2.0),)),
    ([(3, 4), (1, 2)], ((1.0, 2.0), (3.0, 4.0))),
    ([(0, 1), (1, 2)], ((0.0, 2.0),)),
])
def test_normalize_examples(raw, expected):
    assert normalize(raw).intervals == expected


@pytest.mark.parametrize("bad", [[(1, 1)], [(2, 1)], [(0, math.inf)], [(math.nan, 1)]])
def test_normalize_rejects_bad_pairs(bad):
    with pytest.raises(ValueError):
        normalize(bad)


interval_lists = st.lists(
    st.tuples(st.floats(-50, 50), st.floats(0.01, 10)).map(lambda p: (p[0], p[0] + p[1])),
    min_size=1, max_size=8,
)


@given(interval_lists)
def test_normalized_form_is_sorted_and_separated(raw):
    S = IntervalSet(raw)
    for lo, hi in S.intervals:
        assert lo < hi
    for (_, hi), (lo, _) in zip(S.intervals, S.intervals[1:]):
        assert hi < lo


@given(interval_lists)
def test_normalize_preserves_union_measure(raw):
    S = IntervalSet(raw)
    grid = np.linspace(-60, 70, 130_001)
    mid = 0.5 * (grid[1:] + grid[:-1])
    inside = np.zeros(mid.size, bool)
    for lo, hi in raw:
        inside |= (mid >= lo) & (mid < hi)
    brute = inside.sum() * (grid[1] - grid[0])
    assert S.measure == pytest.approx(brute, abs=len(raw) * 2e-3)


# -- clip_measure ----------------------------------------------------------

def test_clip_measure_examples():
    assert clip_measure(IntervalSet([(-1e9, 1e9)]), -1, 1) == 2
    assert clip_measure(HalfLine(0.0), -7.5, 7.5) == 7.5
    # [0,1], [2,3], [4,5], [6,7]: four unit pieces
    assert clip_measure(STRIPES, 0, 7) == 4.0
    assert clip_measure(RealLine(), -3, 5) == 8


@given(interval_lists, st.floats(-60, 60), st.floats(0, 30), st.floats(0, 30))
def test_clip_measure_additive(raw, a, u, v):
    S = IntervalSet(raw)
    b, c = a + u, a + u + v
    assert clip_measure(S, a, b) + clip_measure(S, b, c) == pytest.approx(clip_measure(S, a, c), abs=1e-12)


@given(st.floats(0.5, 5), st.floats(0, 1), st.floats(0.05, 1), st.floats(-30, 30), st.floats(0.1, 40))
def test_periodic_clip_matches_brute_force(period, start_frac, width_frac, a, length):
    lo = start_frac * period
    on = (lo, lo + width_frac * period * 0.99)
    P = Periodic(period, on)
    b = a + length
    k0, k1 = math.floor((a - on[1]) / period), math.ceil((b - on[0]) / period)
    brute = sum(max(0.0, min(b, on[1] + k * period) - max(a, on[0] + k * period))
                for k in range(k0, k1 + 1))
    assert clip_measure(P, a, b) == pytest.approx(brute, abs=1e-9)


# -- density_trace ---------------------------------------------------------

def test_density_examples():
    assert np.allclose(density_trace(HalfLine(0.0), [1, 10, 100]).ratios, 0.5)
    assert np.allclose(density_trace(RealLine(), [1, 10, 100]).ratios, 1.0)
    tr = density_trace(STRIPES, [10, 100, 1000])
    assert np.all(np.abs(tr.ratios - 0.5) <= 1 / np.array([10, 100, 1000]))


def test_density_trace_running_inf_and_errors():
    tr = density_trace(IntervalSet([(0, 1), (5, 9)]), [1, 2, 4, 8, 16])
    assert np.all(np.diff(tr.running_inf) <= 0)
    assert np.all((tr.ratios >= 0) & (tr.ratios <= 1))
    assert tr.liminf_estimate == tr.running_inf[-1]
    with pytest.raises(ValueError):
        density_trace(STRIPES, [])


# -- thickness -------------------------------------------------------------

def test_thickness_examples():
    assert thickness(STRIPES, 2, (-100, 100)) == 0.5
    assert thickness(RealLine(), 3.7, (-10, 10)) == 1.0
    assert thickness(IntervalSet([(0, 1)]), 1, (-10, 10)) == 0.0
    with pytest.raises(ValueError):
        thickness(STRIPES, 5, (0, 4))


@settings(max_examples=60)
@given(interval_lists, st.floats(0.5, 10))
def test_thickness_matches_dense_scan(raw, L):
    S = IntervalSet(raw)
    a, b = -60.0, 60.0
    xs = np.linspace(a, b - L, 4001)
    scanned = min(clip_measure(S, x, x + L) for x in xs) / L
    exact = thickness(S, L, (a, b))
    assert exact <= scanned + 1e-12
    # a dense scan misses the true minimum by at most one grid step of slope 1/L
    assert scanned - exact <= 2 * (xs[1] - xs[0]) / L + 1e-12


@settings(max_examples=60)
@given(interval_lists, st.floats(0.5, 5), st.floats(5, 30))
def test_thickness_bounds_density(raw, L, R):
    S = IntervalSet(raw)
    ratio = clip_measure(S, -R, R) / (2 * R)
    assert thickness(S, L, (-R, R)) <= ratio + 1e-12


# -- planar regions --------------------------------------------------------

def test_box_measure_examples():
    assert box_measure_2d(Cone(math.pi / 4), 1, 1) == pytest.approx(1)
    assert box_measure_2d(Cone(math.pi / 4), 1, 5) == pytest.approx(1)
    assert box_measure_2d(Product(HalfLine(0.0), RealLine()), 1, 1) == 2
    assert box_measure_2d(Rotated(math.pi / 2, Cone(math.pi / 4)), 1, 1) == pytest.approx(1, abs=1e-12)


@pytest.mark.parametrize("delta", [0.2, math.pi / 4, 1.1, math.pi / 2])
@pytest.mark.parametrize("R1, R2", [(1, 1), (3, 0.5), (0.7, 9)])
def test_cone_box_measure_matches_raster(delta, R1, R2):
    C = Cone(delta)
    n = 1500
    xs = -R1 + (np.arange(n) + 0.5) * 2 * R1 / n
    ys = -R2 + (np.arange(n) + 0.5) * 2 * R2 / n
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    raster = C.contains(X, Y).mean() * 4 * R1 * R2
    assert box_measure_2d(C, R1, R2) == pytest.approx(raster, rel=5e-3, abs=5e-3)


@settings(max_examples=25, deadline=None)
@given(st.floats(0, 2 * math.pi), st.floats(0.1, 1.5), st.floats(0.5, 3))
def test_rotation_preserves_disk_measure(angle, delta, R):
    inner = Cone(delta)
    rotated = disk_measure_2d(Rotated(angle, inner), R, n=1024)
    plain = disk_measure_2d(inner, R, n=1024)
    assert abs(rotated - plain) <= 1e-3 * math.pi * R * R + 1e-2 * R * R


def test_iterated_density_examples():
    it = iterated_density(Cone(math.pi / 4), [1], [1, 10, 100])
    assert np.allclose(it.ratios[0], [1 / 4, 1 / 40, 1 / 400])
    assert np.all(np.diff(it.inner_running_inf[0]) <= 0)
    assert np.allclose(iterated_density(Product(HalfLine(0.0), RealLine()), [1, 5], [2, 7]).ratios, 0.5)
    assert np.allclose(iterated_density(Plane(), [1, 5], [2, 7]).ratios, 1.0)
    with pytest.raises(ValueError):
        iterated_density(Plane(), [], [1])


@settings(max_examples=40)
@given(interval_lists, interval_lists)
def test_iterated_density_factorizes_on_products(rx, ry):
    Sx, Sy = IntervalSet(rx), IntervalSet(ry)
    r1, r2 = [1.0, 5.0, 30.0], [2.0, 9.0, 70.0]
    it = iterated_density(Product(Sx, Sy), r1, r2)
    fx = np.array([clip_measure(Sx, -R, R) / (2 * R) for R in r1])
    fy = np.array([clip_measure(Sy, -R, R) / (2 * R) for R in r2])
    assert np.allclose(it.ratios, np.outer(fx, fy), atol=1e-9, rtol=0)


def test_segment_measure_examples():
    P = Product(STRIPES, RealLine())
    assert segment_measure(P, (0.5, -1.0), math.pi / 2, 2.0) == pytest.approx(2.0)
    assert segment_measure(P, (0.0, 0.0), 0.0, 2.0) == pytest.approx(1.0)
    assert segment_measure(Cone(math.pi / 4), (-1.0, -3.0), math.pi / 2, 6.0) == 0.0


def test_line_thickness_examples():
    assert line_thickness_2d(Plane(), 2.0, 50, seed=1).gamma_hat == pytest.approx(1.0)
    est = line_thickness_2d(Product(STRIPES, RealLine()), 2.0, 400, seed=3)
    assert est.gamma_hat <= 0.5 + 1e-9
    again = line_thickness_2d(Product(STRIPES, RealLine()), 2.0, 400, seed=3)
    assert again == est


# -- JSON ------------------------------------------------------------------

@pytest.mark.parametrize("obj", [
    {"type": "intervals", "items": [[0, 1], [3, 5]]},
    {"type": "periodic", "period": 2, "on": [0, 1]},
    {"type": "halfline", "from": 0.5},
    {"type": "real"},
    {"type": "cone", "delta": 0.5},
    {"type": "product", "x": {"type": "halfline", "from": 0}, "y": {"type": "real"}},
    {"type": "rotate", "angle": 0.3, "of": {"type": "cone", "delta": 0.5}},
])
def test_region_json_round_trip(obj):
    region = region_from_json(obj)
    assert region_from_json(region.to_json()) == region


def test_region_json_rejects_unknown_type():
    with pytest.raises(ValueError):
        region_from_json({"type": "blob"})
