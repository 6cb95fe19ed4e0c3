import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fracschro.bandlimit import (
    BandSpec, FourierField, FourierGrid, annihilating_constant, concentration_matrix,
    project_band, random_bandlimited, smallest_eigpair, spectral_estimate_scan,
)
from fracschro.setlib import IntervalSet, Periodic, RealLine

SMALL = FourierGrid(16.0, 1024)
STRIPES = Periodic(2.0, (0.0, 1.0))


def test_grid_requires_power_of_two():
    with pytest.raises(ValueError):
        FourierGrid(64.0, 1000)
    g = FourierGrid(64.0, 2 ** 12)
    assert g.x[0] == -64.0 and g.x[-1] < 64.0
    assert np.allclose(np.sort(g.xi), math.pi / 64 * np.arange(-2 ** 11, 2 ** 11))


def test_sample_and_coefficient_norms_agree():
    rng = np.random.default_rng(3)
    samples = rng.standard_normal(SMALL.m) + 1j * rng.standard_normal(SMALL.m)
    f = FourierField.from_samples(SMALL, samples)
    assert f.norm() == pytest.approx(f.sample_norm(), rel=1e-10)
    assert np.allclose(f.samples, samples, atol=1e-12)


def test_half_order_band_keeps_unit_disk():
    f = FourierField(SMALL, np.ones(SMALL.m))
    p = project_band(f, BandSpec(0.5, 0.0, 1.0))
    kept = p.coeffs != 0
    assert np.array_equal(kept, np.abs(SMALL.xi) <= 1)


def test_empty_band_gives_zero_field():
    f = FourierField(SMALL, np.ones(SMALL.m))
    assert not np.any(project_band(f, BandSpec(1.0, -5.0, 1.0)).coeffs)


def test_projection_is_idempotent_bit_exact():
    rng = np.random.default_rng(0)
    f = FourierField(SMALL, rng.standard_normal(SMALL.m) + 1j * rng.standard_normal(SMALL.m))
    b = BandSpec(1.0, 4.0, 9.0)
    once = project_band(f, b)
    twice = project_band(once, b)
    assert np.array_equal(once.coeffs, twice.coeffs)
    assert twice.norm() == pytest.approx(twice.sample_norm(), rel=1e-10)


def test_projection_warns_on_thin_band():
    f = FourierField(SMALL, np.ones(SMALL.m))
    with pytest.warns(RuntimeWarning):
        project_band(f, BandSpec(1.0, 100.0, 1.0))


def test_random_bandlimited():
    b = BandSpec(1.0, 0.0, 1.0)
    f = random_bandlimited(b, SMALL, seed=1)
    g = random_bandlimited(b, SMALL, seed=2)
    assert np.array_equal(project_band(f, b).coeffs, f.coeffs)
    assert f.norm() == pytest.approx(1.0, abs=1e-12)
    assert np.linalg.norm(f.coeffs - g.coeffs) > 0.5
    with pytest.raises(ValueError):
        random_bandlimited(BandSpec(1.0, -3.0, 1.0), SMALL)


def test_full_domain_constant_is_one():
    r = annihilating_constant(RealLine(), BandSpec(1.0, 0.0, 1.0), SMALL)
    assert r.c_tilde == pytest.approx(1.0, abs=1e-12)
    assert not r.annihilated


def test_empty_set_is_annihilated():
    r = annihilating_constant(IntervalSet([(100, 101)]), BandSpec(1.0, 0.0, 1.0), SMALL)
    assert r.annihilated and math.isinf(r.c_tilde) and r.flag == "annihilated"


def test_periodic_constant_is_grid_stable():
    b = BandSpec(1.0, 0.0, 1.0)
    coarse = annihilating_constant(STRIPES, b, FourierGrid(64.0, 2 ** 12)).c_tilde
    fine = annihilating_constant(STRIPES, b, FourierGrid(64.0, 2 ** 13)).c_tilde
    assert math.isfinite(coarse) and abs(fine / coarse - 1) <= 0.2


def test_minimizer_certificate():
    omega = IntervalSet([(-3, 1), (4, 9)])
    r = annihilating_constant(omega, BandSpec(1.0, 0.0, 1.0), SMALL)
    f = r.minimizer
    ratio = f.sample_norm(omega.contains(SMALL.x)) / f.norm()
    assert ratio == pytest.approx(1 / r.c_tilde, rel=1e-6)
    assert not np.any(f.coeffs[~r.band.mask(SMALL.xi)])


def test_concentration_matrix_matches_direct_compression():
    omega = IntervalSet([(-2, 3)])
    grid = FourierGrid(4.0, 64)
    b = BandSpec(1.0, 2.0, 2.0)
    Q, idx = concentration_matrix(omega, b, grid)
    # build P M P explicitly from the unitary DFT
    F = np.fft.fft(np.eye(grid.m), norm="ortho")
    Mw = np.diag(omega.contains(grid.x).astype(float))
    full = F @ Mw @ F.conj().T
    assert np.allclose(Q, full[np.ix_(idx, idx)], atol=1e-13)


def test_inverse_iteration_matches_dense_solver():
    omega = IntervalSet([(-2, 3)])
    Q, _ = concentration_matrix(omega, BandSpec(1.0, 0.0, 4.0), SMALL)
    lam, v = smallest_eigpair(Q)
    ref = np.linalg.eigvalsh(Q)[0]
    assert lam == pytest.approx(ref, rel=1e-8)
    assert np.linalg.norm(Q @ v - lam * v) < 1e-6


sub_intervals = st.tuples(st.floats(-15, 14), st.floats(0.2, 6)).map(lambda p: (p[0], min(p[0] + p[1], 15.9)))


@settings(max_examples=20, deadline=None)
@given(st.lists(sub_intervals, min_size=1, max_size=4), st.lists(sub_intervals, min_size=0, max_size=3))
def test_constant_shrinks_as_set_grows(inner, extra):
    small = IntervalSet(inner)
    big = IntervalSet(inner + extra)
    b = BandSpec(1.0, 0.0, 1.0)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        rs = annihilating_constant(small, b, SMALL)
        rb = annihilating_constant(big, b, SMALL)
    assert 0.0 <= rs.lam_min <= 1.0 and 0.0 <= rb.lam_min <= 1.0
    assert rb.lam_min >= rs.lam_min - 1e-12
    assert rb.c_tilde <= rs.c_tilde * (1 + 1e-9)


def test_scan_on_full_domain():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        scan = spectral_estimate_scan(RealLine(), 1.0, 1.0, [0, 10, 100], SMALL)
    assert np.allclose(scan.c_tilde, 1.0)
    assert scan.k_hat == pytest.approx(1.0)
    assert not scan.divergent
    rows = list(scan.rows())
    assert [r["flag"] for r in rows] == ["ok"] * 3
    assert rows[0]["band_lo"] == 0.0 and rows[0]["band_hi"] == 1.0


def test_scan_flags_non_thick_set():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        scan = spectral_estimate_scan(IntervalSet([(-1, 1)]), 1.0, 1.0, [0, 10, 100], FourierGrid(64.0, 2 ** 12))
    assert scan.divergent
