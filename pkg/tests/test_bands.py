import math

import numpy as np
import pytest

from kpband.bands import (
    EDGE_WINDOW,
    MissedBandWarning,
    band_width_and_gap_profile,
    dispersion_curve,
    find_band_edges,
)
from kpband.core import (
    FamilySpec,
    IDENTITY_INTERACTION,
    LatticeParams,
    make_connection,
    trace_function,
)


def delta(v):
    return make_connection(FamilySpec("delta", v))


class TestFindBandEdges:
    def test_free_case_single_band(self, lat):
        bands = find_band_edges(IDENTITY_INTERACTION, lat, 0.01, 50.0)
        assert len(bands) == 1
        band = bands[0]
        assert band.e_lo == 0.01 and band.e_hi == 50.0
        assert band.edge_kind_lo == EDGE_WINDOW and band.edge_kind_hi == EDGE_WINDOW
        assert band.open_below

    def test_delta_edges_pinned_at_resonances(self, lat):
        bands = find_band_edges(delta(2.0), lat, 0.5, 100.0, 50000)
        edges = [b.e_lo for b in bands] + [b.e_hi for b in bands]
        for n in (1, 2, 3):
            resonance = (n * math.pi) ** 2
            assert min(abs(e - resonance) for e in edges) < 1e-9

    def test_strong_delta_narrow_bands(self, lat):
        strength = 1000.0
        bands = find_band_edges(delta(strength), lat, 1.0, 100.0, 400000)
        assert len(bands) == 3
        for n, band in enumerate(bands, start=1):
            # bands pinch onto (n pi)^2 from below, width ~ 8 n^2 pi^2 / v
            expected_width = 8.0 * (n * math.pi) ** 2 / strength
            assert band.width_e < 1.2 * expected_width
            assert band.e_hi == pytest.approx((n * math.pi) ** 2, abs=1e-9)
            assert band.e_lo > (n * math.pi) ** 2 - 1.2 * expected_width

    def test_band_midpoints_strictly_allowed(self, lat):
        for spec in (FamilySpec("delta", 2.0), FamilySpec("epsilon", -0.5),
                     FamilySpec("rotation", 1.0), FamilySpec("hyperbolic", 1.0)):
            v = make_connection(spec)
            for band in find_band_edges(v, lat, -25.0, 120.0):
                mid = 0.5 * (band.e_lo + band.e_hi)
                assert abs(trace_function(mid, v, lat)) < 2.0

    def test_edge_residuals(self, lat):
        for spec in (FamilySpec("delta", 2.0), FamilySpec("epsilon", 1.0),
                     FamilySpec("rotation", 1.0), FamilySpec("hyperbolic", 1.0)):
            v = make_connection(spec)
            for band in find_band_edges(v, lat, -10.0, 120.0):
                for energy, kind in ((band.e_lo, band.edge_kind_lo), (band.e_hi, band.edge_kind_hi)):
                    if kind == EDGE_WINDOW:
                        continue
                    assert abs(abs(trace_function(energy, v, lat)) - 2.0) < 1e-9

    def test_edge_kinds_carry_the_binding_sign(self, lat):
        v = delta(2.0)
        for band in find_band_edges(v, lat, 0.5, 100.0):
            for energy, kind in ((band.e_lo, band.edge_kind_lo), (band.e_hi, band.edge_kind_hi)):
                if kind == EDGE_WINDOW:
                    continue
                f = trace_function(energy, v, lat)
                assert kind == ("+2" if f > 0 else "-2")

    @pytest.mark.parametrize("strength", [2.0, -2.0, 7.5, -0.3, 1000.0])
    @pytest.mark.parametrize("n_zones", [1, 3, 5])
    def test_zone_count(self, lat, strength, n_zones):
        # Exactly one band per pi-interval of k0*a, counting the truncated
        # tail of the negative band for -4 < v < 0.  (For v <= -4 the lowest
        # band sits entirely below E = 0 and leaves the positive window.)
        window_top = (n_zones * math.pi) ** 2
        bands = find_band_edges(delta(strength), lat, 0.0, window_top, 60000)
        assert len(bands) == n_zones

    def test_bands_disjoint_and_sorted(self, lat):
        bands = find_band_edges(make_connection(FamilySpec("epsilon", -0.5)), lat, -25.0, 120.0)
        for a, b in zip(bands[:-1], bands[1:]):
            assert a.e_hi < b.e_lo
            assert a.index + 1 == b.index

    def test_negative_energy_band_for_negative_epsilon(self, lat):
        bands = find_band_edges(make_connection(FamilySpec("epsilon", -0.5)), lat, -25.0, 50.0)
        assert bands[0].e_lo < 0.0

    def test_grid_refinement_keeps_bands(self, lat):
        v = make_connection(FamilySpec("epsilon", -0.5))
        coarse = find_band_edges(v, lat, -25.0, 120.0, 5000)
        fine = find_band_edges(v, lat, -25.0, 120.0, 10000)
        for band in coarse:
            match = [b for b in fine if b.e_lo <= 0.5 * (band.e_lo + band.e_hi) <= b.e_hi]
            assert len(match) == 1

    def test_under_resolved_band_is_reported_and_still_found(self, lat):
        v = delta(1e4)
        reference = find_band_edges(v, lat, 9.0, 9.9, 200000)
        assert len(reference) == 1
        center = 0.5 * (reference[0].e_lo + reference[0].e_hi)
        width = reference[0].width_e
        # Five scan points with only the middle one inside the band: the
        # crossing pair lands in adjacent cells and must be flagged.
        with pytest.warns(MissedBandWarning):
            coarse = find_band_edges(v, lat, center - 1.5 * width, center + 1.5 * width, 3)
        assert len(coarse) == 1
        assert coarse[0].e_lo == pytest.approx(reference[0].e_lo, abs=1e-9)

    def test_input_validation(self, lat):
        with pytest.raises(ValueError):
            find_band_edges(IDENTITY_INTERACTION, lat, 5.0, 5.0)
        with pytest.raises(ValueError):
            find_band_edges(IDENTITY_INTERACTION, lat, 0.0, 1.0, grid_n=1)
        with pytest.raises(ValueError):
            find_band_edges(IDENTITY_INTERACTION, lat, 0.0, math.inf)


class TestDispersionCurve:
    def test_free_case_reduced_zone(self, lat):
        band = find_band_edges(IDENTITY_INTERACTION, lat, 0.01, 50.0)[0]
        points = dispersion_curve(band, IDENTITY_INTERACTION, lat, 301)
        for pt in points:
            k0 = math.sqrt(pt.energy)
            folded = math.acos(math.cos(k0))  # k0 folded into [0, pi]
            assert pt.k == pytest.approx(folded, abs=1e-9)

    def test_edges_map_to_zone_boundaries(self, lat):
        v = delta(2.0)
        band = find_band_edges(v, lat, 0.5, 100.0)[0]
        points = dispersion_curve(band, v, lat, 11)
        boundary = {round(points[0].k, 6), round(points[-1].k, 6)}
        assert boundary == {0.0, round(math.pi / lat.spacing, 6)}

    def test_self_consistency(self, lat):
        v = delta(2.0)
        for band in find_band_edges(v, lat, 0.5, 100.0):
            for pt in dispersion_curve(band, v, lat, 101):
                f = trace_function(pt.energy, v, lat)
                assert 2.0 * math.cos(pt.k * lat.spacing) == pytest.approx(f, abs=1e-9)
                assert 0.0 <= pt.k <= math.pi / lat.spacing

    def test_monotone_energy_samples(self, lat):
        v = delta(2.0)
        band = find_band_edges(v, lat, 0.5, 100.0)[0]
        points = dispersion_curve(band, v, lat, 33)
        energies = [pt.energy for pt in points]
        assert energies == sorted(energies)
        assert energies[0] == band.e_lo and energies[-1] == band.e_hi

    def test_stale_band_rejected(self, lat):
        band = find_band_edges(delta(2.0), lat, 0.5, 100.0)[0]
        with pytest.raises(ValueError, match="band condition"):
            dispersion_curve(band, delta(5.0), lat, 21)

    def test_point_count_validation(self, lat):
        band = find_band_edges(IDENTITY_INTERACTION, lat, 0.01, 50.0)[0]
        with pytest.raises(ValueError):
            dispersion_curve(band, IDENTITY_INTERACTION, lat, 1)


class TestBandProfile:
    def test_free_case_single_row_without_gaps(self, lat):
        rows = band_width_and_gap_profile(IDENTITY_INTERACTION, lat, 5)
        assert len(rows) == 1
        assert rows[0].gap_e is None and rows[0].gap_k0 is None

    def test_delta_gaps_shrink_in_k0(self, lat):
        rows = band_width_and_gap_profile(delta(10.0), lat, 8)
        gaps = [r.gap_k0 for r in rows if r.gap_k0 is not None]
        assert len(gaps) == 8
        assert all(b < a for a, b in zip(gaps, gaps[1:]))

    def test_epsilon_widths_shrink_in_k0(self, lat):
        rows = band_width_and_gap_profile(make_connection(FamilySpec("epsilon", 1.0)), lat, 8)
        widths = [r.width_k0 for r in rows]
        assert all(b < a for a, b in zip(widths[2:], widths[3:]))

    def test_gap_and_width_tile_the_axis(self, lat):
        # Consecutive (width + gap) spans must reconstruct the next band's
        # lower edge; checked in energy units.
        rows = band_width_and_gap_profile(delta(10.0), lat, 5)
        bands = find_band_edges(delta(10.0), lat, 0.0, (8 * math.pi) ** 2, 60000)
        for row, band in zip(rows, bands):
            assert row.width_e == pytest.approx(band.width_e, rel=1e-9)
            if row.gap_e is not None:
                assert band.e_hi + row.gap_e == pytest.approx(bands[row.index + 1].e_lo, rel=1e-9)

    def test_requires_two_bands(self, lat):
        with pytest.raises(ValueError):
            band_width_and_gap_profile(IDENTITY_INTERACTION, lat, 1)
