#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import math

import numpy as np
import pytest

from wigner_streams import PreconditionError
from wigner_streams.analytic import (
    band_edges,
    classical_cutoff,
    two_stream_lorentzian,
    stability_boundaries,
    termination_wavenumber,
)
from wigner_streams.stability import (
    STABLE,
    UNSTABLE,
    band_report,
    build_map,
    classify,
    covering_k_max,
    default_axes,
    large_k_termination,
)


def test_stability_classify():
    label, growth = classify(0.5, 0.0, 0.0)
    assert label == UNSTABLE
    assert growth == pytest.approx(0.3406, abs=1e-4)

    assert classify(1.5, 0.0, 0.0) == (STABLE, 0.0)
    assert classify(0.5, 0.0, 0.9) == (STABLE, 0.0)
    assert classify(1.0, 0.0, 0.0) == (STABLE, 0.0)


def test_stability_classical_band():
    bands = band_report(0.0, 0.0, (0.0, 4.0))
    assert len(bands) == 1
    assert bands[0][0] == 0.0
    assert bands[0][1] == pytest.approx(1.0, abs=1e-8)


def test_stability_quantum_bands():
    bands = band_report(0.6, 0.0)
    assert len(bands) == 2
    for found, exact in zip(bands, band_edges(0.6).intervals()):
        assert found == pytest.approx(exact, abs=1e-6)

    bands = band_report(2.0, 0.0)
    assert len(bands) == 1
    assert bands[0][1] == pytest.approx(1.0, abs=1e-6)


def test_stability_damped_cutoff():
    for alpha in (0.1, 0.2, 0.5, 0.9):
        bands = band_report(0.0, alpha, (0.0, 2.0))
        assert len(bands) == 1
        assert bands[0][1] == pytest.approx(classical_cutoff(alpha), abs=1e-6)

    assert band_report(0.0, 1.0, (0.0, 2.0)) == []


def test_stability_band_report_invalid():
    with pytest.raises(PreconditionError):
        band_report(0.0, 0.0, (2.0, 1.0))
    with pytest.raises(PreconditionError):
        band_report(-0.1, 0.0)


def test_stability_map_boundaries():
    K_axis, H_axis = default_axes(60)
    stability = build_map(K_axis, H_axis, 0.0)

    assert stability.shape == (60, 60)
    assert len(list(stability.cells())) == 3600
    assert stability.unstable.any()
    assert np.all(stability.growth[~stability.unstable] == 0.0)
    assert stability.boundaries

    for curve in stability.boundaries:
        for K_bar, H in curve:
            lower, upper = stability_boundaries(K_bar)
            distances = [abs(H - math.sqrt(upper))]
            if lower >= 0:
                distances.append(abs(H - math.sqrt(lower)))
            assert min(distances) < 1e-6


def test_stability_map_growth_matches_classify():
    K_axis = np.linspace(0.1, 2.0, 12)
    H_axis = np.linspace(0.0, 1.5, 10)
    stability = build_map(K_axis, H_axis, 0.1)

    for K_bar, H, label, growth in stability.cells():
        expected_label, expected_growth = classify(K_bar, H, 0.1)
        assert label == expected_label
        assert growth == pytest.approx(expected_growth, abs=1e-12)


def test_stability_map_invalid_axes():
    H_axis = np.linspace(0.0, 1.0, 5)
    with pytest.raises(PreconditionError) as error:
        build_map(np.array([0.5]), H_axis, 0.0)
    assert error.value.parameter == "K_grid"

    with pytest.raises(PreconditionError):
        build_map(np.array([0.5, 0.4, 0.6]), H_axis, 0.0)
    with pytest.raises(PreconditionError):
        build_map(np.linspace(0.0, 1.0, 5), H_axis, 0.0)
    with pytest.raises(PreconditionError):
        build_map(np.linspace(0.1, 1.0, 5), H_axis, -0.1)


def test_stability_large_k_termination():
    termination = large_k_termination(0.01)
    assert termination == pytest.approx(termination_wavenumber(0.01), rel=0.02)

    with pytest.raises(PreconditionError):
        large_k_termination(0.0)


def _shared_axes():
    return np.linspace(0.05, 3.0, 40), np.linspace(0.0, 3.0, 37)


def test_stability_broadened_region_nested():
    K_axis, H_axis = _shared_axes()
    cold = build_map(K_axis, H_axis, 0.0)
    broad = build_map(K_axis, H_axis, 0.3)

    assert broad.unstable.sum() < cold.unstable.sum()
    assert not np.any(broad.unstable & ~cold.unstable)


def test_stability_growth_suppressed_by_broadening():
    K_axis, H_axis = _shared_axes()
    maps = [build_map(K_axis, H_axis, alpha) for alpha in (0.0, 0.1, 0.3, 0.6)]
    for weaker, stronger in zip(maps, maps[1:]):
        assert np.all(stronger.growth <= weaker.growth)


def test_stability_classical_row():
    K_axis, H_axis = _shared_axes()
    stability = build_map(K_axis, H_axis, 0.0)
    assert H_axis[0] == 0.0
    assert np.array_equal(stability.unstable[:, 0], K_axis < 1.0)


@pytest.mark.parametrize("alpha", [0.0, 0.3])
def test_stability_boundary_residual(alpha):
    stability = build_map(*default_axes(60), alpha)
    assert stability.boundaries
    for curve in stability.boundaries:
        for K_bar, H in curve:
            assert abs(two_stream_lorentzian(K_bar, H, alpha).imag) < 1e-8


def test_stability_band_measure_shrinks_with_broadening():
    measures, counts = [], []
    for alpha in (0.0, 0.05, 0.1, 0.2, 0.4, 0.8):
        bands = band_report(0.6, alpha)
        measures.append(sum(high - low for low, high in bands))
        counts.append(len(bands))

    assert counts[0] == 2
    assert counts[-1] <= 1
    for wider, narrower in zip(measures, measures[1:]):
        assert narrower < wider or wider == narrower == 0.0


def test_stability_band_report_covers_upper_edge():
    assert covering_k_max(0.0) == 4.0
    assert covering_k_max(0.2) == pytest.approx(11.0)

    bands = band_report(0.2, 0.0)
    assert len(bands) == 2
    assert bands[-1][1] == pytest.approx(band_edges(0.2).K_plus, abs=1e-6)


def test_stability_band_report_warns_when_clipped(caplog):
    bands = band_report(0.2, 0.0, (0.0, 4.0))
    assert len(bands) == 1
    assert "below K_+" in caplog.text

    caplog.clear()
    band_report(0.6, 0.0, (0.0, 4.0))
    assert "below K_+" not in caplog.text
