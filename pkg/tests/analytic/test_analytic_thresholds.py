#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import math

import pytest

from wigner_streams import PreconditionError
from wigner_streams.analytic import (
    asymptotic_growth,
    band_edges,
    broadening_threshold,
    classical_cutoff,
    damped_threshold_H,
    growth_rate,
    instability_product,
    large_k_thresholds,
    stability_boundaries,
    termination_wavenumber,
    two_stream_lorentzian,
)


def test_analytic_band_edges_two_bands():
    edges = band_edges(0.6)
    (low_start, low_end), (high_start, high_end) = edges.intervals()

    assert low_start == 0.0
    assert low_end == pytest.approx(math.sqrt(2.0 / 1.8))
    assert high_start == pytest.approx(math.sqrt(10.0))
    assert high_end == pytest.approx(2.0 / 0.6)
    for K_bar in (low_end, high_start, high_end):
        assert instability_product(K_bar, 0.6) == pytest.approx(0.0, abs=1e-9)


def test_analytic_band_edges_one_band():
    assert band_edges(2.0).intervals() == [(0.0, 1.0)]
    assert len(band_edges(1.0).intervals()) == 1

    with pytest.raises(PreconditionError):
        band_edges(0.0)


def test_analytic_stability_boundaries():
    lower, upper = stability_boundaries(0.5)
    assert lower < 0
    assert upper == pytest.approx(16.0)

    lower, upper = stability_boundaries(2.0)
    assert lower == pytest.approx(0.75)
    assert upper == pytest.approx(1.0)
    assert growth_rate(2.0, 0.5 * (math.sqrt(lower) + math.sqrt(upper)), 0.0) > 0
    assert growth_rate(2.0, 0.5 * math.sqrt(lower), 0.0) == 0.0


def test_analytic_classical_cutoff():
    assert classical_cutoff(0.0) == 1.0
    assert classical_cutoff(1.0) == 0.0
    assert classical_cutoff(1.5) == 0.0
    for alpha in (0.1, 0.5, 0.9):
        K_c = classical_cutoff(alpha)
        assert growth_rate(K_c, 0.0, alpha) == pytest.approx(0.0, abs=1e-12)
        assert growth_rate(0.9 * K_c, 0.0, alpha) > 0


def test_analytic_broadening_threshold():
    alpha = broadening_threshold(0.5, 0.0)
    assert alpha == pytest.approx(0.3406 / 0.5, rel=1e-3)
    assert two_stream_lorentzian(0.5, 0.0, alpha).imag == pytest.approx(0.0, abs=1e-12)
    assert broadening_threshold(1.5, 0.0) == 0.0


def test_analytic_damped_threshold():
    for alpha in (0.0, 0.3, 0.6):
        H = damped_threshold_H(0.01, alpha)
        assert H == pytest.approx(200.0 * math.sqrt(1.0 - alpha ** 2))
        assert asymptotic_growth(0.01, H, alpha, "threshold") == pytest.approx(0.0, abs=1e-9)
        assert abs(growth_rate(0.01, H, alpha)) < 1e-3 * 0.01
    assert damped_threshold_H(0.01, 1.0) == 0.0


def test_analytic_small_k_asymptotics():
    for alpha in (0.0, 0.1, 0.5):
        expected = asymptotic_growth(0.01, 0.0, alpha, "small_K")
        assert expected == pytest.approx((1.0 - alpha) * 0.01)
        assert growth_rate(0.01, 0.0, alpha) == pytest.approx(expected, rel=1e-3)


def test_analytic_large_k_asymptotics():
    K_bar = 20.0
    H = 2.0 / K_bar * math.sqrt(1.0 - 0.5 / K_bar ** 2)
    expected = asymptotic_growth(K_bar, H, 0.0, "large_K")
    assert expected > 0
    assert growth_rate(K_bar, H, 0.0) == pytest.approx(expected, rel=1e-2)


def test_analytic_large_k_zero_growth_edge():
    K_bar = 20.0
    lower, _ = stability_boundaries(K_bar)
    H_minus = math.sqrt(lower)
    assert asymptotic_growth(K_bar, H_minus, 0.0, "large_K") == pytest.approx(0.0, abs=1e-6)
    assert growth_rate(K_bar, H_minus, 0.0) == pytest.approx(0.0, abs=1e-6)

    H = 2.0 / K_bar * math.sqrt(1.0 - 0.5 / K_bar ** 2)
    delta_h = 0.5 / K_bar ** 2
    assert asymptotic_growth(K_bar, H, 0.0, "large_K") == pytest.approx(
        0.5 * math.sqrt(0.5 * delta_h), rel=1e-9
    )


def test_analytic_large_k_thresholds():
    assert termination_wavenumber(0.01) == pytest.approx(5.0)
    assert termination_wavenumber(0.0) == math.inf
    assert large_k_thresholds(4.99, 0.01) is not None
    assert large_k_thresholds(5.01, 0.01) is None

    lower, upper = large_k_thresholds(3.0, 0.01)
    assert 0 < lower < upper < 1.0 / 9.0
    for delta_h in (lower, upper):
        H = 2.0 / 3.0 * math.sqrt(1.0 - delta_h)
        assert asymptotic_growth(3.0, H, 0.01, "large_K") == pytest.approx(0.0, abs=1e-12)


def test_analytic_unknown_regime():
    with pytest.raises(KeyError):
        asymptotic_growth(0.5, 0.0, 0.0, "medium_K")
