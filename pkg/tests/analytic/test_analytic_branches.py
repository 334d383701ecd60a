#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import math

import numpy as np
import pytest

from wigner_streams import PreconditionError
from wigner_streams.analytic import (
    growth_rate,
    one_stream_cold,
    one_stream_lorentzian,
    quartic_coefficients,
    stability_boundaries,
    two_stream_cold_quartic,
    two_stream_cold_unstable,
    two_stream_lorentzian,
    two_stream_roots,
)


def _cold_two_stream_residual(omega: complex, K_bar: float, H: float) -> complex:
    recoil = H ** 2 * K_bar ** 4 / 4.0
    return 1.0 - 0.5 / ((omega - K_bar) ** 2 - recoil) - 0.5 / ((omega + K_bar) ** 2 - recoil)


def test_analytic_one_stream_cold():
    upper, lower = one_stream_cold(1.0, 0.0)
    assert (upper, lower) == pytest.approx((2.0, 0.0))

    upper, lower = one_stream_cold(2.0, 0.5)
    assert (upper - 2.0) ** 2 == pytest.approx(1.0 + 0.25 * 16.0 / 4.0)
    assert upper + lower == pytest.approx(4.0)

    upper, _ = one_stream_cold(np.array([0.5, 1.0]), 0.0)
    assert upper.shape == (2,)


def test_analytic_one_stream_lorentzian():
    omega = one_stream_lorentzian(1.0, 0.1, 0.5)
    assert omega.imag == pytest.approx(-0.5)
    assert omega.real == pytest.approx(1.0 + math.sqrt(1.0 + 0.01 / 4.0))
    assert one_stream_lorentzian(1.0, 0.1, 0.5, branch_sign=-1).real < 0.0


def test_analytic_classical_two_stream_rate():
    _, lower = two_stream_cold_quartic(0.5, 0.0)
    assert math.sqrt(-lower) == pytest.approx(0.3406, abs=1e-4)
    assert two_stream_lorentzian(0.5, 0.0, 0.0).imag == pytest.approx(0.3406, abs=1e-4)


def test_analytic_quartic_consistency():
    for K_bar, H in ((0.5, 0.0), (0.8, 0.6), (2.0, 0.9), (1.5, 3.0)):
        upper, lower = two_stream_cold_quartic(K_bar, H)
        squares = sorted(np.roots(quartic_coefficients(K_bar, H)) ** 2, key=lambda z: z.real)
        assert squares[0] == pytest.approx(lower, abs=1e-9)
        assert squares[-1] == pytest.approx(upper, abs=1e-9)


def test_analytic_roots_solve_cold_relation():
    for K_bar, H in ((0.5, 0.0), (0.8, 0.6), (2.0, 0.9), (1.5, 3.0)):
        for omega in two_stream_roots(K_bar, H):
            assert abs(_cold_two_stream_residual(omega, K_bar, H)) < 1e-10


def test_analytic_broadened_roots_shift():
    cold = two_stream_roots(0.5, 0.3)
    broadened = two_stream_roots(0.5, 0.3, 0.2)
    for a, b in zip(cold, broadened):
        assert b == pytest.approx(a - 0.1j, abs=1e-14)


def test_analytic_marginal_point_is_stable():
    assert two_stream_cold_unstable(0.5, 0.0)
    assert not two_stream_cold_unstable(1.0, 0.0)
    assert not two_stream_cold_unstable(1.5, 0.0)
    flags = two_stream_cold_unstable(np.array([0.5, 1.5]), 0.0)
    assert flags.tolist() == [True, False]


def test_analytic_growth_rate_vectorized():
    K_bar = np.linspace(0.1, 0.9, 9)
    rates = growth_rate(K_bar, 0.0, 0.1)
    expected = [two_stream_lorentzian(K, 0.0, 0.1).imag for K in K_bar]
    assert np.allclose(rates, expected, atol=1e-12)
    assert growth_rate(1.5, 0.0, 0.0) == 0.0


def test_analytic_invalid_arguments():
    with pytest.raises(PreconditionError):
        one_stream_cold(0.0, 0.1)
    with pytest.raises(PreconditionError):
        two_stream_cold_quartic(0.5, -0.1)
    with pytest.raises(PreconditionError):
        two_stream_lorentzian(0.5, 0.0, -0.1)


def test_analytic_random_points_solve_broadened_relation():
    rng = np.random.default_rng(20240611)
    for K_bar, H, alpha in zip(
        rng.uniform(0.1, 3.0, 50), rng.uniform(0.0, 2.0, 50), rng.uniform(0.0, 0.5, 50)
    ):
        for omega in two_stream_roots(K_bar, H, alpha):
            cold = omega + 1j * alpha * K_bar
            assert abs(_cold_two_stream_residual(cold, K_bar, H)) < 1e-8


def test_analytic_one_stream_cold_residual():
    rng = np.random.default_rng(11)
    for K_bar, H in zip(rng.uniform(0.05, 3.0, 50), rng.uniform(0.0, 2.0, 50)):
        recoil = H ** 2 * K_bar ** 4 / 4.0
        for omega in one_stream_cold(K_bar, H):
            assert abs(1.0 - 1.0 / ((omega - K_bar) ** 2 - recoil)) < 1e-12


def test_analytic_quartic_vieta():
    for K_bar in np.linspace(0.1, 3.0, 12):
        for H in np.linspace(0.0, 2.0, 9):
            _, _, c2, _, c0 = quartic_coefficients(K_bar, H)
            upper, lower = two_stream_cold_quartic(K_bar, H)
            assert abs(upper + lower + c2) < 1e-12 * max(1.0, abs(c2))
            assert abs(upper * lower - c0) < 1e-12 * max(1.0, abs(c0))

            roots = np.asarray(two_stream_roots(K_bar, H))
            scale = max(1.0, abs(c2), abs(c0))
            pairs = sum(roots[i] * roots[j] for i in range(4) for j in range(i + 1, 4))
            triples = sum(
                roots[i] * roots[j] * roots[k]
                for i in range(4)
                for j in range(i + 1, 4)
                for k in range(j + 1, 4)
            )
            assert abs(np.sum(roots)) < 1e-12 * scale
            assert abs(pairs - c2) < 1e-12 * scale
            assert abs(triples) < 1e-12 * scale
            assert abs(np.prod(roots) - c0) < 1e-12 * scale


def test_analytic_unstable_between_boundaries():
    rng = np.random.default_rng(5)
    checked = 0
    for K_bar, H in zip(rng.uniform(0.05, 4.0, 400), rng.uniform(0.0, 3.0, 400)):
        lower, upper = stability_boundaries(K_bar)
        if min(abs(H ** 2 - lower), abs(H ** 2 - upper)) < 1e-9:
            continue
        assert two_stream_cold_unstable(K_bar, H) == (lower < H ** 2 < upper)
        checked += 1
    assert checked > 390
