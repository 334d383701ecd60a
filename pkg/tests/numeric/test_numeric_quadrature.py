#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import numpy as np
import pytest

from wigner_streams import PreconditionError
from wigner_streams.core import Background, StreamSpectrum, symmetric_two_stream
from wigner_streams.numeric import (
    CLOSED_FORM_POLE,
    QUADRATURE_PLEMELJ,
    evaluate_dielectric,
    sine_operator_series,
    susceptibility,
)


@pytest.mark.parametrize("H", [0.0, 0.3, 1.0])
@pytest.mark.parametrize("omega", [0.3 + 0.2j, 1.1 + 0.5j, 0.3 - 0.05j])
def test_numeric_quadrature_matches_closed_form(H, omega):
    background = symmetric_two_stream(0.2)
    closed = susceptibility(background, 0.5, H, omega, method=CLOSED_FORM_POLE)
    quadrature = susceptibility(background, 0.5, H, omega, method=QUADRATURE_PLEMELJ)
    assert abs(quadrature - closed) < 1e-8 * max(1.0, abs(closed))


def test_numeric_quadrature_asymmetric_streams():
    background = Background(
        (
            StreamSpectrum.lorentzian(0.7, 0.8, 0.15),
            StreamSpectrum.lorentzian(0.3, -1.5, 0.3),
        )
    )
    for omega in (0.4 + 0.3j, -0.2 + 0.1j):
        closed = evaluate_dielectric(background, 0.7, 0.5, omega, method=CLOSED_FORM_POLE)
        quadrature = evaluate_dielectric(background, 0.7, 0.5, omega, method=QUADRATURE_PLEMELJ)
        assert abs(quadrature - closed) < 1e-8 * max(1.0, abs(closed))


def test_numeric_quadrature_rejects_delta_streams():
    with pytest.raises(PreconditionError) as error:
        susceptibility(symmetric_two_stream(0.0), 0.5, 0.0, 0.3j, method=QUADRATURE_PLEMELJ)
    assert error.value.rule == "smooth"


def test_numeric_sine_operator_series():
    background = symmetric_two_stream(0.5)
    p = np.linspace(-3.0, 3.0, 61)
    shift = 0.1
    series = sine_operator_series(background, p, shift)
    exact = 1j * (background.sample(p + shift) - background.sample(p - shift))

    assert np.allclose(series, exact, rtol=1e-10, atol=1e-12)
    assert np.allclose(series.real, 0.0)


@pytest.mark.parametrize("method", [CLOSED_FORM_POLE, QUADRATURE_PLEMELJ])
def test_numeric_vacuum_limit(method):
    epsilon = evaluate_dielectric(symmetric_two_stream(0.2), 0.5, 0.3, 1e6, method=method)
    assert abs(epsilon - 1.0) < 1e-6


@pytest.mark.parametrize("omega", [200.0, 200.0 + 0.5j, -150.0 - 0.01j])
def test_numeric_quadrature_far_from_streams(omega):
    background = symmetric_two_stream(0.2)
    closed = susceptibility(background, 0.5, 0.3, omega, method=CLOSED_FORM_POLE)
    quadrature = susceptibility(background, 0.5, 0.3, omega, method=QUADRATURE_PLEMELJ)
    assert abs(quadrature - closed) < 1e-8
