#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import math

import numpy as np
import pytest

from wigner_streams.core import symmetric_two_stream
from wigner_streams.simulation import (
    SimConfig,
    free_stream,
    init_state,
    make_grid,
    momentum_mask,
    potential_kick,
    potential_rate,
    sample_background,
    solve_poisson,
    step,
    taylor_potential_rate,
)


def _smooth_config(**overrides) -> SimConfig:
    values = dict(
        background=symmetric_two_stream(0.5),
        K_bar=0.5,
        n_x=32,
        n_p=128,
        p_max=6.0,
        dt=0.05,
        t_end=2.5,
        amplitude=1e-3,
    )
    values.update(overrides)
    return SimConfig(**values)


def _gaussian_state():
    grid = make_grid(4.0 * math.pi, 32, 6.0, 128)
    sigma = 0.5
    profile = np.exp(-grid.u ** 2 / (2.0 * sigma ** 2))
    W = np.outer(1.0 + 0.1 * np.cos(grid.k[1] * grid.x), profile)
    psi = 0.01 * np.cos(grid.k[1] * grid.x)
    return grid, W, psi, sigma


def test_simulation_grid():
    grid = make_grid(4.0 * math.pi, 32, 6.0, 128)
    assert grid.shape == (32, 128)
    assert grid.dx == pytest.approx(4.0 * math.pi / 32)
    assert grid.du == pytest.approx(12.0 / 128)
    assert grid.u[0] == -6.0
    assert grid.k[1] == pytest.approx(0.5)
    assert grid.eta.size == 65


def test_simulation_momentum_mask():
    u = np.array([0.0, 5.4, -5.4, 5.7, 6.0])
    mask = momentum_mask(u, 6.0)
    assert mask[:3] == pytest.approx([1.0, 1.0, 1.0])
    assert mask[3] == pytest.approx(0.5)
    assert mask[4] == pytest.approx(0.0)


def test_simulation_sampled_background_density():
    cfg = _smooth_config()
    profile = sample_background(cfg.background, cfg.grid)
    assert profile.sum() * cfg.grid.du == pytest.approx(1.0, rel=1e-12)
    assert profile[0] == 0.0
    assert np.allclose(profile[1:], profile[1:][::-1])


def test_simulation_initial_state():
    cfg = _smooth_config()
    state = init_state(cfg)
    number = state.W.sum() * cfg.grid.dx * cfg.grid.du
    assert number == pytest.approx(cfg.length, rel=1e-10)

    amplitude = 2.0 * abs(np.fft.rfft(state.psi)[1]) / cfg.n_x
    assert amplitude == pytest.approx(cfg.amplitude / cfg.K_bar ** 2, rel=1e-8)


def test_simulation_unperturbed_potential_vanishes():
    state = init_state(_smooth_config(amplitude=0.0))
    assert np.allclose(state.psi, 0.0, atol=1e-14)


def test_simulation_equilibrium_is_stationary():
    cfg = _smooth_config(amplitude=0.0)
    initial = init_state(cfg)
    state = initial
    for _ in range(1000):
        state = step(state, cfg)

    assert state.t == pytest.approx(50.0)
    assert np.max(np.abs(state.W - initial.W)) < 1e-10 * np.max(initial.W)


def test_simulation_poisson():
    grid = make_grid(4.0 * math.pi, 32, 6.0, 128)
    W = np.outer(1.0 + 0.2 * np.cos(grid.k[2] * grid.x), np.full(grid.u.size, 1.0 / 12.0))
    psi = solve_poisson(W, grid)
    expected = -0.2 * np.cos(grid.k[2] * grid.x) / grid.k[2] ** 2
    assert np.allclose(psi, expected, atol=1e-12)
    assert abs(psi.mean()) < 1e-14


def test_simulation_free_stream_is_exact_shift():
    grid, W, _, _ = _gaussian_state()
    k = grid.k[1]
    W = np.cos(k * grid.x)[:, None] * np.ones((1, grid.u.size))
    shifted = free_stream(W, grid, 0.7)
    expected = np.cos(k * (grid.x[:, None] - grid.u[None, :] * 0.7))
    assert np.allclose(shifted, expected, atol=1e-12)


def test_simulation_free_stream_preserves_momentum_profile():
    grid, W, _, _ = _gaussian_state()
    streamed = free_stream(W, grid, 1.3)
    assert np.allclose(streamed.sum(axis=0), W.sum(axis=0), rtol=1e-12, atol=1e-14)
    assert np.allclose(free_stream(streamed, grid, -1.3), W, atol=1e-12)


def test_simulation_classical_potential_rate():
    grid, W, psi, sigma = _gaussian_state()
    gradient = -0.01 * grid.k[1] * np.sin(grid.k[1] * grid.x)
    dW_du = -grid.u[None, :] / sigma ** 2 * W
    expected = -gradient[:, None] * dW_du

    assert np.allclose(potential_rate(W, psi, grid, 0.0), expected, atol=1e-10)
    assert np.allclose(taylor_potential_rate(W, psi, grid, 0.0, terms=1), expected, atol=1e-10)


def test_simulation_taylor_potential_rate():
    grid, W, psi, _ = _gaussian_state()
    exact = potential_rate(W, psi, grid, 0.05)
    taylor = taylor_potential_rate(W, psi, grid, 0.05, terms=3)
    assert np.max(np.abs(exact - taylor)) < 1e-8 * np.max(np.abs(exact))


def test_simulation_quantum_correction_scales_as_h_squared():
    grid, W, psi, _ = _gaussian_state()
    classical = potential_rate(W, psi, grid, 0.0)
    small = np.max(np.abs(potential_rate(W, psi, grid, 0.05) - classical))
    large = np.max(np.abs(potential_rate(W, psi, grid, 0.1) - classical))
    assert small / large == pytest.approx(0.25, rel=1e-2)


def test_simulation_kick_preserves_density():
    grid, W, psi, _ = _gaussian_state()
    kicked = potential_kick(W, psi, grid, 0.5, 0.3)
    assert np.allclose(kicked.sum(axis=1), W.sum(axis=1), rtol=1e-12)
    assert np.allclose(potential_kick(kicked, psi, grid, 0.5, -0.3), W, atol=1e-12)


@pytest.mark.parametrize("H", [0.0, 1.0])
def test_simulation_reversibility_and_number(H):
    cfg = _smooth_config(H=H)
    initial = init_state(cfg)
    cell = cfg.grid.dx * cfg.grid.du
    state = initial
    for _ in range(50):
        state = step(state, cfg)
        number = state.W.sum() * cell
        assert number == pytest.approx(cfg.length, rel=1e-8)
    for _ in range(50):
        state = step(state, cfg, dt=-cfg.dt)

    assert state.t == pytest.approx(0.0, abs=1e-12)
    assert np.max(np.abs(state.W - initial.W)) < 1e-6 * np.max(np.abs(initial.W))
