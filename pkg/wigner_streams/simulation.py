#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""Pseudo-spectral initial-value solver for the one-dimensional Wigner-Poisson system.

Dimensionless form, with x in units of p0 / (m omega_p0), t in units of
1 / omega_p0, momentum u = p / p0 and potential psi = e phi m / p0**2:

    dW/dt + u dW/dx - (i / H) [psi(x + i H/2 d/du) - psi(x - i H/2 d/du)] W = 0
    d2psi/dx2 = int W du - 1

The domain is periodic in x and the momentum grid u_j = -p_max + j du is
periodic too, so both operators of the Strang splitting are applied
exactly: free streaming as a phase in the x spectrum, the potential term
as a phase in the spectrum along u, where the sine operator becomes the
difference psi(x + H eta / 2) - psi(x - H eta / 2).
"""

from dataclasses import dataclass, field, asdict
from functools import cached_property
from typing import Any, Dict, List, Optional, Tuple
import logging
import math

import numpy as np
from scipy import signal

from wigner_streams.checks import context_prefix, doc_check
from wigner_streams.core import DELTA, Background, lorentzian_value
from wigner_streams.exceptions import FitError, PreconditionError

LOGGER = logging.getLogger("wigner_streams")

MIN_GRID_SIZE = 32
MAX_AMPLITUDE = 1e-3
WIDENING_CELLS = (4, 8)
WIDTH_MARGIN = 10.0
TAPER_START = 0.9
EDGE_MASS_WARNING = 1e-2
FIT_RESIDUAL = 0.05
ENVELOPE_PEAKS = 4


@dataclass(frozen=True)
class PhaseSpaceGrid:
    """Uniform periodic (x, u) grid and the matching real-FFT wavenumbers."""

    x: np.ndarray
    u: np.ndarray
    k: np.ndarray
    eta: np.ndarray

    @property
    def dx(self: "PhaseSpaceGrid") -> float:
        return float(self.x[1] - self.x[0])

    @property
    def du(self: "PhaseSpaceGrid") -> float:
        return float(self.u[1] - self.u[0])

    @property
    def shape(self: "PhaseSpaceGrid") -> Tuple[int, int]:
        return self.x.size, self.u.size


@doc_check(length="positive", n_x="power_of_two", p_max="positive", n_p="power_of_two")
def make_grid(length: float, n_x: int, p_max: float, n_p: int) -> PhaseSpaceGrid:
    """Build the phase-space grid of a periodic box of the given length.

    :param length: Box length.
    :type length: float
    :param n_x: Number of x points.
    :type n_x: int
    :param p_max: Momentum cutoff, the grid spans [-p_max, p_max).
    :type p_max: float
    :param n_p: Number of momentum points.
    :type n_p: int
    :return: The grid.
    :rtype: PhaseSpaceGrid
    """
    dx = length / n_x
    du = 2.0 * p_max / n_p
    return PhaseSpaceGrid(
        x=np.arange(n_x) * dx,
        u=-p_max + np.arange(n_p) * du,
        k=2.0 * math.pi * np.fft.rfftfreq(n_x, d=dx),
        eta=2.0 * math.pi * np.fft.rfftfreq(n_p, d=du),
    )


def _fail(parameter: str, value: Any, rule: str, message: str) -> None:
    raise PreconditionError(
        "{!s} {!s}".format(context_prefix(), message),
        parameter=parameter,
        value=value,
        rule=rule,
    )


@dataclass(frozen=True)
class SimConfig:
    """Parameters of one simulation run.

    The box holds `mode` wavelengths of the seeded perturbation, so only
    wavenumbers commensurate with the box are simulated. Delta streams
    are widened to grid-resolved Lorentzians of 4 and 8 momentum cells
    when `widen_delta` is set; the growth rate is then extrapolated to
    zero width from the two runs.
    """

    background: Background
    K_bar: float
    H: float = 0.0
    mode: int = 1
    amplitude: float = 1e-6
    n_x: int = 128
    n_p: int = 256
    p_max: float = 6.0
    dt: float = 0.05
    t_end: float = 30.0
    sample_every: int = 1
    widen_delta: bool = True
    linear_cap: float = 10.0
    fit_tolerance: float = 0.05

    def __post_init__(self: "SimConfig") -> None:
        for name in ("n_x", "n_p"):
            value = getattr(self, name)
            if not (
                isinstance(value, (int, np.integer))
                and value >= MIN_GRID_SIZE
                and value & (value - 1) == 0
            ):
                _fail(
                    name,
                    value,
                    "power_of_two",
                    "`{!s}` must be a power of two >= {!s}: was actually `{!r}`".format(
                        name, MIN_GRID_SIZE, value
                    ),
                )

        for name, rule, ok in (
            ("K_bar", "positive", self.K_bar > 0),
            ("H", "nonnegative", self.H >= 0),
            ("p_max", "positive", self.p_max > 0),
            ("dt", "positive", self.dt > 0),
            ("t_end", "positive", self.t_end >= self.dt),
            ("amplitude", "small", 0 <= self.amplitude <= MAX_AMPLITUDE),
            ("sample_every", "positive", self.sample_every >= 1),
            ("linear_cap", "positive", self.linear_cap > 0),
            ("fit_tolerance", "positive", self.fit_tolerance > 0),
            ("mode", "resolved", 1 <= self.mode < self.n_x // 2),
        ):
            if not ok:
                _fail(
                    name,
                    getattr(self, name),
                    rule,
                    "`{!s}` was not {!s}: was actually `{!r}`".format(
                        name, rule, getattr(self, name)
                    ),
                )

        self.background.check_neutral()

        du = self.momentum_step
        for stream in self.background:
            if stream.kind == DELTA and not self.widen_delta:
                _fail(
                    "background",
                    stream,
                    "resolved",
                    "delta stream at `{!r}` cannot be sampled without widening".format(
                        stream.drift_momentum
                    ),
                )
            if stream.kind != DELTA and stream.width < WIDENING_CELLS[0] * du:
                _fail(
                    "background",
                    stream,
                    "resolved",
                    "stream width `{!r}` is below {!s} momentum cells of `{!r}`".format(
                        stream.width, WIDENING_CELLS[0], du
                    ),
                )

        for background in self.backgrounds():
            for stream in background:
                reach = abs(stream.drift_momentum) + WIDTH_MARGIN * max(
                    stream.width, 0.5 * self.H * self.K_bar
                )
                if self.p_max < reach:
                    _fail(
                        "p_max",
                        self.p_max,
                        "reach",
                        "p_max must be at least `{!r}` for the stream at `{!r}`".format(
                            reach, stream.drift_momentum
                        ),
                    )

        phase = math.pi / (self.length / self.n_x) * self.p_max * self.dt
        if phase > math.pi:
            _fail(
                "dt",
                self.dt,
                "cfl",
                "free streaming turns the phase by `{!r}` > pi per step at the grid extremes".format(
                    phase
                ),
            )

    @property
    def length(self: "SimConfig") -> float:
        return 2.0 * math.pi * self.mode / self.K_bar

    @property
    def momentum_step(self: "SimConfig") -> float:
        return 2.0 * self.p_max / self.n_p

    @property
    def steps(self: "SimConfig") -> int:
        return int(round(self.t_end / self.dt))

    @cached_property
    def grid(self: "SimConfig") -> PhaseSpaceGrid:
        return make_grid(self.length, self.n_x, self.p_max, self.n_p)

    @property
    def widened(self: "SimConfig") -> bool:
        return any(stream.kind == DELTA for stream in self.background)

    def backgrounds(self: "SimConfig") -> List[Background]:
        """Backgrounds actually simulated, two widenings when a delta stream is present."""
        if not self.widened:
            return [self.background]

        return [
            self.background.with_widths(
                [
                    cells * self.momentum_step if stream.kind == DELTA else stream.width
                    for stream in self.background
                ]
            )
            for cells in WIDENING_CELLS
        ]

    def record(self: "SimConfig") -> Dict[str, Any]:
        """Every configuration value, with the background flattened to plain dicts."""
        values = {name: value for name, value in asdict(self).items() if name != "background"}
        values["background"] = [asdict(stream) for stream in self.background]
        values["length"] = self.length
        return values


@dataclass
class WignerState:
    W: np.ndarray
    psi: np.ndarray
    t: float = 0.0


@dataclass
class GrowthFit:
    """Least-squares fit of log amplitude against time on the selected window."""

    rate: float
    intercept: float
    window: Tuple[float, float]
    residual: float
    source: str
    points: int


@dataclass
class Diagnostics:
    """Sampled time series of one run, and the rate fitted to the mode amplitude.

    Amplitudes are cosine amplitudes of psi, 2 |psi_n| / n_x, for the seeded
    mode and its second and third harmonics.
    """

    widths: Tuple[float, ...]
    times: List[float] = field(default_factory=list)
    field_energy: List[float] = field(default_factory=list)
    mode_amplitude: List[float] = field(default_factory=list)
    harmonic_2: List[float] = field(default_factory=list)
    harmonic_3: List[float] = field(default_factory=list)
    number: List[float] = field(default_factory=list)
    momentum: List[float] = field(default_factory=list)
    fit: Optional[GrowthFit] = None

    COLUMNS = (
        "t",
        "field_energy",
        "mode_amp_K",
        "mode_amp_2K",
        "mode_amp_3K",
        "number",
        "momentum",
    )

    def rows(self: "Diagnostics"):
        return zip(
            self.times,
            self.field_energy,
            self.mode_amplitude,
            self.harmonic_2,
            self.harmonic_3,
            self.number,
            self.momentum,
        )

    @property
    def gamma_fit(self: "Diagnostics") -> Optional[float]:
        return None if self.fit is None else self.fit.rate


@dataclass
class SimulationResult:
    """Diagnostics of every simulated width and the reported rate.

    With a widened delta background the reported rate is the linear
    extrapolation to zero width, 2 gamma(w) - gamma(2 w).
    """

    config: SimConfig
    diagnostics: List[Diagnostics]
    gamma_fit: float

    def metadata(self: "SimulationResult") -> Dict[str, Any]:
        return {
            "config": self.config.record(),
            "widened": self.config.widened,
            "runs": [
                {
                    "widths": list(run.widths),
                    "gamma_fit": run.gamma_fit,
                    "fit": None if run.fit is None else asdict(run.fit),
                }
                for run in self.diagnostics
            ],
            "gamma_fit": self.gamma_fit,
        }


def momentum_mask(u: np.ndarray, p_max: float) -> np.ndarray:
    """Smooth taper, one for |u| <= 0.9 p_max and a raised cosine down to zero at p_max."""
    start = TAPER_START * p_max
    excess = np.clip((np.abs(u) - start) / (p_max - start), 0.0, 1.0)
    return 0.5 * (1.0 + np.cos(math.pi * excess))


def sample_background(background: Background, grid: PhaseSpaceGrid) -> np.ndarray:
    """Tapered momentum profile of a Lorentzian background, each stream holding its exact density.

    :param background: Background made of Lorentzian streams only.
    :type background: Background
    :param grid: Phase-space grid.
    :type grid: PhaseSpaceGrid
    :return: Profile on the momentum grid.
    :rtype: np.ndarray
    """
    p_max = -float(grid.u[0])
    mask = momentum_mask(grid.u, p_max)
    profile = np.zeros_like(grid.u)
    for stream in background:
        values = lorentzian_value(stream, grid.u)
        edge = values[mask < 1].sum() / values.sum()
        if edge > EDGE_MASS_WARNING:
            LOGGER.warning(
                "{!s} stream at `{!r}` keeps a fraction `{:.3e}` of its mass in the momentum taper".format(
                    context_prefix(), stream.drift_momentum, edge
                )
            )
        tapered = values * mask
        profile += stream.density * tapered / (tapered.sum() * grid.du)

    return profile


def solve_poisson(W: np.ndarray, grid: PhaseSpaceGrid) -> np.ndarray:
    """Zero-mean potential of d2psi/dx2 = int W du - 1 on the periodic box."""
    density = np.fft.rfft(W.sum(axis=1) * grid.du)
    psi_hat = np.zeros_like(density)
    psi_hat[1:] = -density[1:] / grid.k[1:] ** 2
    psi_hat[-1] = 0.0
    return np.fft.irfft(psi_hat, n=grid.x.size)


def free_stream(W: np.ndarray, grid: PhaseSpaceGrid, dt: float) -> np.ndarray:
    """Advance dW/dt + u dW/dx = 0 exactly by `dt`."""
    spectrum = np.fft.rfft(W, axis=0)
    spectrum *= np.exp(-1j * dt * np.outer(grid.k, grid.u))
    return np.fft.irfft(spectrum, n=grid.x.size, axis=0)


def _shift_difference(psi: np.ndarray, grid: PhaseSpaceGrid, H: float) -> np.ndarray:
    """[psi(x + H eta / 2) - psi(x - H eta / 2)] / H on the (x, eta) grid, eta psi'(x) at H = 0."""
    psi_hat = np.fft.rfft(psi)
    psi_hat[-1] = 0.0
    k = grid.k[:, None]
    eta = grid.eta[None, :]
    spectrum = psi_hat[:, None] * 1j * k * eta * np.sinc(k * H * eta / (2.0 * math.pi))
    return np.fft.irfft(spectrum, n=grid.x.size, axis=0)


def potential_kick(
    W: np.ndarray, psi: np.ndarray, grid: PhaseSpaceGrid, H: float, dt: float
) -> np.ndarray:
    """Advance the potential term exactly by `dt` with psi held fixed.

    The eta = 0 row, which carries the density, is left unchanged.
    """
    spectrum = np.fft.rfft(W, axis=1)
    spectrum *= np.exp(-1j * dt * _shift_difference(psi, grid, H))
    return np.fft.irfft(spectrum, n=grid.u.size, axis=1)


def potential_rate(
    W: np.ndarray, psi: np.ndarray, grid: PhaseSpaceGrid, H: float
) -> np.ndarray:
    """dW/dt from the potential term alone, the exact sine operator."""
    spectrum = np.fft.rfft(W, axis=1)
    spectrum *= -1j * _shift_difference(psi, grid, H)
    return np.fft.irfft(spectrum, n=grid.u.size, axis=1)


def taylor_potential_rate(
    W: np.ndarray, psi: np.ndarray, grid: PhaseSpaceGrid, H: float, terms: int = 3
) -> np.ndarray:
    """dW/dt from the potential term with the sine operator truncated after `terms` odd orders.

    In the eta spectrum the order-n term multiplies by
    -i eta**n (H / 2)**(n - 1) psi^(n)(x) / n!.

    :param W: Wigner function on the grid.
    :type W: np.ndarray
    :param psi: Potential on the x grid.
    :type psi: np.ndarray
    :param grid: Phase-space grid.
    :type grid: PhaseSpaceGrid
    :param H: Quantum parameter.
    :type H: float
    :param terms: Number of odd orders kept, the first is the classical gradient kick.
    :type terms: int
    :return: The truncated rate.
    :rtype: np.ndarray
    """
    psi_hat = np.fft.rfft(psi)
    psi_hat[-1] = 0.0
    spectrum = np.fft.rfft(W, axis=1)
    rate = np.zeros_like(spectrum)
    for n in range(terms):
        order = 2 * n + 1
        derivative = np.fft.irfft((1j * grid.k) ** order * psi_hat, n=grid.x.size)
        coefficient = -1j * grid.eta ** order * (0.5 * H) ** (order - 1) / math.factorial(order)
        rate += derivative[:, None] * coefficient[None, :] * spectrum

    return np.fft.irfft(rate, n=grid.u.size, axis=1)


def init_state(cfg: SimConfig, background: Optional[Background] = None) -> WignerState:
    """Seeded equilibrium W(x, u, 0) = W0(u) (1 + amplitude cos(K_bar x)) and its potential.

    :param cfg: Run configuration.
    :type cfg: SimConfig
    :param background: Background to sample, by default the first one of `cfg.backgrounds()`.
    :type background: Optional[Background]
    :return: The initial state.
    :rtype: WignerState
    """
    background = cfg.backgrounds()[0] if background is None else background
    grid = cfg.grid
    profile = sample_background(background, grid)
    modulation = 1.0 + cfg.amplitude * np.cos(cfg.K_bar * grid.x)
    W = np.outer(modulation, profile)
    return WignerState(W=W, psi=solve_poisson(W, grid), t=0.0)


def step(state: WignerState, cfg: SimConfig, dt: Optional[float] = None) -> WignerState:
    """Advance one Strang step: half drift, kick, half drift, each followed by Poisson where needed.

    A negative `dt` steps backwards; the scheme is time-reversible.
    """
    dt = cfg.dt if dt is None else dt
    grid = cfg.grid
    W = free_stream(state.W, grid, 0.5 * dt)
    W = potential_kick(W, solve_poisson(W, grid), grid, cfg.H, dt)
    W = free_stream(W, grid, 0.5 * dt)
    return WignerState(W=W, psi=solve_poisson(W, grid), t=state.t + dt)


def _sample(diagnostics: Diagnostics, state: WignerState, cfg: SimConfig) -> None:
    grid = cfg.grid
    psi_hat = np.fft.rfft(state.psi)
    gradient = np.fft.irfft(1j * grid.k * psi_hat, n=grid.x.size)

    def _amplitude(harmonic: int) -> float:
        index = harmonic * cfg.mode
        if index >= psi_hat.size - 1:
            return math.nan
        return 2.0 * abs(psi_hat[index]) / grid.x.size

    cell = grid.dx * grid.du
    diagnostics.times.append(state.t)
    diagnostics.field_energy.append(float(np.sum(gradient ** 2) * grid.dx))
    diagnostics.mode_amplitude.append(_amplitude(1))
    diagnostics.harmonic_2.append(_amplitude(2))
    diagnostics.harmonic_3.append(_amplitude(3))
    diagnostics.number.append(float(state.W.sum() * cell))
    diagnostics.momentum.append(float((state.W @ grid.u).sum() * cell))


def evolve(
    cfg: SimConfig, state: Optional[WignerState] = None
) -> Tuple[WignerState, Diagnostics]:
    """Step from `state` (the seeded equilibrium by default) to `cfg.t_end`, sampling diagnostics.

    :param cfg: Run configuration.
    :type cfg: SimConfig
    :param state: Initial state.
    :type state: Optional[WignerState]
    :return: The final state and the sampled diagnostics.
    :rtype: Tuple[WignerState, Diagnostics]
    """
    state = init_state(cfg) if state is None else state
    widths = tuple(stream.width for stream in cfg.backgrounds()[0])
    diagnostics = Diagnostics(widths=widths)
    _sample(diagnostics, state, cfg)
    for index in range(1, cfg.steps + 1):
        state = step(state, cfg)
        if index % cfg.sample_every == 0:
            _sample(diagnostics, state, cfg)

    LOGGER.debug(
        "{!s} evolved `{!s}` steps to t: `{!r}`, number drift: `{:.3e}`".format(
            context_prefix(),
            cfg.steps,
            state.t,
            abs(diagnostics.number[-1] - diagnostics.number[0]) / diagnostics.number[0],
        )
    )
    return state, diagnostics


def _steady_window(slopes: np.ndarray, tolerance: float, min_points: int) -> Optional[Tuple[int, int]]:
    """Longest index range whose slopes spread by less than `tolerance` times their mean."""
    best = None
    size = slopes.size
    for start in range(size):
        if best is not None and size - start <= best[1] - best[0]:
            break

        low = high = total = slopes[start]
        for stop in range(start + 1, size):
            value = slopes[stop]
            low, high, total = min(low, value), max(high, value), total + value
            if high - low > tolerance * abs(total / (stop - start + 1)):
                break
            if stop - start + 1 >= min_points and (best is None or stop - start > best[1] - best[0]):
                best = (start, stop)

    return best


def fit_growth_rate(
    times: np.ndarray,
    amplitudes: np.ndarray,
    limit: Optional[float] = None,
    tolerance: float = 0.05,
) -> GrowthFit:
    """Fit an exponential rate to a mode amplitude series.

    The series is cut where the amplitude first reaches `limit`. An
    oscillating series (at least four local maxima reaching both ends) is
    fitted on its peak envelope. The fit window is the longest run where
    the local log-slope varies by less than `tolerance` relative to its mean.

    :param times: Sample times.
    :type times: np.ndarray
    :param amplitudes: Positive amplitudes.
    :type amplitudes: np.ndarray
    :param limit: Amplitude where the linear regime ends.
    :type limit: Optional[float]
    :param tolerance: Allowed relative spread of the local slope.
    :type tolerance: float
    :raises FitError: If no window is found or the fit residual is too large.
    :return: The fit.
    :rtype: GrowthFit
    """
    times = np.asarray(times, dtype=float)
    amplitudes = np.asarray(amplitudes, dtype=float)
    stop = amplitudes.size
    if limit is not None:
        above = np.nonzero(amplitudes >= limit)[0]
        stop = int(above[0]) if above.size else stop

    valid = np.isfinite(amplitudes[:stop]) & (amplitudes[:stop] > 0)
    t, y = times[:stop][valid], np.log(amplitudes[:stop][valid])
    if t.size < 3:
        raise FitError(
            "{!s} only `{!s}` samples in the linear regime".format(context_prefix(), t.size),
            times=times,
            amplitudes=amplitudes,
        )

    peaks, _ = signal.find_peaks(y)
    span = t[-1] - t[0]
    source, min_points = "series", 10
    if (
        peaks.size >= ENVELOPE_PEAKS
        and t[peaks[0]] - t[0] <= 0.25 * span
        and t[-1] - t[peaks[-1]] <= 0.25 * span
    ):
        t, y = t[peaks], y[peaks]
        source, min_points = "envelope", 3

    window = _steady_window(np.gradient(y, t), tolerance, min(min_points, t.size))
    if window is None:
        raise FitError(
            "{!s} no exponential regime found in `{!s}` samples ({!s})".format(
                context_prefix(), t.size, source
            ),
            times=times,
            amplitudes=amplitudes,
        )

    first, last = window
    t_fit, y_fit = t[first : last + 1], y[first : last + 1]
    rate, intercept = np.polyfit(t_fit, y_fit, 1)
    residual = float(np.sqrt(np.mean((y_fit - (rate * t_fit + intercept)) ** 2)))
    if residual > FIT_RESIDUAL:
        raise FitError(
            "{!s} exponential fit residual `{:.3e}` above `{!r}`".format(
                context_prefix(), residual, FIT_RESIDUAL
            ),
            times=times,
            amplitudes=amplitudes,
        )

    LOGGER.debug(
        "{!s} fitted rate `{!r}` on t in [{!r}, {!r}] from the {!s}, residual `{:.3e}`".format(
            context_prefix(), rate, t_fit[0], t_fit[-1], source, residual
        )
    )
    return GrowthFit(
        rate=float(rate),
        intercept=float(intercept),
        window=(float(t_fit[0]), float(t_fit[-1])),
        residual=residual,
        source=source,
        points=int(t_fit.size),
    )


def extrapolate_rate(rates: List[float]) -> float:
    """Zero-width rate from rates at widths w and 2 w, exact when the rate is linear in width."""
    if len(rates) == 1:
        return rates[0]
    return 2.0 * rates[0] - rates[1]


def run(cfg: SimConfig) -> SimulationResult:
    """Simulate every background of `cfg` to `t_end` and fit the growth rate of the seeded mode.

    :param cfg: Run configuration.
    :type cfg: SimConfig
    :raises FitError: If a run shows no exponential regime.
    :return: Diagnostics per width and the reported rate.
    :rtype: SimulationResult
    """
    if cfg.widened:
        LOGGER.warning(
            "{!s} delta streams widened to `{!s}` momentum cells of `{!r}`, rate extrapolated to zero width".format(
                context_prefix(), WIDENING_CELLS, cfg.momentum_step
            )
        )

    limit = cfg.linear_cap * cfg.amplitude / cfg.K_bar ** 2
    runs = []
    for background in cfg.backgrounds():
        _, diagnostics = evolve(cfg, init_state(cfg, background))
        diagnostics.widths = tuple(stream.width for stream in background)
        diagnostics.fit = fit_growth_rate(
            diagnostics.times,
            diagnostics.mode_amplitude,
            limit=limit,
            tolerance=cfg.fit_tolerance,
        )
        runs.append(diagnostics)

    gamma = extrapolate_rate([diagnostics.gamma_fit for diagnostics in runs])
    LOGGER.info(
        "{!s} simulated K_bar: `{!r}`, H: `{!r}`: fitted rate `{!r}` from `{!s}` run(s)".format(
            context_prefix(), cfg.K_bar, cfg.H, gamma, len(runs)
        )
    )
    return SimulationResult(config=cfg, diagnostics=runs, gamma_fit=gamma)
