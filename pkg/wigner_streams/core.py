#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""Parameter types, background Wigner spectra and unit conversions.

Every later module works in dimensionless form: momenta in units of the
reference drift momentum p0, frequencies in units of the plasma frequency
of the total density, wavenumbers as K_bar = p0 K / (omega_p0 m) and the
quantum parameter H = hbar omega_p0 m / p0**2. SI values only enter
through `PhysicalParams`, `to_dimensionless` and `from_dimensionless`.
"""

from dataclasses import dataclass, field
from typing import Iterable, Tuple, Union
import logging
import math
import warnings

import numpy as np
from scipy import integrate

from wigner_streams.checks import context_prefix, doc_check
from wigner_streams.exceptions import PreconditionError

LOGGER = logging.getLogger("wigner_streams")

DELTA = "delta"
LORENTZIAN = "lorentzian"
SPECTRUM_KINDS = (DELTA, LORENTZIAN)

ArrayLike = Union[float, np.ndarray]


@doc_check(density="positive", charge="positive", mass="positive", permittivity="positive")
def plasma_frequency(
    density: float, charge: float, mass: float, permittivity: float
) -> float:
    """Plasma frequency sqrt(n e**2 / (m eps0)).

    :param density: Number density in 1/m**3.
    :type density: float
    :param charge: Elementary charge in C.
    :type charge: float
    :param mass: Particle mass in kg.
    :type mass: float
    :param permittivity: Vacuum permittivity in F/m.
    :type permittivity: float
    :return: The plasma frequency in rad/s.
    :rtype: float
    """
    return math.sqrt(density * charge ** 2 / (mass * permittivity))


@dataclass(frozen=True)
class PhysicalParams:
    """SI constants of the electron plasma and the density of the fixed ion background."""

    electron_mass: float = 9.1093837015e-31
    elementary_charge: float = 1.602176634e-19
    vacuum_permittivity: float = 8.8541878128e-12
    reduced_planck: float = 1.054571817e-34
    ion_background_density: float = 1.0e24

    def __post_init__(self: "PhysicalParams") -> None:
        for name in (
            "electron_mass",
            "elementary_charge",
            "vacuum_permittivity",
            "reduced_planck",
            "ion_background_density",
        ):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise PreconditionError(
                    "{!s} parameter: `{!s}` must be strictly positive: was actually `{!r}`".format(
                        context_prefix(), name, value
                    ),
                    parameter=name,
                    value=value,
                    rule="positive",
                )

        if not math.isfinite(self.plasma_frequency):
            raise PreconditionError(
                "{!s} plasma frequency is not finite".format(context_prefix()),
                parameter="ion_background_density",
                value=self.ion_background_density,
                rule="finite",
            )

    @property
    def plasma_frequency(self: "PhysicalParams") -> float:
        """Plasma frequency omega_p0 of the total density n0."""
        return plasma_frequency(
            self.ion_background_density,
            self.elementary_charge,
            self.electron_mass,
            self.vacuum_permittivity,
        )


@dataclass(frozen=True)
class StreamSpectrum:
    """One background stream of the Wigner spectrum.

    A delta stream is a monochromatic beam, n0j delta(p - p0j); a
    Lorentzian stream is the spectrum of a beam with an exponentially
    correlated random phase, (n0j / pi) p_Tj / ((p - p0j)**2 + p_Tj**2).
    Units are whatever the owning `Background` uses.
    """

    density: float
    drift_momentum: float
    width: float = 0.0
    kind: str = field(default="")

    def __post_init__(self: "StreamSpectrum") -> None:
        if not self.kind:
            object.__setattr__(self, "kind", DELTA if self.width == 0 else LORENTZIAN)

        if self.kind not in SPECTRUM_KINDS:
            raise ValueError(
                "{!s} unknown spectrum kind: `{!s}`".format(context_prefix(), self.kind)
            )
        if not self.density > 0:
            raise PreconditionError(
                "{!s} stream density must be positive: was actually `{!r}`".format(
                    context_prefix(), self.density
                ),
                parameter="density",
                value=self.density,
                rule="positive",
            )
        if not self.width >= 0:
            raise PreconditionError(
                "{!s} stream width must be nonnegative: was actually `{!r}`".format(
                    context_prefix(), self.width
                ),
                parameter="width",
                value=self.width,
                rule="nonnegative",
            )
        if (self.kind == DELTA) != (self.width == 0):
            raise PreconditionError(
                "{!s} a `{!s}` stream cannot have width `{!r}`".format(
                    context_prefix(), self.kind, self.width
                ),
                parameter="width",
                value=self.width,
                rule="kind",
            )

    @classmethod
    def delta(cls, density: float, drift_momentum: float) -> "StreamSpectrum":
        return cls(density=density, drift_momentum=drift_momentum, width=0.0, kind=DELTA)

    @classmethod
    def lorentzian(
        cls, density: float, drift_momentum: float, width: float
    ) -> "StreamSpectrum":
        return cls(
            density=density, drift_momentum=drift_momentum, width=width, kind=LORENTZIAN
        )

    @property
    def complex_center(self: "StreamSpectrum") -> complex:
        """Pole of the spectrum picked by the causal continuation, p0j - i p_Tj."""
        return complex(self.drift_momentum, -self.width)

    def integral(self: "StreamSpectrum") -> float:
        """Integral of the spectrum over all momenta, counted analytically."""
        return self.density

    def scaled(
        self: "StreamSpectrum", density_scale: float, momentum_scale: float
    ) -> "StreamSpectrum":
        return StreamSpectrum(
            density=self.density / density_scale,
            drift_momentum=self.drift_momentum / momentum_scale,
            width=self.width / abs(momentum_scale),
            kind=self.kind,
        )


@dataclass(frozen=True)
class Background:
    """Ordered collection of background streams."""

    streams: Tuple[StreamSpectrum, ...]

    def __post_init__(self: "Background") -> None:
        object.__setattr__(self, "streams", tuple(self.streams))
        if not self.streams:
            raise PreconditionError(
                "{!s} a background needs at least one stream".format(context_prefix()),
                parameter="streams",
                value=self.streams,
                rule="nonempty",
            )

    def __iter__(self: "Background"):
        return iter(self.streams)

    def __len__(self: "Background") -> int:
        return len(self.streams)

    @property
    def total_density(self: "Background") -> float:
        return math.fsum(stream.integral() for stream in self.streams)

    @property
    def is_smooth(self: "Background") -> bool:
        """True when every stream is Lorentzian, i.e. the spectrum can be sampled."""
        return all(stream.kind == LORENTZIAN for stream in self.streams)

    def check_neutral(self: "Background", density: float = 1.0, rtol: float = 1e-9) -> None:
        """Check quasineutrality, the sum of stream densities equals the ion density.

        :param density: The ion background density in the units of the streams.
        :type density: float
        :param rtol: Relative tolerance.
        :type rtol: float
        :raises PreconditionError: If the background is not neutral.
        """
        total = self.total_density
        if abs(total - density) > rtol * abs(density):
            raise PreconditionError(
                "{!s} background is not neutral: stream densities sum to `{!r}`, expected `{!r}`".format(
                    context_prefix(), total, density
                ),
                parameter="streams",
                value=total,
                rule="neutral",
            )

    def scaled(
        self: "Background", density_scale: float, momentum_scale: float
    ) -> "Background":
        """Convert to dimensionless form, densities as fractions and momenta in units of p0."""
        return Background(
            tuple(stream.scaled(density_scale, momentum_scale) for stream in self.streams)
        )

    def with_widths(self: "Background", widths: Iterable[float]) -> "Background":
        return Background(
            tuple(
                StreamSpectrum(
                    density=stream.density,
                    drift_momentum=stream.drift_momentum,
                    width=width,
                )
                for stream, width in zip(self.streams, widths)
            )
        )

    def sample(self: "Background", momenta: np.ndarray) -> np.ndarray:
        """Sum of the Lorentzian streams evaluated on a momentum grid.

        :param momenta: Momentum grid, real or complex.
        :type momenta: np.ndarray
        :raises ValueError: If the background holds a delta stream.
        :return: The summed spectrum.
        :rtype: np.ndarray
        """
        return sum(lorentzian_value(stream, momenta) for stream in self.streams)


def one_stream(alpha: float = 0.0, drift: float = 1.0) -> Background:
    """Dimensionless single stream of unit density, Lorentzian when `alpha` > 0."""
    return Background((StreamSpectrum(density=1.0, drift_momentum=drift, width=alpha),))


def symmetric_two_stream(alpha: float = 0.0) -> Background:
    """Dimensionless counter-streaming pair, half density each at drifts +1 and -1."""
    return Background(
        (
            StreamSpectrum(density=0.5, drift_momentum=1.0, width=alpha),
            StreamSpectrum(density=0.5, drift_momentum=-1.0, width=alpha),
        )
    )


@dataclass(frozen=True)
class DimensionlessParams:
    """Normalized wavenumber, quantum parameter and relative broadening."""

    K_bar: float
    H: float
    alpha: float = 0.0
    branch_sign: int = 1

    def __post_init__(self: "DimensionlessParams") -> None:
        for name, rule, ok in (
            ("K_bar", "positive", self.K_bar > 0),
            ("H", "nonnegative", self.H >= 0),
            ("alpha", "nonnegative", self.alpha >= 0),
            ("branch_sign", "sign", self.branch_sign in (1, -1)),
        ):
            if not ok:
                raise PreconditionError(
                    "{!s} parameter: `{!s}` was not {!s}: was actually `{!r}`".format(
                        context_prefix(), name, rule, getattr(self, name)
                    ),
                    parameter=name,
                    value=getattr(self, name),
                    rule=rule,
                )


@doc_check(K="positive", p0="nonzero", p_T="nonnegative")
def to_dimensionless(
    phys: PhysicalParams, K: float, p0: float, p_T: float = 0.0, branch_sign: int = 1
) -> DimensionlessParams:
    """Normalize a wavenumber, drift momentum and width.

    The drift enters through its magnitude, so counter-streaming beams
    share one set of dimensionless parameters.

    :param phys: The plasma constants.
    :type phys: PhysicalParams
    :param K: Wavenumber in 1/m.
    :type K: float
    :param p0: Drift momentum in kg m/s.
    :type p0: float
    :param p_T: Lorentzian width in kg m/s.
    :type p_T: float
    :param branch_sign: Branch carried along for the caller.
    :type branch_sign: int
    :raises PreconditionError: If the drift momentum is zero.
    :return: K_bar, H and alpha.
    :rtype: DimensionlessParams
    """
    omega = phys.plasma_frequency
    m = phys.electron_mass
    p0 = abs(p0)
    return DimensionlessParams(
        K_bar=p0 * K / (omega * m),
        H=phys.reduced_planck * omega * m / p0 ** 2,
        alpha=p_T / p0,
        branch_sign=branch_sign,
    )


def from_dimensionless(
    phys: PhysicalParams, params: DimensionlessParams
) -> Tuple[float, float, float]:
    """Invert `to_dimensionless`.

    The drift momentum is recovered from H, so H must be positive.

    :param phys: The plasma constants.
    :type phys: PhysicalParams
    :param params: The dimensionless parameters.
    :type params: DimensionlessParams
    :raises PreconditionError: If H is zero.
    :return: Wavenumber K, drift momentum p0 and width p_T, in SI.
    :rtype: Tuple[float, float, float]
    """
    if not params.H > 0:
        raise PreconditionError(
            "{!s} H must be positive to recover the drift momentum: was actually `{!r}`".format(
                context_prefix(), params.H
            ),
            parameter="H",
            value=params.H,
            rule="positive",
        )

    omega = phys.plasma_frequency
    m = phys.electron_mass
    p0 = math.sqrt(phys.reduced_planck * omega * m / params.H)
    return params.K_bar * omega * m / p0, p0, params.alpha * p0


def lorentzian_value(stream: StreamSpectrum, p: ArrayLike) -> ArrayLike:
    """Evaluate a Lorentzian stream, (n0j / pi) p_Tj / ((p - p0j)**2 + p_Tj**2).

    Complex momenta are accepted, which gives the analytic continuation
    of the spectrum off the real axis.

    :param stream: The stream to evaluate.
    :type stream: StreamSpectrum
    :param p: Momentum or momentum grid.
    :type p: ArrayLike
    :raises ValueError: If the stream is a delta stream.
    :return: Density per unit momentum.
    :rtype: ArrayLike
    """
    if stream.kind != LORENTZIAN:
        raise ValueError(
            "{!s} delta streams are handled analytically and cannot be sampled".format(
                context_prefix()
            )
        )

    offset = p - stream.drift_momentum
    return (stream.density / math.pi) * stream.width / (offset ** 2 + stream.width ** 2)


def lorentzian_derivative(stream: StreamSpectrum, p: ArrayLike, order: int = 1) -> ArrayLike:
    """Derivative of `lorentzian_value` of the given order.

    Uses the partial fraction (n / 2 pi i) [1 / (p - c - i w) - 1 / (p - c + i w)],
    which stays analytic for complex momenta.

    :param stream: The stream to differentiate.
    :type stream: StreamSpectrum
    :param p: Momentum or momentum grid.
    :type p: ArrayLike
    :param order: Order of the derivative.
    :type order: int
    :raises ValueError: If the stream is a delta stream.
    :return: The derivative, real for real momenta.
    :rtype: ArrayLike
    """
    if stream.kind != LORENTZIAN:
        raise ValueError(
            "{!s} delta streams are handled analytically and cannot be sampled".format(
                context_prefix()
            )
        )

    offset = np.asarray(p) - stream.drift_momentum
    factor = (-1) ** order * math.factorial(order) * stream.density / (2j * math.pi)
    value = factor * (
        (offset - 1j * stream.width) ** (-order - 1)
        - (offset + 1j * stream.width) ** (-order - 1)
    )
    if not np.iscomplexobj(p):
        value = value.real

    return value.item() if np.ndim(value) == 0 else value


@doc_check(p_T="positive", density="positive")
def spectrum_from_correlation(
    p_T: float, grid: np.ndarray, density: float = 1.0
) -> np.ndarray:
    """Wigner spectrum of a plane wave whose phase has the correlation exp(-p_T |y|).

    The spectrum is the Fourier transform (n / 2 pi) int dy exp(i (p - p0) y) exp(-p_T |y|),
    computed numerically as a one-sided Fourier cosine integral. p0 is the
    centre of the grid. The result is the Lorentzian of width p_T and serves
    as an independent check of the closed form.

    :param p_T: Inverse correlation length of the phase, in momentum units.
    :type p_T: float
    :param grid: Momentum grid, symmetric about p0.
    :type grid: np.ndarray
    :param density: Density carried by the stream.
    :type density: float
    :raises PreconditionError: If the grid is not symmetric or resolves p_T with fewer than 8 points.
    :return: The spectrum sampled on the grid.
    :rtype: np.ndarray
    """
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size < 2 or np.any(np.diff(grid) <= 0):
        raise PreconditionError(
            "{!s} momentum grid must be one-dimensional and strictly increasing".format(
                context_prefix()
            ),
            parameter="grid",
            value=grid,
            rule="increasing",
        )

    p0 = 0.5 * (grid[0] + grid[-1])
    offsets = grid - p0
    if not np.allclose(offsets, -offsets[::-1], rtol=0, atol=1e-12 * np.ptp(grid)):
        raise PreconditionError(
            "{!s} momentum grid is not symmetric about `{!r}`".format(context_prefix(), p0),
            parameter="grid",
            value=grid,
            rule="symmetric",
        )

    spacing = float(np.max(np.diff(grid)))
    if p_T / spacing < 8:
        raise PreconditionError(
            "{!s} momentum grid too coarse: `{:.3g}` points across p_T, at least 8 required".format(
                context_prefix(), p_T / spacing
            ),
            parameter="grid",
            value=spacing,
            rule="resolution",
        )

    def _correlation(y: float) -> float:
        return math.exp(-p_T * y)

    spectrum = np.empty_like(grid)
    with warnings.catch_warnings():
        warnings.simplefilter("error", integrate.IntegrationWarning)
        for index, offset in enumerate(np.abs(offsets)):
            if offset == 0:
                value, _ = integrate.quad(_correlation, 0, np.inf, epsabs=1e-14)
            else:
                value, _ = integrate.quad(
                    _correlation, 0, np.inf, weight="cos", wvar=offset, epsabs=1e-14
                )
            spectrum[index] = density * value / math.pi

    LOGGER.debug(
        "{!s} spectrum from correlation on `{!s}` points, p_T: `{!r}`".format(
            context_prefix(), grid.size, p_T
        )
    )
    return spectrum
