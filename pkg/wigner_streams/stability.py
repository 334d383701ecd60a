#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""Stability maps of the broadened symmetric two-stream plasma over (K_bar, H).

Cells are classified from the closed-form growth rate. Boundaries are
refined by bisection on the signed margin -Omega_-**2 - alpha**2 K**2,
which is positive exactly where Im(Omega) > 0 and, unlike the growth rate
itself, crosses zero linearly.
"""

from dataclasses import dataclass, field
from typing import List, Optional, Tuple
import logging
import math

import numpy as np
from scipy import optimize

from wigner_streams.analytic import growth_rate, two_stream_lorentzian
from wigner_streams.checks import context_prefix, doc_check
from wigner_streams.exceptions import PreconditionError

LOGGER = logging.getLogger("wigner_streams")

STABLE = "stable"
UNSTABLE = "unstable"

GROWTH_TOLERANCE = 1e-12
DEFAULT_K_RANGE = (0.0, 4.0)
DEFAULT_H_RANGE = (0.0, 4.0)
DEFAULT_GRID_SIZE = 400


@dataclass
class StabilityMap:
    """Classified (K_bar, H) grid at fixed alpha with its traced boundary curves.

    `unstable` and `growth` are indexed [K index, H index].
    """

    K_axis: np.ndarray
    H_axis: np.ndarray
    alpha: float
    unstable: np.ndarray
    growth: np.ndarray
    boundaries: List[np.ndarray] = field(default_factory=list)

    @property
    def shape(self: "StabilityMap") -> Tuple[int, int]:
        return self.unstable.shape

    def cells(self: "StabilityMap"):
        """Yield (K_bar, H, classification, growth) for every cell, K_bar major."""
        for i, K_bar in enumerate(self.K_axis):
            for j, H in enumerate(self.H_axis):
                yield (
                    float(K_bar),
                    float(H),
                    UNSTABLE if self.unstable[i, j] else STABLE,
                    float(self.growth[i, j]),
                )


def _margin(K_bar: float, H: float, alpha: float) -> float:
    A = K_bar * K_bar
    B = H * H * A * A / 4.0
    upper = 0.5 + A + B + 0.5 * math.sqrt(1.0 + 8.0 * A + 16.0 * A * B)
    return (A - B) * (1.0 - A + B) / upper - alpha * alpha * A


def _imaginary_part(K_bar: float, H: float, alpha: float) -> float:
    A = K_bar * K_bar
    B = H * H * A * A / 4.0
    upper = 0.5 + A + B + 0.5 * math.sqrt(1.0 + 8.0 * A + 16.0 * A * B)
    lower = -(A - B) * (1.0 - A + B) / upper
    return math.sqrt(max(-lower, 0.0)) - alpha * K_bar


def _bisect(func, lower: float, upper: float, tolerance: float = 1e-14) -> Tuple[float, float]:
    """Shrink a bracket [lower, upper] with func(lower) <= 0 < func(upper) or the reverse.

    :return: The endpoint on the stable side and the one on the unstable side.
    :rtype: Tuple[float, float]
    """
    stable, unstable = (lower, upper) if func(lower) <= 0 else (upper, lower)
    while abs(unstable - stable) > tolerance * max(1.0, abs(stable)):
        middle = 0.5 * (stable + unstable)
        if middle in (stable, unstable):
            break
        if func(middle) > 0:
            unstable = middle
        else:
            stable = middle

    return stable, unstable


@doc_check(K_bar="positive", H="nonnegative", alpha="nonnegative")
def classify(K_bar: float, H: float, alpha: float) -> Tuple[str, float]:
    """Classify one (K_bar, H, alpha) point; marginal points are stable.

    :param K_bar: Dimensionless wavenumber.
    :type K_bar: float
    :param H: Quantum parameter.
    :type H: float
    :param alpha: Relative broadening.
    :type alpha: float
    :return: The classification and the growth rate, zero when stable.
    :rtype: Tuple[str, float]
    """
    imaginary = two_stream_lorentzian(K_bar, H, alpha).imag
    if imaginary > GROWTH_TOLERANCE:
        return UNSTABLE, imaginary

    return STABLE, 0.0


def _check_axis(name: str, axis: np.ndarray) -> np.ndarray:
    axis = np.asarray(axis, dtype=float)
    if axis.ndim != 1 or axis.size < 2:
        raise PreconditionError(
            "{!s} axis: `{!s}` needs at least two points".format(context_prefix(), name),
            parameter=name,
            value=axis,
            rule="nondegenerate",
        )
    if np.any(np.diff(axis) <= 0):
        raise PreconditionError(
            "{!s} axis: `{!s}` is not strictly increasing".format(context_prefix(), name),
            parameter=name,
            value=axis,
            rule="increasing",
        )

    return axis


def _boundary_points(
    K_axis: np.ndarray, H_axis: np.ndarray, alpha: float, unstable: np.ndarray
) -> List[Tuple[float, float]]:
    points = []
    rows, columns = np.nonzero(unstable[:-1, :] != unstable[1:, :])
    for i, j in zip(rows, columns):
        H = float(H_axis[j])
        stable, _ = _bisect(lambda K: _margin(K, H, alpha), K_axis[i], K_axis[i + 1])
        points.append((stable, H))

    rows, columns = np.nonzero(unstable[:, :-1] != unstable[:, 1:])
    for i, j in zip(rows, columns):
        K_bar = float(K_axis[i])
        stable, _ = _bisect(lambda H: _margin(K_bar, H, alpha), H_axis[j], H_axis[j + 1])
        points.append((K_bar, stable))

    return points


def _chain(
    points: List[Tuple[float, float]], K_step: float, H_step: float
) -> List[np.ndarray]:
    """Connect boundary points into polylines by nearest-neighbour chaining."""
    if not points:
        return []

    remaining = np.array(sorted(points))
    scale = np.array([K_step, H_step])
    reach = 2.0 * math.sqrt(2.0)
    curves = []
    while remaining.size:
        curve = [remaining[0]]
        remaining = remaining[1:]
        while remaining.size:
            distances = np.linalg.norm((remaining - curve[-1]) / scale, axis=1)
            nearest = int(np.argmin(distances))
            if distances[nearest] > reach:
                break
            curve.append(remaining[nearest])
            remaining = np.delete(remaining, nearest, axis=0)
        curves.append(np.array(curve))

    return curves


@doc_check(alpha="nonnegative")
def build_map(K_grid: np.ndarray, H_grid: np.ndarray, alpha: float) -> StabilityMap:
    """Classify every cell of a (K_bar, H) grid and trace the zero-growth boundaries.

    :param K_grid: Strictly increasing positive K_bar axis.
    :type K_grid: np.ndarray
    :param H_grid: Strictly increasing nonnegative H axis.
    :type H_grid: np.ndarray
    :param alpha: Relative broadening.
    :type alpha: float
    :raises PreconditionError: If an axis is degenerate or not increasing.
    :return: The stability map.
    :rtype: StabilityMap
    """
    K_axis = _check_axis("K_grid", K_grid)
    H_axis = _check_axis("H_grid", H_grid)
    if K_axis[0] <= 0 or H_axis[0] < 0:
        raise PreconditionError(
            "{!s} grids need K_bar > 0 and H >= 0".format(context_prefix()),
            parameter="K_grid" if K_axis[0] <= 0 else "H_grid",
            value=K_axis[0] if K_axis[0] <= 0 else H_axis[0],
            rule="domain",
        )

    K_mesh, H_mesh = np.meshgrid(K_axis, H_axis, indexing="ij")
    imaginary = growth_rate(K_mesh, H_mesh, alpha)
    unstable = imaginary > GROWTH_TOLERANCE
    growth = np.where(unstable, imaginary, 0.0)

    points = _boundary_points(K_axis, H_axis, alpha, unstable)
    boundaries = _chain(points, float(np.min(np.diff(K_axis))), float(np.min(np.diff(H_axis))))

    LOGGER.info(
        "{!s} stability map {!s}x{!s} at alpha: `{!r}`, unstable cells: `{!s}`, boundary points: `{!s}` in `{!s}` curves".format(
            context_prefix(),
            K_axis.size,
            H_axis.size,
            alpha,
            int(unstable.sum()),
            len(points),
            len(boundaries),
        )
    )
    return StabilityMap(
        K_axis=K_axis,
        H_axis=H_axis,
        alpha=alpha,
        unstable=unstable,
        growth=growth,
        boundaries=boundaries,
    )


def default_axes(size: int = DEFAULT_GRID_SIZE) -> Tuple[np.ndarray, np.ndarray]:
    """K_bar in (0, 4] and H in [0, 4], `size` points each."""
    K_axis = np.linspace(DEFAULT_K_RANGE[1] / size, DEFAULT_K_RANGE[1], size)
    H_axis = np.linspace(DEFAULT_H_RANGE[0], DEFAULT_H_RANGE[1], size)
    return K_axis, H_axis


def covering_k_max(H: float) -> float:
    """Upper end of a K_bar range that holds every band at H, past K_+ = 2 / H."""
    if H <= 0:
        return DEFAULT_K_RANGE[1]
    return max(DEFAULT_K_RANGE[1], 1.1 * 2.0 / H)


@doc_check(H="nonnegative", alpha="nonnegative", samples="positive")
def band_report(
    H: float,
    alpha: float,
    K_range: Optional[Tuple[float, float]] = None,
    samples: int = 4000,
) -> List[Tuple[float, float]]:
    """Unstable K_bar intervals at fixed H and alpha.

    Sign changes of the growth margin on a uniform scan are refined by
    bisection. A band touching the lower end of the range starts there.
    Without a range the scan runs to `covering_k_max(H)`. An explicit range
    ending below K_+ = 2 / H logs a warning, since bands past it are cut.

    :param H: Quantum parameter.
    :type H: float
    :param alpha: Relative broadening.
    :type alpha: float
    :param K_range: Scanned K_bar range, the lower end may be zero.
    :type K_range: Optional[Tuple[float, float]]
    :param samples: Number of scan points.
    :type samples: int
    :return: Sorted, disjoint unstable intervals.
    :rtype: List[Tuple[float, float]]
    """
    if K_range is None:
        K_range = (0.0, covering_k_max(H))
    K_min, K_max = (float(value) for value in K_range)
    if not 0 <= K_min < K_max:
        raise PreconditionError(
            "{!s} invalid K_bar range: `{!r}`".format(context_prefix(), K_range),
            parameter="K_range",
            value=K_range,
            rule="range",
        )

    if H > 0 and K_max < 2.0 / H:
        LOGGER.warning(
            "{!s} K_bar range ends at `{!r}`, below K_+ = 2 / H = `{!r}`: bands past it are clipped or missing".format(
                context_prefix(), K_max, 2.0 / H
            )
        )

    start = K_min if K_min > 0 else K_max * 1e-9
    scan = np.linspace(start, K_max, int(samples))
    unstable = [_margin(K_bar, H, alpha) > 0 for K_bar in scan]

    bands = []
    band_start = K_min if unstable[0] else None
    for index in range(1, len(scan)):
        if unstable[index] == unstable[index - 1]:
            continue

        stable, _ = _bisect(lambda K: _margin(K, H, alpha), scan[index - 1], scan[index])
        if unstable[index]:
            band_start = stable
        else:
            bands.append((band_start, stable))
            band_start = None

    if band_start is not None:
        bands.append((band_start, K_max))

    LOGGER.debug(
        "{!s} bands at H: `{!r}`, alpha: `{!r}`: `{!r}`".format(context_prefix(), H, alpha, bands)
    )
    return bands


@doc_check(alpha="positive")
def large_k_termination(
    alpha: float, K_range: Tuple[float, float] = (1.0, 100.0), samples: int = 400
) -> float:
    """Largest K_bar at which some H still gives growth.

    The growth rate is maximized over H between the cold-beam boundaries
    H_- and H_+ = 2 / K_bar, where -Omega_-**2 > 0 and the growth is
    smooth, and the wavenumber where that maximum falls to zero is bisected.

    :param alpha: Relative broadening.
    :type alpha: float
    :param K_range: Bracket for the termination wavenumber.
    :type K_range: Tuple[float, float]
    :param samples: Scan points inside the bracket.
    :type samples: int
    :raises PreconditionError: If no sign change is found in the bracket.
    :return: The termination wavenumber.
    :rtype: float
    """

    def _peak(K_bar: float) -> float:
        H_plus = 2.0 / K_bar
        H_minus = H_plus * math.sqrt(max(1.0 - 1.0 / K_bar ** 2, 0.0))
        result = optimize.minimize_scalar(
            lambda H: -_imaginary_part(K_bar, H, alpha),
            bounds=(H_minus, H_plus),
            method="bounded",
            options={"xatol": 1e-14 * H_plus},
        )
        return -result.fun

    scan = np.geomspace(K_range[0], K_range[1], samples)
    peaks = np.array([_peak(K_bar) for K_bar in scan])
    crossings = np.nonzero((peaks[:-1] > 0) & (peaks[1:] <= 0))[0]
    if crossings.size == 0:
        raise PreconditionError(
            "{!s} no termination of the large-K_bar band in `{!r}`".format(
                context_prefix(), K_range
            ),
            parameter="K_range",
            value=K_range,
            rule="bracket",
        )

    index = int(crossings[-1])
    termination = optimize.brentq(_peak, scan[index], scan[index + 1], xtol=1e-12)
    LOGGER.info(
        "{!s} large-K_bar band at alpha: `{!r}` terminates at K_bar: `{!r}`".format(
            context_prefix(), alpha, termination
        )
    )
    return termination
