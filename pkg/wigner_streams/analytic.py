#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""Closed-form dispersion branches of one- and two-stream quantum plasmas.

Perturbations go as exp[i(K x - Omega t)], so a positive imaginary part of
the frequency means growth. One-stream formulas are normalized with the
stream's own drift and the plasma frequency of its full density; the
symmetric two-stream formulas use the plasma frequency of the total
density with half of it in each beam.
"""

from dataclasses import dataclass
from typing import List, Optional, Tuple, Union
import logging
import math

import numpy as np

from wigner_streams.checks import context_prefix, doc_check

LOGGER = logging.getLogger("wigner_streams")

ArrayLike = Union[float, np.ndarray]
ComplexFrequency = complex

REGIMES = ("small_K", "threshold", "large_K")


def _unwrap(value: np.ndarray) -> ArrayLike:
    value = np.asarray(value)
    return value.item() if value.ndim == 0 else value


@dataclass(frozen=True)
class BandEdges:
    """Unstable wavenumber bands of the cold symmetric two-stream plasma at fixed H."""

    K_plus: float
    K_minus_low: Optional[float] = None
    K_minus_high: Optional[float] = None

    def intervals(self: "BandEdges") -> List[Tuple[float, float]]:
        """Unstable K_bar intervals, one band for H >= 1, two below."""
        if self.K_minus_low is None or self.K_minus_low == self.K_minus_high:
            return [(0.0, self.K_plus)]

        return [(0.0, self.K_minus_low), (self.K_minus_high, self.K_plus)]


@doc_check(K_bar="positive", H="nonnegative")
def one_stream_cold(K_bar: ArrayLike, H: ArrayLike) -> Tuple[ArrayLike, ArrayLike]:
    """Both branches of the cold one-stream relation (Omega - K)**2 = 1 + H**2 K**4 / 4.

    :param K_bar: Dimensionless wavenumber.
    :type K_bar: ArrayLike
    :param H: Quantum parameter.
    :type H: ArrayLike
    :return: The upper and lower real frequencies.
    :rtype: Tuple[ArrayLike, ArrayLike]
    """
    K_bar = np.asarray(K_bar, dtype=float)
    root = np.sqrt(1.0 + H ** 2 * K_bar ** 4 / 4.0)
    return _unwrap(K_bar + root), _unwrap(K_bar - root)


@doc_check(K_bar="positive", H="nonnegative", alpha="nonnegative")
def one_stream_lorentzian(
    K_bar: float, H: float, alpha: float, branch_sign: int = 1
) -> ComplexFrequency:
    """One-stream frequency with Lorentzian broadening, rigidly damped by alpha K_bar.

    :param K_bar: Dimensionless wavenumber.
    :type K_bar: float
    :param H: Quantum parameter.
    :type H: float
    :param alpha: Relative broadening p_T / p0.
    :type alpha: float
    :param branch_sign: +1 for the upper branch, -1 for the lower one.
    :type branch_sign: int
    :return: The complex frequency.
    :rtype: complex
    """
    root = math.sqrt(1.0 + H ** 2 * K_bar ** 4 / 4.0)
    return complex(K_bar + branch_sign * root, -alpha * K_bar)


def quartic_coefficients(K_bar: float, H: float) -> Tuple[float, float, float, float, float]:
    """Coefficients of the symmetric two-stream quartic in Omega, highest power first."""
    A = K_bar ** 2
    B = H ** 2 * K_bar ** 4 / 4.0
    return (
        1.0,
        0.0,
        -(1.0 + 2.0 * A + 2.0 * B),
        0.0,
        -(A - B) * (1.0 - A + B),
    )


@doc_check(K_bar="positive", H="nonnegative")
def two_stream_cold_quartic(K_bar: ArrayLike, H: ArrayLike) -> Tuple[ArrayLike, ArrayLike]:
    """Both roots in Omega**2 of the cold symmetric two-stream quartic.

    The lower root is computed from the product of the roots, which keeps
    its sign exact near marginal stability.

    :param K_bar: Dimensionless wavenumber.
    :type K_bar: ArrayLike
    :param H: Quantum parameter.
    :type H: ArrayLike
    :return: Omega**2 on the upper and lower branch.
    :rtype: Tuple[ArrayLike, ArrayLike]
    """
    K_bar = np.asarray(K_bar, dtype=float)
    H = np.asarray(H, dtype=float)
    A = K_bar ** 2
    B = H ** 2 * K_bar ** 4 / 4.0
    upper = 0.5 + A + B + 0.5 * np.sqrt(1.0 + 8.0 * A + 16.0 * A * B)
    lower = -(A - B) * (1.0 - A + B) / upper
    return _unwrap(upper), _unwrap(lower)


@doc_check(K_bar="positive", H="nonnegative")
def two_stream_cold_unstable(K_bar: ArrayLike, H: ArrayLike) -> Union[bool, np.ndarray]:
    """True where the lower Omega**2 branch is negative; marginal points are stable.

    :param K_bar: Dimensionless wavenumber.
    :type K_bar: ArrayLike
    :param H: Quantum parameter.
    :type H: ArrayLike
    :return: Instability flag.
    :rtype: Union[bool, np.ndarray]
    """
    _, lower = two_stream_cold_quartic(K_bar, H)
    unstable = np.asarray(lower) < 0
    return bool(unstable) if unstable.ndim == 0 else unstable


def instability_product(K_bar: ArrayLike, H: ArrayLike) -> ArrayLike:
    """(H**2 K**2 - 4)(H**2 K**4 - 4 K**2 + 4), negative exactly where the cold beams are unstable."""
    K_bar = np.asarray(K_bar, dtype=float)
    return _unwrap(
        (H ** 2 * K_bar ** 2 - 4.0) * (H ** 2 * K_bar ** 4 - 4.0 * K_bar ** 2 + 4.0)
    )


@doc_check(K_bar="positive")
def stability_boundaries(K_bar: ArrayLike) -> Tuple[ArrayLike, ArrayLike]:
    """Squared boundaries H_-**2 < H**2 < H_+**2 of the cold unstable region.

    H_-**2 is negative for K_bar < 1, where the lower bound is vacuous.

    :param K_bar: Dimensionless wavenumber.
    :type K_bar: ArrayLike
    :return: H_-**2 and H_+**2.
    :rtype: Tuple[ArrayLike, ArrayLike]
    """
    K_bar = np.asarray(K_bar, dtype=float)
    upper = 4.0 / K_bar ** 2
    return _unwrap(upper * (1.0 - 1.0 / K_bar ** 2)), _unwrap(upper)


@doc_check(H="positive")
def band_edges(H: float) -> BandEdges:
    """Edges of the unstable K_bar bands of the cold symmetric two-stream plasma.

    The inner edges solve H**2 K**4 / 4 - K**2 + 1 = 0, a quadratic in K**2,
    and exist only for H <= 1.

    :param H: Quantum parameter.
    :type H: float
    :return: The band edges.
    :rtype: BandEdges
    """
    K_plus = 2.0 / H
    if H > 1:
        return BandEdges(K_plus=K_plus)

    root = math.sqrt(1.0 - H ** 2)
    low_squared = 2.0 / (1.0 + root)
    high_squared = 2.0 * (1.0 + root) / H ** 2
    edges = BandEdges(
        K_plus=K_plus,
        K_minus_low=math.sqrt(low_squared),
        K_minus_high=math.sqrt(high_squared),
    )
    LOGGER.debug("{!s} band edges for H: `{!r}` are `{!s}`".format(context_prefix(), H, edges))
    return edges


def two_stream_roots(K_bar: float, H: float, alpha: float = 0.0) -> Tuple[complex, ...]:
    """All four roots of the broadened symmetric two-stream relation.

    (Omega + i alpha K)**2 equals either root of the cold quartic, so the
    roots are -i alpha K +/- sqrt(Omega_+**2) and -i alpha K +/- sqrt(Omega_-**2).

    :return: The roots ordered upper-branch pair first, unstable root third.
    :rtype: Tuple[complex, ...]
    """
    upper, lower = two_stream_cold_quartic(K_bar, H)
    shift = complex(0.0, -alpha * K_bar)
    upper_root = np.sqrt(complex(upper))
    lower_root = np.sqrt(complex(lower))
    return (
        shift + upper_root,
        shift - upper_root,
        shift + lower_root,
        shift - lower_root,
    )


@doc_check(K_bar="positive", H="nonnegative", alpha="nonnegative")
def two_stream_lorentzian(K_bar: float, H: float, alpha: float) -> ComplexFrequency:
    """Frequency of the unstable branch of the broadened symmetric two-stream plasma.

    The principal square root is taken so that Im(Omega) >= -alpha K_bar.

    :param K_bar: Dimensionless wavenumber.
    :type K_bar: float
    :param H: Quantum parameter.
    :type H: float
    :param alpha: Relative broadening p_T / p0 of both beams.
    :type alpha: float
    :return: The complex frequency.
    :rtype: complex
    """
    return two_stream_roots(K_bar, H, alpha)[2]


def growth_rate(K_bar: ArrayLike, H: ArrayLike, alpha: ArrayLike) -> ArrayLike:
    """Im(Omega) of the unstable two-stream branch, vectorized over its arguments."""
    _, lower = two_stream_cold_quartic(K_bar, H)
    lower = np.asarray(lower)
    return _unwrap(np.sqrt(np.maximum(-lower, 0.0)) - np.asarray(alpha) * np.asarray(K_bar))


def broadening_threshold(K_bar: ArrayLike, H: ArrayLike) -> ArrayLike:
    """Largest alpha still unstable at (K_bar, H); zero where the cold beams are stable."""
    _, lower = two_stream_cold_quartic(K_bar, H)
    return _unwrap(np.sqrt(np.maximum(-np.asarray(lower), 0.0)) / np.asarray(K_bar))


@doc_check(alpha="nonnegative")
def classical_cutoff(alpha: float) -> float:
    """Upper edge K_c = sqrt(1 - alpha**2) / (1 + alpha**2) of the broadened band at H = 0.

    :param alpha: Relative broadening.
    :type alpha: float
    :return: K_c, or 0 when alpha >= 1 and no instability is left.
    :rtype: float
    """
    if alpha >= 1:
        return 0.0

    return math.sqrt(1.0 - alpha ** 2) / (1.0 + alpha ** 2)


@doc_check(alpha="nonnegative")
def termination_wavenumber(alpha: float) -> float:
    """Wavenumber 1 / (2 sqrt(alpha)) at which the narrow large-K_bar band closes."""
    if alpha == 0:
        return math.inf

    return 0.5 / math.sqrt(alpha)


@doc_check(K_bar="positive", alpha="nonnegative")
def damped_threshold_H(K_bar: float, alpha: float) -> float:
    """Upper stability threshold H = (2 / K_bar) sqrt(1 - alpha**2) at small K_bar."""
    if alpha >= 1:
        return 0.0

    return 2.0 / K_bar * math.sqrt(1.0 - alpha ** 2)


@doc_check(K_bar="positive", alpha="nonnegative")
def large_k_thresholds(K_bar: float, alpha: float) -> Optional[Tuple[float, float]]:
    """Values of Delta h = 1 - H**2 K**2 / 4 bounding the large-K_bar band.

    From the leading-order growth rate the band is
    Delta h = (1 / 2K**2)(1 -/+ sqrt(1 - 16 alpha**2 K**4)); it closes at
    K_bar = 1 / (2 sqrt(alpha)).

    :param K_bar: Dimensionless wavenumber.
    :type K_bar: float
    :param alpha: Relative broadening.
    :type alpha: float
    :return: Lower and upper threshold, or None beyond the termination wavenumber.
    :rtype: Optional[Tuple[float, float]]
    """
    discriminant = 1.0 - 16.0 * alpha ** 2 * K_bar ** 4
    if discriminant < 0:
        return None

    root = math.sqrt(discriminant)
    scale = 0.5 / K_bar ** 2
    return scale * (1.0 - root), scale * (1.0 + root)


@doc_check(K_bar="positive", H="nonnegative", alpha="nonnegative")
def asymptotic_growth(K_bar: float, H: float, alpha: float, regime: str) -> float:
    """Asymptotic growth rate of the broadened two-stream instability.

    `small_K`: (1 - alpha) K_bar, classical limit at small K_bar.
    `threshold`: (sqrt(1 - H**2 K**2 / 4) - alpha) K_bar, small K_bar with H K_bar of order one.
    `large_K`: -alpha K_bar + sqrt(Delta h (1 - K**2 Delta h)) / 2 with
    Delta h = 1 - H**2 K**2 / 4, K_bar >> 1 close to H = 2 / K_bar. Where the
    square root would be imaginary the branch is not growing and only the
    damping term remains.

    With B = K**2 (1 - Delta h) the upper root of the quartic tends to
    4 K**2, so the lower one tends to -Delta h (1 - K**2 Delta h) / 4. The
    form sqrt(Delta h (1/2 - K**2 Delta h)) often quoted for this regime
    misses that limit and puts the zero-growth edge at Delta h = 1 / (2 K**2)
    instead of the exact 1 / K**2. Both forms terminate at K_bar = 1 / (2 sqrt(alpha)).

    :param K_bar: Dimensionless wavenumber.
    :type K_bar: float
    :param H: Quantum parameter.
    :type H: float
    :param alpha: Relative broadening.
    :type alpha: float
    :param regime: One of `small_K`, `threshold`, `large_K`.
    :type regime: str
    :raises KeyError: If the regime is unknown.
    :return: The asymptotic Im(Omega).
    :rtype: float
    """
    if regime == "small_K":
        return (1.0 - alpha) * K_bar
    elif regime == "threshold":
        return (math.sqrt(max(1.0 - H ** 2 * K_bar ** 2 / 4.0, 0.0)) - alpha) * K_bar
    elif regime == "large_K":
        delta_h = 1.0 - H ** 2 * K_bar ** 2 / 4.0
        return -alpha * K_bar + 0.5 * math.sqrt(
            max(delta_h * (1.0 - K_bar ** 2 * delta_h), 0.0)
        )

    raise KeyError(
        "{!s} unknown regime: `{!s}`, expected one of `{!s}`".format(
            context_prefix(), regime, ", ".join(REGIMES)
        )
    )
