#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""General multistream dielectric function and its complex roots.

In dimensionless variables (momentum u = p / p0, z = Omega / K) the
linearized Wigner-Poisson system gives

    eps(K, Omega) = 1 - 1 / (H K**3) sum_j int du [f_j(u + H K / 2) - f_j(u - H K / 2)] / (u - z)

with the classical limit f_j'(u) / K**2 at H = 0. The integral is defined
for Im(Omega) > 0 and continued analytically into the lower half plane
(Landau prescription). For delta and Lorentzian streams the continuation
is closed form: each stream contributes n_j / ((K c_j - Omega)**2 - H**2 K**4 / 4)
with the complex centre c_j = u_j - i w_j.
"""

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple
import logging
import math
import warnings

import numpy as np
from scipy import integrate, optimize

from wigner_streams.checks import context_prefix, doc_check
from wigner_streams.core import Background, lorentzian_derivative
from wigner_streams.exceptions import (
    NonConvergenceError,
    PreconditionError,
    QuadratureError,
)

LOGGER = logging.getLogger("wigner_streams")

CLOSED_FORM_POLE = "closed_form_pole"
QUADRATURE_PLEMELJ = "quadrature_plemelj"
METHODS = (CLOSED_FORM_POLE, QUADRATURE_PLEMELJ)

QUADRATURE_TOLERANCE = 1e-10
RESIDUAL_TOLERANCE = 1e-10
STEP_TOLERANCE = 1e-12
MAX_ITERATIONS = 100


@dataclass(frozen=True)
class DielectricEvaluation:
    """Value of the dispersion function at one (K_bar, Omega) point."""

    K_bar: float
    omega: complex
    epsilon: complex
    method: str


@dataclass(frozen=True)
class DispersionRoot:
    """A converged root together with its residual |eps| and the iteration count."""

    omega: complex
    residual: float
    iterations: int


@dataclass
class RootTrack:
    """Roots followed along a parameter path by continuation."""

    path: List[Tuple[float, float, float]] = field(default_factory=list)
    roots: List[complex] = field(default_factory=list)
    converged: List[bool] = field(default_factory=list)
    residuals: List[float] = field(default_factory=list)
    jumps: List[bool] = field(default_factory=list)

    def __len__(self: "RootTrack") -> int:
        return len(self.roots)


def _susceptibility_closed_form(
    background: Background, K_bar: float, H: float, omega: complex
) -> complex:
    quantum = H ** 2 * K_bar ** 4 / 4.0
    return sum(
        stream.density / ((K_bar * stream.complex_center - omega) ** 2 - quantum)
        for stream in background
    )


def _kernel(background: Background, K_bar: float, H: float, u):
    """Shifted spectrum difference divided by H K**3, or f'(u) / K**2 when H = 0."""
    if H == 0:
        return sum(lorentzian_derivative(stream, u) for stream in background) / K_bar ** 2

    shift = 0.5 * H * K_bar
    return (background.sample(u + shift) - background.sample(u - shift)) / (
        H * K_bar ** 3
    )


def _real_quad(func, lower: float, upper: float, points: Optional[Sequence[float]] = None) -> float:
    with warnings.catch_warnings():
        warnings.simplefilter("error", integrate.IntegrationWarning)
        try:
            value, _ = integrate.quad(
                func,
                lower,
                upper,
                points=points,
                epsabs=QUADRATURE_TOLERANCE,
                epsrel=1e-3 * QUADRATURE_TOLERANCE,
                limit=500,
            )
        except integrate.IntegrationWarning as warning:
            raise QuadratureError(
                "{!s} quadrature did not converge on [{!r}, {!r}]".format(
                    context_prefix(), lower, upper
                ),
                diagnostic=str(warning),
                interval=(lower, upper),
            )

    return value


def _merge_windows(
    windows: Sequence[Tuple[float, float, Sequence[float]]]
) -> List[Tuple[float, float, List[float]]]:
    """Merge overlapping (lower, upper, breakpoints) windows, sorted by lower edge.

    Streams and a far pole sit in separate windows, so quad never has to
    resolve a stream of unit width inside an interval of width |Omega / K|.
    """
    merged = []
    for lower, upper, points in sorted(windows, key=lambda window: window[0]):
        if merged and lower <= merged[-1][1]:
            last_lower, last_upper, last_points = merged[-1]
            merged[-1] = (last_lower, max(last_upper, upper), sorted(set(last_points) | set(points)))
        else:
            merged.append((lower, upper, sorted(points)))
    return merged


def _susceptibility_quadrature(
    background: Background, K_bar: float, H: float, omega: complex
) -> complex:
    """Landau-continued Hilbert transform of the kernel, by adaptive quadrature.

    The pole is regularized by subtracting g(x) c(u), c a unit-height
    Lorentzian centred on x = Re(z) whose transform is known; the
    remainder is bounded at u = x for every Im(z). Below the real axis the
    residue 2 pi i g(z) of the continuation is added.
    """
    z = omega / K_bar
    x, y = z.real, z.imag
    widths = [stream.width for stream in background]
    scale = max(min(widths), 1e-3)
    g_x = float(_kernel(background, K_bar, H, x))

    def _remainder(u: float) -> complex:
        subtraction = g_x * scale ** 2 / ((u - x) ** 2 + scale ** 2)
        return (_kernel(background, K_bar, H, u) - subtraction) / (u - z)

    shift = 0.5 * H * K_bar
    features = sorted(
        {stream.drift_momentum + shift for stream in background}
        | {stream.drift_momentum - shift for stream in background}
    )
    reach = 50.0 * max(max(widths), scale, 1.0)
    windows = _merge_windows(
        [(features[0] - reach, features[-1] + reach, features), (x - reach, x + reach, [x])]
    )

    value = 0j
    for part in (np.real, np.imag):

        def _integrand(u: float) -> float:
            return part(_remainder(u))

        component = _real_quad(_integrand, -np.inf, windows[0][0])
        for index, (lower, upper, points) in enumerate(windows):
            component += _real_quad(_integrand, lower, upper, points=points)
            if index + 1 < len(windows):
                component += _real_quad(_integrand, upper, windows[index + 1][0])
        component += _real_quad(_integrand, windows[-1][1], np.inf)
        value += component if part is np.real else 1j * component

    if y >= 0:
        value += g_x * math.pi * scale * 1j / (scale + y)
    else:
        value += g_x * math.pi * scale * -1j / (scale - y)
        value += 2j * math.pi * complex(_kernel(background, K_bar, H, z))

    return value


def susceptibility(
    background: Background,
    K_bar: float,
    H: float,
    omega: complex,
    method: str = CLOSED_FORM_POLE,
) -> complex:
    """Sum of the stream contributions, eps = 1 - susceptibility."""
    if method == CLOSED_FORM_POLE:
        return _susceptibility_closed_form(background, K_bar, H, omega)
    elif method == QUADRATURE_PLEMELJ:
        if not background.is_smooth:
            raise PreconditionError(
                "{!s} quadrature needs smooth streams, delta streams use `{!s}`".format(
                    context_prefix(), CLOSED_FORM_POLE
                ),
                parameter="background",
                value=background,
                rule="smooth",
            )
        return _susceptibility_quadrature(background, K_bar, H, omega)

    raise KeyError(
        "{!s} unknown method: `{!s}`, expected one of `{!s}`".format(
            context_prefix(), method, ", ".join(METHODS)
        )
    )


@doc_check(K_bar="positive", H="nonnegative", omega="finite")
def dielectric_evaluation(
    background: Background,
    K_bar: float,
    H: float,
    omega: complex,
    method: str = CLOSED_FORM_POLE,
) -> DielectricEvaluation:
    """Evaluate the dispersion function and keep the evaluation context.

    :param background: Dimensionless background spectrum.
    :type background: Background
    :param K_bar: Dimensionless wavenumber.
    :type K_bar: float
    :param H: Quantum parameter.
    :type H: float
    :param omega: Complex dimensionless frequency.
    :type omega: complex
    :param method: `closed_form_pole` or `quadrature_plemelj`.
    :type method: str
    :raises PreconditionError: If quadrature is requested for delta streams.
    :raises QuadratureError: If the quadrature does not converge.
    :return: The evaluation.
    :rtype: DielectricEvaluation
    """
    omega = complex(omega)
    epsilon = 1.0 - susceptibility(background, K_bar, H, omega, method=method)
    return DielectricEvaluation(K_bar=K_bar, omega=omega, epsilon=epsilon, method=method)


def evaluate_dielectric(
    background: Background,
    K_bar: float,
    H: float,
    omega: complex,
    method: str = CLOSED_FORM_POLE,
) -> complex:
    """Value of the dispersion function, a root of it is a normal mode."""
    return dielectric_evaluation(background, K_bar, H, omega, method=method).epsilon


def sine_operator_series(
    background: Background, p: np.ndarray, shift: float, terms: int = 20
) -> np.ndarray:
    """Taylor series of 2 sin(i shift d/dp) W, to compare with i [W(p + shift) - W(p - shift)].

    Converges when `shift` is smaller than the distance from p to the
    nearest pole of the spectrum, at least the smallest stream width.

    :param background: Smooth background spectrum W.
    :type background: Background
    :param p: Momentum grid.
    :type p: np.ndarray
    :param shift: hbar K / 2 in the units of the grid.
    :type shift: float
    :param terms: Number of odd orders kept.
    :type terms: int
    :return: The series value, purely imaginary.
    :rtype: np.ndarray
    """
    total = np.zeros_like(np.asarray(p, dtype=float), dtype=complex)
    for n in range(terms):
        order = 2 * n + 1
        derivative = sum(lorentzian_derivative(stream, p, order=order) for stream in background)
        total += 2j * shift ** order / math.factorial(order) * derivative

    return total


@doc_check(K_bar="positive", H="nonnegative", omega_init="finite")
def find_root(
    background: Background,
    K_bar: float,
    H: float,
    omega_init: complex,
    method: str = CLOSED_FORM_POLE,
    max_iterations: int = MAX_ITERATIONS,
) -> DispersionRoot:
    """Find a complex root of the dispersion function by secant iteration.

    The iteration runs on 1 / susceptibility - 1, which has the same zeros
    as eps but no poles at the stream resonances; convergence is then
    confirmed on |eps| itself.

    :param background: Dimensionless background spectrum.
    :type background: Background
    :param K_bar: Dimensionless wavenumber.
    :type K_bar: float
    :param H: Quantum parameter.
    :type H: float
    :param omega_init: Starting frequency.
    :type omega_init: complex
    :param method: `closed_form_pole` or `quadrature_plemelj`.
    :type method: str
    :param max_iterations: Iteration budget.
    :type max_iterations: int
    :raises NonConvergenceError: If the step or residual tolerance is not met.
    :return: The root with its residual.
    :rtype: DispersionRoot
    """
    omega_init = complex(omega_init)

    def _inverse(omega: complex) -> complex:
        chi = susceptibility(background, K_bar, H, omega, method=method)
        if chi == 0:
            return complex(np.inf)
        return 1.0 / chi - 1.0

    step = 1e-4 * (1.0 + abs(omega_init)) * complex(math.sqrt(0.5), math.sqrt(0.5))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        root, result = optimize.newton(
            _inverse,
            omega_init,
            x1=omega_init + step,
            tol=STEP_TOLERANCE,
            maxiter=max_iterations,
            full_output=True,
            disp=False,
        )

    root = complex(root)
    residual = (
        abs(evaluate_dielectric(background, K_bar, H, root, method=method))
        if np.isfinite(root)
        else math.inf
    )
    LOGGER.debug(
        "{!s} secant from `{!r}` reached `{!r}` after `{!s}` iterations, residual: `{:.3e}`".format(
            context_prefix(), omega_init, root, result.iterations, residual
        )
    )
    if not (result.converged and residual < RESIDUAL_TOLERANCE):
        raise NonConvergenceError(
            "{!s} no root found from `{!r}`: last iterate `{!r}`, residual `{:.3e}`".format(
                context_prefix(), omega_init, root, residual
            ),
            last_iterate=root,
            residual=residual,
            iterations=result.iterations,
        )

    return DispersionRoot(omega=root, residual=residual, iterations=result.iterations)


def broadened(background: Background, alpha: float) -> Background:
    """Give every stream the relative width alpha, in units of the reference drift."""
    return background.with_widths([alpha] * len(background))


def track_roots(
    background: Background,
    path: Sequence[Tuple[float, float, float]],
    omega_init: complex,
    method: str = CLOSED_FORM_POLE,
    jump_factor: float = 10.0,
) -> RootTrack:
    """Follow one root along a path of (K_bar, H, alpha) points.

    Each root seeds the next solve. A step whose root moves by more than
    `jump_factor` times the parameter step (scaled by 1 + |Omega|) is
    flagged as a branch jump; failed solves are flagged as unconverged and
    the last good root keeps seeding. Neither is fatal.

    :param background: Background whose stream widths are replaced by alpha along the path.
    :type background: Background
    :param path: Parameter points.
    :type path: Sequence[Tuple[float, float, float]]
    :param omega_init: Seed for the first point.
    :type omega_init: complex
    :param method: `closed_form_pole` or `quadrature_plemelj`.
    :type method: str
    :param jump_factor: Tolerated root motion per unit parameter step.
    :type jump_factor: float
    :return: The track.
    :rtype: RootTrack
    """
    track = RootTrack()
    seed = complex(omega_init)
    previous_point = None
    for point in path:
        K_bar, H, alpha = (float(value) for value in point)
        try:
            root = find_root(broadened(background, alpha), K_bar, H, seed, method=method)
            omega, residual, converged = root.omega, root.residual, True
        except NonConvergenceError as error:
            LOGGER.warning(
                "{!s} track lost convergence at `{!r}`: residual `{:.3e}`".format(
                    context_prefix(), point, error.residual
                )
            )
            omega, residual, converged = error.last_iterate, error.residual, False

        jump = False
        if converged and previous_point is not None:
            step = math.dist(previous_point, (K_bar, H, alpha))
            jump = abs(omega - seed) > jump_factor * step * (1.0 + abs(seed))
            if jump:
                LOGGER.warning(
                    "{!s} branch jump at `{!r}`: root moved from `{!r}` to `{!r}`".format(
                        context_prefix(), point, seed, omega
                    )
                )

        track.path.append((K_bar, H, alpha))
        track.roots.append(omega)
        track.residuals.append(residual)
        track.converged.append(converged)
        track.jumps.append(jump)
        if converged:
            seed = omega
            previous_point = (K_bar, H, alpha)

    LOGGER.info(
        "{!s} tracked `{!s}` points, `{!s}` unconverged, `{!s}` jumps".format(
            context_prefix(),
            len(track),
            track.converged.count(False),
            track.jumps.count(True),
        )
    )
    return track
