#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""Command-line entry point: `wigner-streams <command> --config <file>`."""

from typing import Any, Dict, List, Optional, Sequence
import argparse
import logging
import math
import sys

import numpy as np

from wigner_streams.analytic import (
    band_edges,
    one_stream_lorentzian,
    two_stream_cold_quartic,
    two_stream_roots,
)
from wigner_streams.checks import context_prefix
from wigner_streams.config import COMMANDS, FORMATS, RunSpec, load_config
from wigner_streams.core import Background
from wigner_streams.exceptions import (
    ConfigError,
    NonConvergenceError,
    WignerStreamsError,
)
from wigner_streams.numeric import (
    CLOSED_FORM_POLE,
    METHODS,
    QUADRATURE_PLEMELJ,
    find_root,
    track_roots,
)
from wigner_streams.output import ResultWriter
from wigner_streams.simulation import Diagnostics, run
from wigner_streams.stability import band_report, build_map, covering_k_max
from wigner_streams.verify import CheckResult, run_checks

LOGGER = logging.getLogger("wigner_streams")

LOG_FORMAT = "%(levelname)s :: %(asctime)s :: %(message)s"

DISPERSION_COLUMNS = (
    "branch",
    "method",
    "omega_re",
    "omega_im",
    "omega_sq_re",
    "omega_sq_im",
    "numeric_re",
    "numeric_im",
    "difference",
    "converged",
)


def _analytic_branches(params, background: Background) -> List[complex]:
    if params.background == "two_stream":
        return list(two_stream_roots(params.K_bar, params.H, params.alpha))
    if params.background == "one_stream":
        return [
            one_stream_lorentzian(params.K_bar, params.H, params.alpha, branch_sign=sign)
            for sign in (1, -1)
        ]
    if params.omega_init is None:
        raise ConfigError(
            "{!s} a custom background needs `omega_init`".format(context_prefix()),
            key="omega_init",
        )
    return []


def _dispersion(params, writer: ResultWriter) -> Dict[str, Any]:
    background = params.build_background(params.alpha)
    branches = _analytic_branches(params, background)
    methods = METHODS if params.method == "both" else (params.method,)
    if QUADRATURE_PLEMELJ in methods and not background.is_smooth:
        LOGGER.warning(
            "{!s} quadrature needs Lorentzian streams, cross-checking with the closed form only".format(
                context_prefix()
            )
        )
        methods = (CLOSED_FORM_POLE,)

    seeds = list(branches)
    if params.omega_init is not None:
        seeds.append(complex(*params.omega_init))

    rows, worst = [], 0.0
    for index, seed in enumerate(seeds):
        analytic = index < len(branches)
        for method in methods:
            start = seed + 1e-6 * (1.0 + abs(seed)) * complex(1.0, 1.0) if analytic else seed
            try:
                root = find_root(background, params.K_bar, params.H, start, method=method)
                found, converged = root.omega, True
            except NonConvergenceError as error:
                found, converged = error.last_iterate, False

            difference = abs(found - seed) if analytic else math.nan
            if analytic and converged:
                worst = max(worst, difference)
            rows.append(
                (
                    index if analytic else "numeric",
                    method,
                    seed.real if analytic else math.nan,
                    seed.imag if analytic else math.nan,
                    (seed ** 2).real if analytic else math.nan,
                    (seed ** 2).imag if analytic else math.nan,
                    found.real,
                    found.imag,
                    difference,
                    converged,
                )
            )
            LOGGER.info(
                "{!s} branch `{!s}` ({!s}): analytic `{!r}`, numeric `{!r}`".format(
                    context_prefix(), rows[-1][0], method, seed if analytic else None, found
                )
            )

    writer.write_table("dispersion", DISPERSION_COLUMNS, rows)
    extra = {"max_difference": worst}
    if params.background == "two_stream" and params.alpha == 0:
        extra["omega_sq_cold"] = list(two_stream_cold_quartic(params.K_bar, params.H))
    return extra


def _map(params, writer: ResultWriter) -> Dict[str, Any]:
    K_axis = np.linspace(params.K_max / params.K_points, params.K_max, params.K_points)
    H_axis = np.linspace(0.0, params.H_max, params.H_points)
    stability = build_map(K_axis, H_axis, params.alpha)
    writer.write_table(
        "map",
        ("K_bar", "H", "alpha", "class", "growth"),
        ((K_bar, H, params.alpha, label, growth) for K_bar, H, label, growth in stability.cells()),
    )
    writer.write_table(
        "boundaries",
        ("curve_id", "K_bar", "H"),
        (
            (curve_id, K_bar, H)
            for curve_id, curve in enumerate(stability.boundaries)
            for K_bar, H in curve
        ),
    )
    return {
        "unstable_cells": int(stability.unstable.sum()),
        "curves": len(stability.boundaries),
    }


def _bands(params, writer: ResultWriter) -> Dict[str, Any]:
    K_max = params.K_max if params.K_max is not None else covering_k_max(params.H)
    bands = band_report(params.H, params.alpha, (params.K_min, K_max), samples=params.samples)
    writer.write_table(
        "bands",
        ("band", "K_low", "K_high"),
        ((index, low, high) for index, (low, high) in enumerate(bands)),
    )
    extra = {"bands": bands}
    if params.alpha == 0 and params.H > 0:
        extra["cold_band_edges"] = band_edges(params.H).intervals()
    return extra


def _simulate(params, writer: ResultWriter) -> Dict[str, Any]:
    result = run(params.sim_config())
    writer.write_table(
        "diagnostics",
        ("run",) + Diagnostics.COLUMNS,
        (
            (index,) + tuple(row)
            for index, diagnostics in enumerate(result.diagnostics)
            for row in diagnostics.rows()
        ),
    )
    return result.metadata()


def _sweep(params, writer: ResultWriter) -> Dict[str, Any]:
    background = params.build_background()
    path = params.path()
    if params.omega_init is not None:
        seed = complex(*params.omega_init)
    elif params.background == "two_stream":
        seed = two_stream_roots(*path[0])[2]
    elif params.background == "one_stream":
        seed = one_stream_lorentzian(*path[0])
    else:
        raise ConfigError(
            "{!s} a custom background needs `omega_init`".format(context_prefix()),
            key="omega_init",
        )

    track = track_roots(background, path, seed, method=params.method)
    writer.write_table(
        "track",
        ("K_bar", "H", "alpha", "omega_re", "omega_im", "residual", "converged", "jump"),
        (
            point + (root.real, root.imag, residual, converged, jump)
            for point, root, residual, converged, jump in zip(
                track.path, track.roots, track.residuals, track.converged, track.jumps
            )
        ),
    )
    return {
        "unconverged": track.converged.count(False),
        "jumps": track.jumps.count(True),
    }


def _verify(params, writer: ResultWriter) -> Dict[str, Any]:
    results = run_checks(params.checks, map_points=params.map_points)
    writer.write_table("verify", CheckResult.COLUMNS, (result.row() for result in results))
    return {
        "passed": all(result.passed for result in results),
        "failed": [result.name for result in results if not result.passed],
    }


HANDLERS = {
    "dispersion": _dispersion,
    "map": _map,
    "bands": _bands,
    "simulate": _simulate,
    "sweep": _sweep,
    "verify": _verify,
}


def run_command(run_spec: RunSpec, out: Optional[str] = None, fmt: Optional[str] = None) -> int:
    """Dispatch a validated run specification and write its result files.

    :param run_spec: The run specification.
    :type run_spec: RunSpec
    :param out: Output directory, overrides the config.
    :type out: Optional[str]
    :param fmt: Output format, overrides the config.
    :type fmt: Optional[str]
    :return: Exit status, nonzero when a check or computation failed.
    :rtype: int
    """
    record = run_spec.record()
    directory = out if out is not None else run_spec.output.path
    fmt = fmt if fmt is not None else run_spec.output.format
    record["output"] = {"path": directory, "format": fmt}

    writer = ResultWriter(directory, fmt, record)
    try:
        extra = HANDLERS[run_spec.command](run_spec.params, writer)
    except WignerStreamsError as error:
        LOGGER.error(
            "{!s} command `{!s}` failed: {!s}".format(context_prefix(), run_spec.command, error)
        )
        writer.write_metadata({"status": "failed", "error": str(error)})
        return 1

    status = 0 if extra.get("passed", True) else 1
    writer.write_metadata(dict(extra, status="ok" if status == 0 else "failed"))
    return status


def parse_arguments(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(
        prog="wigner-streams",
        description="Dispersion, stability and kinetic simulation of quantum multistream plasmas.",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--config", required=True, help="TOML run configuration")
    parser.add_argument("--out", default=None, help="output directory, overrides the config")
    parser.add_argument("--format", choices=FORMATS, default=None, help="output format")
    parser.add_argument(
        "--log-level",
        default="INFO",
        choices=("DEBUG", "INFO", "WARNING", "ERROR"),
        help="logging level",
    )
    return parser.parse_args(argv)


def main(argv: Optional[Sequence[str]] = None) -> int:
    arguments = parse_arguments(argv)
    logging.basicConfig(format=LOG_FORMAT, level=arguments.log_level)

    try:
        run_spec = load_config(arguments.config)
    except (ConfigError, OSError) as error:
        LOGGER.error(
            "{!s} could not load `{!s}`: {!s}".format(
                context_prefix(), arguments.config, error
            )
        )
        return 2

    if run_spec.command != arguments.command:
        LOGGER.error(
            "{!s} command `{!s}` does not match the config command `{!s}`".format(
                context_prefix(), arguments.command, run_spec.command
            )
        )
        return 2

    return run_command(run_spec, out=arguments.out, fmt=arguments.format)


if __name__ == "__main__":
    sys.exit(main())
