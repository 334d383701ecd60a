#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""TOML run configuration, validated strictly with pydantic.

A document names its `command` and holds the parameters either in a
table named after the command or flat at the top level:

    command = "dispersion"

    [dispersion]
    K_bar = 0.5
    H = 0.0
    alpha = 0.0

    [output]
    path = "results"
    format = "csv"
"""

from dataclasses import dataclass
from typing import Any, Dict, List, Literal, NoReturn, Optional, Tuple, Union
import logging
import re
import sys

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from wigner_streams.checks import context_prefix
from wigner_streams.core import Background, StreamSpectrum, one_stream, symmetric_two_stream
from wigner_streams.exceptions import ConfigError, PreconditionError
from wigner_streams.numeric import CLOSED_FORM_POLE
from wigner_streams.simulation import SimConfig
from wigner_streams.verify import CHECKS

LOGGER = logging.getLogger("wigner_streams")

COMMANDS = ("dispersion", "map", "bands", "simulate", "sweep", "verify")
FORMATS = ("csv", "json-lines")

_LINE = re.compile(r"line (\d+)")


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class StreamModel(_Strict):
    density: float = Field(gt=0)
    drift_momentum: float
    width: float = Field(default=0.0, ge=0)


class BackgroundModel(_Strict):
    """Preset background (`two_stream`, `one_stream`) or an explicit stream list."""

    background: Literal["two_stream", "one_stream", "custom"] = "two_stream"
    streams: Optional[List[StreamModel]] = None

    def build_background(self: "BackgroundModel", alpha: float = 0.0) -> Background:
        if self.background == "custom":
            if not self.streams:
                raise ConfigError(
                    "{!s} a custom background needs a `streams` list".format(context_prefix()),
                    key="streams",
                )
            return Background(
                tuple(
                    StreamSpectrum(
                        density=stream.density,
                        drift_momentum=stream.drift_momentum,
                        width=stream.width,
                    )
                    for stream in self.streams
                )
            )
        if self.streams is not None:
            raise ConfigError(
                "{!s} `streams` is only read for a custom background".format(context_prefix()),
                key="streams",
            )
        if self.background == "one_stream":
            return one_stream(alpha)
        return symmetric_two_stream(alpha)


class DispersionParams(BackgroundModel):
    K_bar: float = Field(gt=0)
    H: float = Field(default=0.0, ge=0)
    alpha: float = Field(default=0.0, ge=0)
    method: Literal["closed_form_pole", "quadrature_plemelj", "both"] = "both"
    omega_init: Optional[Tuple[float, float]] = None


class MapParams(_Strict):
    alpha: float = Field(default=0.0, ge=0)
    K_max: float = Field(default=4.0, gt=0)
    H_max: float = Field(default=4.0, gt=0)
    K_points: int = Field(default=400, ge=2)
    H_points: int = Field(default=400, ge=2)


class BandsParams(_Strict):
    H: float = Field(ge=0)
    alpha: float = Field(default=0.0, ge=0)
    K_min: float = Field(default=0.0, ge=0)
    K_max: Optional[float] = Field(default=None, gt=0)
    samples: int = Field(default=4000, ge=2)


class SimulateParams(BackgroundModel):
    K_bar: float = Field(gt=0)
    H: float = Field(default=0.0, ge=0)
    alpha: float = Field(default=0.0, ge=0)
    mode: int = Field(default=1, ge=1)
    amplitude: float = Field(default=1e-6, ge=0, le=1e-3)
    n_x: int = Field(default=128, ge=32)
    n_p: int = Field(default=256, ge=32)
    p_max: float = Field(default=6.0, gt=0)
    dt: float = Field(default=0.05, gt=0)
    t_end: float = Field(default=30.0, gt=0)
    sample_every: int = Field(default=1, ge=1)
    widen_delta: bool = True
    linear_cap: float = Field(default=10.0, gt=0)
    fit_tolerance: float = Field(default=0.05, gt=0)

    def sim_config(self: "SimulateParams") -> SimConfig:
        return SimConfig(
            background=self.build_background(self.alpha),
            K_bar=self.K_bar,
            H=self.H,
            mode=self.mode,
            amplitude=self.amplitude,
            n_x=self.n_x,
            n_p=self.n_p,
            p_max=self.p_max,
            dt=self.dt,
            t_end=self.t_end,
            sample_every=self.sample_every,
            widen_delta=self.widen_delta,
            linear_cap=self.linear_cap,
            fit_tolerance=self.fit_tolerance,
        )


class SweepParams(BackgroundModel):
    """Straight path in (K_bar, H, alpha) from `start` to `stop`."""

    start: Tuple[float, float, float]
    stop: Tuple[float, float, float]
    points: int = Field(default=50, ge=2)
    omega_init: Optional[Tuple[float, float]] = None
    method: Literal["closed_form_pole", "quadrature_plemelj"] = CLOSED_FORM_POLE

    def path(self: "SweepParams") -> List[Tuple[float, float, float]]:
        steps = self.points - 1
        return [
            tuple(a + (b - a) * index / steps for a, b in zip(self.start, self.stop))
            for index in range(self.points)
        ]


class VerifyParams(_Strict):
    checks: Optional[List[str]] = None
    map_points: int = Field(default=400, ge=10)

    @field_validator("checks")
    @classmethod
    def _known_checks(cls, checks: Optional[List[str]]) -> Optional[List[str]]:
        for name in checks or ():
            if name not in CHECKS:
                raise ValueError("unknown check `{!s}`".format(name))
        return checks


class OutputParams(_Strict):
    path: str = "results"
    format: Literal["csv", "json-lines"] = "csv"


PARAMETERS = {
    "dispersion": DispersionParams,
    "map": MapParams,
    "bands": BandsParams,
    "simulate": SimulateParams,
    "sweep": SweepParams,
    "verify": VerifyParams,
}

Params = Union[
    DispersionParams, MapParams, BandsParams, SimulateParams, SweepParams, VerifyParams
]


@dataclass(frozen=True)
class RunSpec:
    command: str
    params: Params
    output: OutputParams

    def record(self: "RunSpec") -> Dict[str, Any]:
        """The fully resolved parameter set, defaults included."""
        return {
            "command": self.command,
            "parameters": self.params.model_dump(mode="json"),
            "output": self.output.model_dump(mode="json"),
        }


def _raise_validation(error: ValidationError, table: Optional[str] = None) -> NoReturn:
    detail = error.errors()[0]
    key = ".".join(str(part) for part in detail["loc"])
    if table == "output":
        key = "output." + key
    if detail["type"] == "extra_forbidden":
        message = "unknown key: `{!s}`".format(key)
    else:
        message = "invalid value for `{!s}`: {!s}, was actually `{!r}`".format(
            key, detail["msg"], detail.get("input")
        )

    raise ConfigError("{!s} {!s}".format(context_prefix(), message), key=key) from error


def parse_config(text: str) -> RunSpec:
    """Parse and validate a TOML run configuration.

    :param text: The TOML document.
    :type text: str
    :raises ConfigError: On a syntax error (with its line), an unknown key
        or a value that fails the preconditions of the target module.
    :return: The validated run specification.
    :rtype: RunSpec
    """
    try:
        document = tomllib.loads(text)
    except tomllib.TOMLDecodeError as error:
        match = _LINE.search(str(error))
        raise ConfigError(
            "{!s} syntax error: {!s}".format(context_prefix(), error),
            line=int(match.group(1)) if match else None,
        ) from error

    command = document.pop("command", None)
    if command not in COMMANDS:
        raise ConfigError(
            "{!s} `command` must be one of `{!s}`: was actually `{!r}`".format(
                context_prefix(), ", ".join(COMMANDS), command
            ),
            key="command",
        )

    output = document.pop("output", {})
    if command in document:
        table = document.pop(command)
        if document:
            key = sorted(document)[0]
            raise ConfigError(
                "{!s} unknown key: `{!s}`".format(context_prefix(), key), key=key
            )
    else:
        table = document

    if not isinstance(table, dict) or not isinstance(output, dict):
        raise ConfigError(
            "{!s} `{!s}` and `output` must be tables".format(context_prefix(), command),
            key=command,
        )

    try:
        params = PARAMETERS[command].model_validate(table)
    except ValidationError as error:
        _raise_validation(error)
    try:
        output_params = OutputParams.model_validate(output)
    except ValidationError as error:
        _raise_validation(error, "output")

    try:
        if command == "simulate":
            params.sim_config()
        elif isinstance(params, BackgroundModel):
            params.build_background(getattr(params, "alpha", 0.0)).check_neutral()
    except PreconditionError as error:
        raise ConfigError(
            "{!s} precondition failed for `{!s}`: {!s}".format(
                context_prefix(), error.parameter, error
            ),
            key=error.parameter,
        ) from error

    LOGGER.debug(
        "{!s} parsed `{!s}` configuration: `{!r}`".format(context_prefix(), command, params)
    )
    return RunSpec(command=command, params=params, output=output_params)


def load_config(path: str) -> RunSpec:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_config(handle.read())
