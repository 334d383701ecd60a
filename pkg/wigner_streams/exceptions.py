#!/usr/bin/env python3
# -*- coding: utf-8 -*-

from typing import Any, Optional, Sequence


class WignerStreamsError(Exception):
    """Base class for every error raised by `wigner_streams`."""


class PreconditionError(WignerStreamsError, ValueError):
    """A parameter violated the precondition of the operation it was passed to."""

    def __init__(
        self: "PreconditionError",
        message: str,
        parameter: Optional[str] = None,
        value: Any = None,
        rule: Optional[str] = None,
    ) -> None:
        super().__init__(message)
        self.parameter = parameter
        self.value = value
        self.rule = rule


class NonConvergenceError(WignerStreamsError, RuntimeError):
    """An iteration stopped before reaching its tolerance.

    The last iterate and its residual are kept so callers can decide
    whether the value is still usable.
    """

    def __init__(
        self: "NonConvergenceError",
        message: str,
        last_iterate: complex,
        residual: float,
        iterations: int,
    ) -> None:
        super().__init__(message)
        self.last_iterate = last_iterate
        self.residual = residual
        self.iterations = iterations


class QuadratureError(WignerStreamsError, RuntimeError):
    def __init__(
        self: "QuadratureError", message: str, diagnostic: str, interval: tuple
    ) -> None:
        super().__init__(message)
        self.diagnostic = diagnostic
        self.interval = interval


class FitError(WignerStreamsError, RuntimeError):
    """No exponential regime could be located in a diagnostic series."""

    def __init__(
        self: "FitError",
        message: str,
        times: Sequence[float],
        amplitudes: Sequence[float],
    ) -> None:
        super().__init__(message)
        self.times = times
        self.amplitudes = amplitudes


class ConfigError(WignerStreamsError, ValueError):
    def __init__(
        self: "ConfigError",
        message: str,
        key: Optional[str] = None,
        line: Optional[int] = None,
    ) -> None:
        super().__init__(message)
        self.key = key
        self.line = line
