#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""Linear dispersion, stability maps and Wigner-Poisson simulation of quantum multistream plasmas."""

from wigner_streams.checks import doc_check
from wigner_streams.core import (
    Background,
    DimensionlessParams,
    PhysicalParams,
    StreamSpectrum,
    from_dimensionless,
    one_stream,
    symmetric_two_stream,
    to_dimensionless,
)
from wigner_streams.exceptions import (
    ConfigError,
    FitError,
    NonConvergenceError,
    PreconditionError,
    QuadratureError,
    WignerStreamsError,
)

__version__ = "0.1.0"

__all__ = [
    "Background",
    "ConfigError",
    "DimensionlessParams",
    "FitError",
    "NonConvergenceError",
    "PhysicalParams",
    "PreconditionError",
    "QuadratureError",
    "StreamSpectrum",
    "WignerStreamsError",
    "doc_check",
    "from_dimensionless",
    "one_stream",
    "symmetric_two_stream",
    "to_dimensionless",
]
