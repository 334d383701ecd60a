#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""Result files: CSV or JSON-lines tables plus a metadata record per run.

Data files are deterministic. Floats are written with 17 significant
digits and every file opens with the resolved parameter set; the
timestamp only goes into `metadata.json`.
"""

from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, Iterable, List, Sequence
import csv
import json
import logging
import math

import numpy as np

from wigner_streams.checks import context_prefix

LOGGER = logging.getLogger("wigner_streams")

CSV = "csv"
JSON_LINES = "json-lines"
EXTENSIONS = {CSV: ".csv", JSON_LINES: ".jsonl"}


def format_value(value: Any) -> str:
    """Text form of one CSV cell, floats with 17 significant digits."""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return "{:.17g}".format(float(value))
    if value is None:
        return ""

    return str(value)


def _plain(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(key): _plain(item) for key, item in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [_plain(item) for item in value]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if math.isfinite(value) else None
    if isinstance(value, (complex, np.complexfloating)):
        return [_plain(value.real), _plain(value.imag)]

    return value


def to_json(value: Any) -> str:
    """Canonical JSON, sorted keys and non-finite floats as null."""
    return json.dumps(_plain(value), sort_keys=True, separators=(",", ":"))


class ResultWriter:
    """Writes the tables of one command into an output directory.

    :param directory: Output directory, created if missing.
    :type directory: str
    :param fmt: `csv` or `json-lines`.
    :type fmt: str
    :param parameters: Resolved parameter set embedded in every file.
    :type parameters: Dict[str, Any]
    """

    def __init__(self: "ResultWriter", directory: str, fmt: str, parameters: Dict[str, Any]) -> None:
        if fmt not in EXTENSIONS:
            raise KeyError("{!s} unknown output format: `{!s}`".format(context_prefix(), fmt))

        self.directory = Path(directory)
        self.format = fmt
        self.parameters = parameters
        self.written: List[Path] = []
        self.directory.mkdir(parents=True, exist_ok=True)

    def write_table(
        self: "ResultWriter", name: str, columns: Sequence[str], rows: Iterable[Sequence[Any]]
    ) -> Path:
        path = self.directory / (name + EXTENSIONS[self.format])
        with open(path, "w", encoding="utf-8", newline="") as handle:
            if self.format == CSV:
                handle.write("# parameters: {!s}\n".format(to_json(self.parameters)))
                writer = csv.writer(handle, lineterminator="\n")
                writer.writerow(columns)
                for row in rows:
                    writer.writerow([format_value(value) for value in row])
            else:
                handle.write(to_json({"parameters": self.parameters}) + "\n")
                for row in rows:
                    handle.write(to_json(dict(zip(columns, row))) + "\n")

        LOGGER.info("{!s} wrote `{!s}`".format(context_prefix(), path))
        self.written.append(path)
        return path

    def write_metadata(self: "ResultWriter", extra: Dict[str, Any]) -> Path:
        path = self.directory / "metadata.json"
        record = {
            "timestamp": datetime.now(timezone.utc).isoformat(),
            "parameters": self.parameters,
            "files": [written.name for written in self.written],
        }
        record.update(extra)
        with open(path, "w", encoding="utf-8") as handle:
            json.dump(_plain(record), handle, sort_keys=True, indent=2)
            handle.write("\n")

        LOGGER.info("{!s} wrote `{!s}`".format(context_prefix(), path))
        return path


def read_csv_table(path: str) -> List[Dict[str, str]]:
    """Read back a table written by `ResultWriter`, skipping the parameter line."""
    with open(path, "r", encoding="utf-8", newline="") as handle:
        lines = [line for line in handle if not line.startswith("#")]
    return list(csv.DictReader(lines))
