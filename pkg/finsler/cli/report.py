"""
Machine readable output: versioned JSON reports and CSV trajectories.
"""
import json
import logging
import sys

import numpy as np

from finsler.objects import plain

logger = logging.getLogger(__name__)

CSV_FORMAT = "%.17g"


class Report(object):
    """
    The JSON document every command prints.

    :ivar command: "verify", "geodesic" or "maxwell".
    :ivar version: The tool version.
    :ivar schema_version: The report schema version.
    :ivar config: The configuration echo.
    :ivar checks: Check objects, the report fails iff one of them fails.
    :ivar results: Command specific payload.
    :ivar wall_time: Seconds, the only field that differs between identical runs.
    """

    def __init__(self, **kwargs):
        self.command = kwargs.get("command", "")
        self.version = kwargs.get("version", "")
        self.schema_version = kwargs.get("schema_version", 1)
        self.config = kwargs.get("config", {})
        self.checks = list(kwargs.get("checks", []))
        self.results = kwargs.get("results", {})
        self.wall_time = float(kwargs.get("wall_time", 0.0))
        self.failed = bool(kwargs.get("failed", False))

    @property
    def status(self):
        return "fail" if self.failed or any(c.failed for c in self.checks) else "pass"

    @property
    def exit_code(self):
        return 1 if self.status == "fail" else 0

    def to_dict(self):
        return plain({
            "command": self.command,
            "version": self.version,
            "schema_version": self.schema_version,
            "config": self.config,
            "status": self.status,
            "checks": [c.to_dict() for c in sorted(self.checks, key=lambda c: c.name)],
            "results": self.results,
            "wall_time": self.wall_time,
        })


def dumps(payload):
    """
    Serialise to diff-stable JSON: sorted keys, shortest round-trip floats, trailing newline.
    """
    return json.dumps(plain(payload), indent=2, sort_keys=True) + "\n"


def write_json(payload, path=None, stream=None):
    """
    Write a payload to `path`, or to `stream` (default stdout) when no path is given.
    """
    text = dumps(payload)
    if path:
        with open(path, "w", newline="\n") as f:
            f.write(text)
        logger.info("Wrote report to %s", path)
    else:
        (stream or sys.stdout).write(text)


def write_csv(path, header, rows):
    """
    Write rows of floats with a header line, 17 significant digits, '\\n' line endings.
    """
    np.savetxt(path, np.asarray(rows, dtype=float), fmt=CSV_FORMAT, delimiter=",", header=",".join(header),
               comments="", newline="\n")
    logger.info("Wrote %d rows to %s", len(rows), path)
