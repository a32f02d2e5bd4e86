from __future__ import annotations

import json
import logging
import os
import time
from typing import Any

from .version import get_version

LOGGER_NAME = "tatekit"


def configure_logging(level: str | None = None) -> None:
    """Configure the `tatekit` logger.

    Records go to stderr so tables and reports on stdout stay machine-readable.
    Structured events (see `log_event`) are JSON lines; ordinary module logs
    keep their %-style `key=value` messages.
    """

    level_name = (level or os.getenv("LOG_LEVEL", "INFO")).upper().strip()
    resolved = getattr(logging, level_name, logging.INFO)

    logger = logging.getLogger(LOGGER_NAME)
    logger.setLevel(resolved)

    handler = logging.StreamHandler()
    handler.setFormatter(logging.Formatter("%(message)s"))

    # Replace handlers so repeated configuration doesn't duplicate logs.
    logger.handlers.clear()
    logger.addHandler(handler)
    logger.propagate = False


def log_event(event: str, *, severity: str = "INFO", **fields: Any) -> dict[str, Any]:
    """Emit one JSON line for a command or check outcome and return the payload."""

    payload: dict[str, Any] = {
        "severity": severity,
        "message": event,
        "service": "tatekit",
        "version": get_version(),
    }
    for key, value in fields.items():
        if isinstance(value, float):
            value = round(value, 2)
        payload[key] = value

    logger = logging.getLogger(LOGGER_NAME)
    level = getattr(logging, severity.upper(), logging.INFO)
    logger.log(level, json.dumps(payload, ensure_ascii=False, sort_keys=False, default=str))
    return payload


class Timer:
    """Tiny helper for timing blocks."""

    def __init__(self) -> None:
        self._t0 = time.perf_counter()

    def ms(self) -> float:
        return (time.perf_counter() - self._t0) * 1000.0
