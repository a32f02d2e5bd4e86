from __future__ import annotations

import os
from collections.abc import Callable, Iterator
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Any

from .version import get_version

# Local .env for developer convenience; never overrides variables already set.
load_dotenv: Callable[..., object] | None
try:
    from dotenv import load_dotenv as _load_dotenv  # python-dotenv
except Exception:  # pragma: no cover
    load_dotenv = None
else:
    load_dotenv = _load_dotenv

_REPO_ROOT = Path(__file__).resolve().parents[1]
_ENV_PATH = _REPO_ROOT / ".env"
if load_dotenv is not None and _ENV_PATH.exists():
    load_dotenv(dotenv_path=_ENV_PATH, override=False)


def _env_str(name: str, default: str) -> str:
    v = os.getenv(name)
    return v if v is not None and v.strip() != "" else default


def _env_int(name: str, default: int) -> int:
    v = os.getenv(name)
    if v is None:
        return default
    try:
        return int(v.strip(), 0)
    except Exception:
        return default


def _env_int_list(name: str, default: tuple[int, ...]) -> tuple[int, ...]:
    v = os.getenv(name)
    if v is None or not v.strip():
        return default
    try:
        return tuple(int(x.strip()) for x in v.split(",") if x.strip())
    except Exception:
        return default


@dataclass(frozen=True)
class Settings:
    """Engine defaults, overridable per process via environment variables.

    Every randomized step (isomorphism sampling, cocycle search, basis-change
    batteries) draws from a generator seeded with `seed`, so two runs with the
    same settings print the same numbers.
    """

    version: str

    # ---- Reproducibility ----
    seed: int

    # ---- Isomorphism search ----
    iso_enum_max_dim: int
    iso_samples: int
    iso_budget: int

    # ---- Windows / horizons ----
    window_lo: int
    window_hi: int
    window_padding: int
    horizon: int

    # ---- Periodicity detection ----
    period_max: int
    period_max_shift: int

    # ---- Complexity-reducing cocycle search ----
    eta_samples: int
    eta_degrees: tuple[int, ...]
    eta_horizon: int

    # ---- Batch runner ----
    max_workers: int

    # ---- Logging ----
    log_level: str


def load_settings() -> Settings:
    window_lo = _env_int("TATEKIT_WINDOW_LO", -8)
    window_hi = _env_int("TATEKIT_WINDOW_HI", 8)
    if window_lo > 0 or window_hi <= 0:
        window_lo, window_hi = -8, 8

    eta_degrees = tuple(q for q in _env_int_list("TATEKIT_ETA_DEGREES", (1, 2)) if q >= 1) or (1, 2)

    return Settings(
        version=get_version(),
        seed=_env_int("TATEKIT_SEED", 0xC0FFEE),
        iso_enum_max_dim=max(0, _env_int("TATEKIT_ISO_ENUM_MAX_DIM", 8)),
        iso_samples=max(0, _env_int("TATEKIT_ISO_SAMPLES", 512)),
        iso_budget=max(0, _env_int("TATEKIT_ISO_BUDGET", 65536)),
        window_lo=window_lo,
        window_hi=window_hi,
        window_padding=max(2, _env_int("TATEKIT_WINDOW_PADDING", 2)),
        horizon=max(4, _env_int("TATEKIT_HORIZON", 12)),
        period_max=max(1, _env_int("TATEKIT_PERIOD_MAX", 4)),
        period_max_shift=max(0, _env_int("TATEKIT_PERIOD_MAX_SHIFT", 2)),
        eta_samples=max(0, _env_int("TATEKIT_ETA_SAMPLES", 16)),
        eta_degrees=eta_degrees,
        eta_horizon=max(4, _env_int("TATEKIT_ETA_HORIZON", 8)),
        max_workers=max(1, _env_int("TATEKIT_MAX_WORKERS", 1)),
        log_level=_env_str("LOG_LEVEL", "INFO").upper().strip(),
    )


settings = load_settings()

_active: ContextVar[Settings] = ContextVar("tatekit_settings", default=settings)


def current_settings() -> Settings:
    """Settings in effect for this context: `settings`, unless `overrides` is active."""

    return _active.get()


@contextmanager
def overrides(**fields: Any) -> Iterator[Settings]:
    """Run a block with some fields replaced (CLI flags). `None` leaves a field alone.

    The shared `settings` never changes; the replacement lives in a context
    variable, so worker threads see it only when started in a copy of this
    context.
    """

    known = set(Settings.__dataclass_fields__)
    unknown = sorted(set(fields) - known)
    if unknown:
        raise AttributeError(f"unknown setting {unknown[0]!r}")
    changed = {name: value for name, value in fields.items() if value is not None}
    token = _active.set(replace(_active.get(), **changed))
    try:
        yield _active.get()
    finally:
        _active.reset(token)
