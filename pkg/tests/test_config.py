from __future__ import annotations

import contextvars
import json
import logging
from concurrent.futures import ThreadPoolExecutor

import pytest

from tatekit.config import current_settings, load_settings, overrides, settings
from tatekit.errors import BudgetExhaustedError, FileFormatError, NotGorensteinError, exit_code_for
from tatekit.observability import LOGGER_NAME, configure_logging, log_event


def test_settings_defaults(monkeypatch: pytest.MonkeyPatch) -> None:
    for name in ("TATEKIT_SEED", "TATEKIT_WINDOW_LO", "TATEKIT_WINDOW_HI", "TATEKIT_ETA_DEGREES"):
        monkeypatch.delenv(name, raising=False)
    s = load_settings()
    assert s.seed == 0xC0FFEE
    assert (s.window_lo, s.window_hi) == (-8, 8)
    assert s.eta_degrees == (1, 2)
    assert s.horizon >= 4


def test_settings_from_environment(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setenv("TATEKIT_SEED", "0x10")
    monkeypatch.setenv("TATEKIT_HORIZON", "2")
    monkeypatch.setenv("TATEKIT_ETA_DEGREES", "2,3")
    monkeypatch.setenv("TATEKIT_MAX_WORKERS", "not-a-number")
    s = load_settings()
    assert s.seed == 16
    assert s.horizon == 4
    assert s.eta_degrees == (2, 3)
    assert s.max_workers == 1


def test_window_that_misses_degree_zero_falls_back(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setenv("TATEKIT_WINDOW_LO", "2")
    monkeypatch.setenv("TATEKIT_WINDOW_HI", "5")
    s = load_settings()
    assert (s.window_lo, s.window_hi) == (-8, 8)


def test_overrides_replace_fields_for_one_block() -> None:
    before = current_settings()
    with overrides(seed=7, horizon=None) as active:
        assert active.seed == 7
        assert current_settings() is active
        assert active.horizon == before.horizon
        assert settings.seed == before.seed
    assert current_settings() is before
    with pytest.raises(AttributeError):
        with overrides(colour="blue"):
            pass


def test_overrides_reach_threads_started_in_a_copied_context() -> None:
    with overrides(seed=11):
        ctx = contextvars.copy_context()
    with ThreadPoolExecutor(max_workers=1) as pool:
        assert pool.submit(ctx.run, lambda: current_settings().seed).result() == 11
        assert pool.submit(lambda: current_settings().seed).result() == settings.seed


def test_log_event_emits_one_json_line(caplog: pytest.LogCaptureFixture) -> None:
    configure_logging("DEBUG")
    logger = logging.getLogger(LOGGER_NAME)
    logger.propagate = True
    try:
        with caplog.at_level(logging.INFO, logger=LOGGER_NAME):
            payload = log_event("check.refuted", severity="WARNING", check="symmetry/f2-x2/k,k", elapsed_ms=1.23456)
        assert payload["elapsed_ms"] == 1.23
        record = caplog.records[-1]
        assert record.levelno == logging.WARNING
        assert json.loads(record.getMessage())["check"] == "symmetry/f2-x2/k,k"
    finally:
        logger.propagate = False


def test_exit_codes() -> None:
    assert exit_code_for(FileFormatError("x")) == 2
    assert exit_code_for(NotGorensteinError("x")) == 2
    assert exit_code_for(BudgetExhaustedError("x")) == 3
    assert exit_code_for(RuntimeError("x")) == 4
    assert FileFormatError("x").to_dict() == {"code": "bad-file", "message": "x"}
