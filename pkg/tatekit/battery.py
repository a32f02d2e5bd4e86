"""Run every check over the built-in corpus (or a single algebra)."""

from __future__ import annotations

import contextvars
import logging
from collections.abc import Callable, Iterable, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Literal

from .algebra import Algebra, Ideal, is_gorenstein, quotient_algebra
from .config import current_settings
from .corpus import CorpusModule, corpus_family
from .errors import InputError
from .homalg import free_rank
from .observability import Timer, log_event
from .theorems import (
    REFUTED,
    CheckReport,
    Window,
    check_ar_duality,
    check_balanced_l5,
    check_betti_bass_c1,
    check_dagger_duality,
    check_dagger_linkage,
    check_depth_formula,
    check_duality_l2,
    check_even_linkage_t2,
    check_free_vanishing,
    check_full_symmetry,
    check_gorenstein_ideal_c6,
    check_gorenstein_pair_c2,
    check_ideal_linkage,
    check_linked_ext_t6,
    check_linked_vanishing,
    check_negative_control,
    check_pr1,
    check_quotient_ext_tor,
    check_reducible_complexity_l4,
    check_sup_inf_t3,
    check_symmetry,
)

logger = logging.getLogger(__name__)

Shape = Literal[
    "pair", "stable-pair", "single", "stable-single", "gorenstein-ideal", "ideal-pair", "module-ideal", "ideal", "negative"
]


@dataclass(frozen=True)
class CheckSpec:
    name: str
    function: str
    shape: Shape
    windowed: bool = True


CHECKS: tuple[CheckSpec, ...] = (
    CheckSpec("symmetry", "check_symmetry", "pair"),
    CheckSpec("full-symmetry", "check_full_symmetry", "pair"),
    CheckSpec("matlis-duality", "check_duality_l2", "pair"),
    CheckSpec("tor-balance", "check_balanced_l5", "pair"),
    CheckSpec("ar-duality", "check_ar_duality", "pair"),
    CheckSpec("betti-bass", "check_betti_bass_c1", "single"),
    CheckSpec("gorenstein-quotient-betti-bass", "check_gorenstein_ideal_c6", "gorenstein-ideal"),
    CheckSpec("reducible-complexity", "check_reducible_complexity_l4", "pair"),
    CheckSpec("sup-inf", "check_sup_inf_t3", "pair", windowed=False),
    CheckSpec("dagger-ext-tor", "check_pr1", "pair"),
    CheckSpec("gorenstein-pair", "check_gorenstein_pair_c2", "ideal-pair"),
    CheckSpec("linked-ext", "check_linked_ext_t6", "stable-pair"),
    CheckSpec("even-linkage", "check_even_linkage_t2", "stable-single"),
    CheckSpec("free-vanishing", "check_free_vanishing", "single"),
    CheckSpec("linked-vanishing", "check_linked_vanishing", "pair"),
    CheckSpec("dagger-linkage", "check_dagger_linkage", "pair"),
    CheckSpec("dagger-duality", "check_dagger_duality", "single", windowed=False),
    CheckSpec("quotient-ext-tor", "check_quotient_ext_tor", "module-ideal"),
    CheckSpec("depth-formula", "check_depth_formula", "pair"),
    CheckSpec("ideal-linkage", "check_ideal_linkage", "ideal", windowed=False),
    CheckSpec("negative-control", "check_negative_control", "negative"),
)

_FUNCTIONS: dict[str, Callable[..., CheckReport]] = {
    "check_symmetry": check_symmetry,
    "check_full_symmetry": check_full_symmetry,
    "check_duality_l2": check_duality_l2,
    "check_balanced_l5": check_balanced_l5,
    "check_ar_duality": check_ar_duality,
    "check_betti_bass_c1": check_betti_bass_c1,
    "check_gorenstein_ideal_c6": check_gorenstein_ideal_c6,
    "check_reducible_complexity_l4": check_reducible_complexity_l4,
    "check_sup_inf_t3": check_sup_inf_t3,
    "check_pr1": check_pr1,
    "check_gorenstein_pair_c2": check_gorenstein_pair_c2,
    "check_linked_ext_t6": check_linked_ext_t6,
    "check_even_linkage_t2": check_even_linkage_t2,
    "check_free_vanishing": check_free_vanishing,
    "check_linked_vanishing": check_linked_vanishing,
    "check_dagger_linkage": check_dagger_linkage,
    "check_dagger_duality": check_dagger_duality,
    "check_quotient_ext_tor": check_quotient_ext_tor,
    "check_depth_formula": check_depth_formula,
    "check_ideal_linkage": check_ideal_linkage,
    "check_negative_control": check_negative_control,
}


def resolve_checks(names: Sequence[str] | None) -> list[CheckSpec]:
    """Accept check ids ("tor-balance") or function names ("check_balanced_l5"); None or "all" means every check."""

    if names is None or list(names) == ["all"]:
        return list(CHECKS)
    by_name = {c.name: c for c in CHECKS} | {c.function: c for c in CHECKS}
    out = []
    for n in names:
        spec = by_name.get(n)
        if spec is None:
            raise InputError(f"unknown check {n!r}; known: {', '.join(c.name for c in CHECKS)}")
        out.append(spec)
    return out


Task = Callable[[], CheckReport]


def _gorenstein_ideals(family: Sequence[CorpusModule]) -> list[Ideal]:
    out = []
    for entry in family:
        if entry.ideal.dim == 0:
            continue
        b, _ = quotient_algebra(entry.ideal.algebra, entry.ideal)
        if is_gorenstein(b):
            out.append(entry.ideal)
    return out


def plan(
    a: Algebra,
    checks: Sequence[CheckSpec],
    window: Window,
    horizon: int,
    family: Sequence[CorpusModule] | None = None,
) -> list[Task]:
    """Expand each check over the module family of `a`."""

    if not is_gorenstein(a):
        return [lambda: check_negative_control(a, window)] if any(c.shape == "negative" for c in checks) else []

    family = corpus_family(a) if family is None else family
    modules = [e.module for e in family]
    stable = [m for m in modules if free_rank(m) == 0]
    gideals = _gorenstein_ideals(family)
    proper = [e.ideal for e in family if e.cyclic_quotient]

    tasks: list[Task] = []
    for spec in checks:
        fn = _FUNCTIONS[spec.function]
        extra: tuple[Any, ...] = (window,) if spec.windowed else ()
        if spec.name == "sup-inf":
            extra = (horizon,)
        if spec.shape == "pair":
            tasks += [_bind(fn, m, n, *extra) for m in modules for n in modules]
        elif spec.shape == "stable-pair":
            tasks += [_bind(fn, m, n, *extra) for m in stable for n in stable]
        elif spec.shape == "single":
            tasks += [_bind(fn, m, *extra) for m in modules]
        elif spec.shape == "stable-single":
            tasks += [_bind(fn, m, *extra) for m in stable]
        elif spec.shape == "gorenstein-ideal":
            tasks += [_bind(fn, i, *extra) for i in gideals]
        elif spec.shape == "ideal-pair":
            tasks += [_bind(fn, i, j, *extra) for i in gideals for j in gideals]
        elif spec.shape == "module-ideal":
            tasks += [_bind(fn, m, i, *extra) for m in modules for i in gideals]
        elif spec.shape == "ideal":
            tasks += [_bind(fn, i, *extra) for i in proper]
    return tasks


def _bind(fn: Callable[..., CheckReport], *args: Any) -> Task:
    return lambda: fn(*args)


@dataclass(frozen=True)
class BatteryResult:
    reports: tuple[CheckReport, ...]
    elapsed_ms: float

    @property
    def refuted(self) -> list[CheckReport]:
        return [r for r in self.reports if r.verdict == REFUTED]

    @property
    def exit_code(self) -> int:
        return 1 if self.refuted else 0

    def counts(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for r in self.reports:
            out[r.verdict] = out.get(r.verdict, 0) + 1
        return out

    def to_dict(self) -> dict[str, Any]:
        return {
            "reports": [r.to_dict() for r in self.reports],
            "counts": self.counts(),
            "elapsed_ms": round(self.elapsed_ms, 2),
        }


def run_battery(
    algebras: Iterable[Algebra],
    *,
    checks: Sequence[str] | None = None,
    window: Window | None = None,
    horizon: int | None = None,
    workers: int | None = None,
    family: Sequence[CorpusModule] | None = None,
) -> BatteryResult:
    """Run the selected checks; reports come back sorted by check id whatever the worker count."""

    cfg = current_settings()
    window = (cfg.window_lo, cfg.window_hi) if window is None else window
    horizon = cfg.horizon if horizon is None else horizon
    workers = cfg.max_workers if workers is None else max(1, workers)
    selected = resolve_checks(checks)
    timer = Timer()

    tasks: list[Task] = []
    for a in algebras:
        tasks += plan(a, selected, window, horizon, family)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            # workers see the caller's overrides
            futures = [pool.submit(contextvars.copy_context().run, t) for t in tasks]
            reports = [f.result() for f in futures]
    else:
        reports = [t() for t in tasks]

    reports.sort(key=lambda r: r.check_id)
    for r in reports:
        if r.refuted:
            log_event("check.refuted", severity="WARNING", check=r.check_id, witness=r.witness)
    result = BatteryResult(tuple(reports), timer.ms())
    logger.info("battery.done checks=%d refuted=%d elapsed_ms=%.1f", len(reports), len(result.refuted), result.elapsed_ms)
    return result
