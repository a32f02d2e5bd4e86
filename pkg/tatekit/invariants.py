"""Stable and ordinary Betti/Bass numbers, complexity, G-dimension and grade."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any

import numpy as np

from .algebra import is_gorenstein
from .config import current_settings
from .errors import DegreeError, NotGorensteinError
from .homalg import TateTable, detect_periodicity, ordinary_ext, resolution_of, tate_ext
from .modrep import Module, biduality_rank, free_module, residue_field

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BettiBassProfile:
    module: str
    lo: int
    hi: int
    stable_betti: TateTable
    stable_bass: TateTable
    ordinary_betti: tuple[int, ...]

    def betti(self, i: int) -> int:
        return self.stable_betti.dim(i)

    def bass(self, i: int) -> int:
        return self.stable_bass.dim(i)

    def to_dict(self) -> dict[str, Any]:
        return {
            "module": self.module,
            "lo": self.lo,
            "hi": self.hi,
            "stable_betti": list(self.stable_betti.dims),
            "stable_bass": list(self.stable_bass.dims),
            "ordinary_betti": list(self.ordinary_betti),
        }


def profile(m: Module, lo: int, hi: int) -> BettiBassProfile:
    a = m.algebra
    if not is_gorenstein(a):
        raise NotGorensteinError("stable Betti and Bass numbers need a Gorenstein algebra")
    k = residue_field(a)
    betti = tate_ext(m, k, lo, hi)
    bass = tate_ext(k, m, lo, hi)
    ordinary = tuple(ordinary_betti(m, hi)) if hi >= 0 else ()
    return BettiBassProfile(m.label(), lo, hi, betti, bass, ordinary)


def ordinary_betti(m: Module, length: int) -> list[int]:
    if length < 0:
        raise DegreeError(f"length must be >= 0, got {length}")
    return resolution_of(m).betti_numbers(length)


def ordinary_bass(m: Module, length: int) -> list[int]:
    """mu^i(M) = dim Ext^i(k, M), 0 <= i <= length."""

    if length < 0:
        raise DegreeError(f"length must be >= 0, got {length}")
    k = residue_field(m.algebra)
    return [ordinary_ext(k, m, i) for i in range(length + 1)]


def depth(m: Module) -> int:
    """Every nonzero module over an Artinian ring has depth 0."""

    return 0


# ---------------------------------------------------------------------------
# Complexity
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ComplexityEstimate:
    value: int | None
    lower_bound: int | None
    horizon: int
    betti: tuple[int, ...]
    certified: bool = False

    def label(self) -> str:
        if self.value is not None:
            return str(self.value)
        return f">={self.lower_bound}"

    def to_dict(self) -> dict[str, Any]:
        return {
            "estimate": self.label(),
            "horizon": self.horizon,
            "betti": list(self.betti),
            "certified": self.certified,
        }


_STABLE_ROWS = 3


def _growth_degree(seq: list[int]) -> int | None:
    """Smallest e whose e-th difference row ends in three equal nonzero entries."""

    row = np.asarray(seq, dtype=np.int64)
    e = 0
    while row.size >= _STABLE_ROWS:
        tail = row[-_STABLE_ROWS:]
        if np.all(tail == tail[0]) and tail[0] != 0:
            return e
        row = np.diff(row)
        e += 1
    return None


def complexity_estimate(m: Module, horizon: int | None = None) -> ComplexityEstimate:
    horizon = current_settings().horizon if horizon is None else horizon
    if horizon < 4:
        raise DegreeError(f"complexity horizon must be >= 4, got {horizon}")
    betti = ordinary_betti(m, horizon)
    if betti[-1] == 0:
        value: int | None = 0
    else:
        degree = _growth_degree(betti)
        if degree is None:
            # Quasi-polynomial growth: even and odd degrees grow separately.
            parts = [_growth_degree(betti[0::2]), _growth_degree(betti[1::2])]
            degree = None if None in parts else max(d for d in parts if d is not None)
        value = None if degree is None else degree + 1
    certified = False
    if value is not None and value <= 1 and is_gorenstein(m.algebra):
        certified = detect_periodicity(m) is not None
    estimate = ComplexityEstimate(value, None if value is not None else 1, horizon, tuple(betti), certified)
    logger.debug("invariants.complexity module=%s estimate=%s", m.label(), estimate.label())
    return estimate


# ---------------------------------------------------------------------------
# G-dimension and grade
# ---------------------------------------------------------------------------


def gdim_is_zero(m: Module) -> bool:
    """Ext^i(M, A) = 0 for 1 <= i <= dim A + 2 and M -> M** is an isomorphism."""

    a = m.algebra
    one = free_module(a, 1)
    for i in range(1, a.dim + 3):
        if ordinary_ext(m, one, i) != 0:
            return False
    ev_rank, double_dual = biduality_rank(m)
    return ev_rank == m.kdim and double_dual == m.kdim


def grade(m: Module, n: Module, horizon: int | None = None) -> int | None:
    """inf{i >= 0 : Ext^i(M, N) != 0}, or None when it exceeds the horizon."""

    horizon = current_settings().horizon if horizon is None else horizon
    for i in range(horizon + 1):
        if ordinary_ext(m, n, i) != 0:
            return i
    return None
