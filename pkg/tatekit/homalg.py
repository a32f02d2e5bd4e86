"""Resolutions, complete resolutions and Tate (co)homology.

Free modules in a resolution are represented by their ranks and the
differentials by `FreeMap`s (matrices of algebra elements), so that
Hom(d, N) and d (x) N can be written down directly from the action of N.

Minimal resolutions are built lazily and cached on the module they resolve;
everything downstream (syzygies, Tate tables, periodicity detection) reuses
the same covers, so repeated queries for one module never recompute them.
"""

from __future__ import annotations

import logging
import threading
import weakref
from dataclasses import dataclass
from typing import Any, Literal, TypeVar

import numpy as np

from .algebra import Algebra, is_gorenstein
from .config import current_settings
from .errors import DegreeError, NotGorensteinError, WindowError
from .exactla import Mat, kernel_basis, matmul_mod, quotient_projection, rank, rref, vstack
from .modrep import (
    FreeMap,
    IsoResult,
    Module,
    ModuleHom,
    SubmoduleEmbedding,
    a_dual,
    direct_sum,
    free_module,
    hom_module,
    hom_space,
    hom_vector_to_map,
    is_iso,
    minimal_generators,
    presentation,
    quotient_module,
    submodule,
)

logger = logging.getLogger(__name__)

T = TypeVar("T")

_CACHE_LOCK = threading.RLock()


def remember(m: Module, key: Any, value: T) -> T:
    """Store `value` under `key` in the module cache unless another thread got there first."""

    with _CACHE_LOCK:
        stored: T = m._cache.setdefault(key, value)
    return stored


def _require_gorenstein(a: Algebra, what: str) -> None:
    if not is_gorenstein(a):
        raise NotGorensteinError(
            f"{what} requires a Gorenstein algebra; {a.name or 'this algebra'} has socle dimension {a.socle_dim}"
        )


# ---------------------------------------------------------------------------
# Minimal free resolutions
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class FreeCover:
    """Minimal cover free -> target with its kernel (the next syzygy)."""

    free: Module
    map: ModuleHom
    kernel: SubmoduleEmbedding

    @property
    def rank(self) -> int:
        return self.free.free_rank or 0

    def is_minimal(self) -> bool:
        a = self.free.algebra
        if self.rank != minimal_generators(self.map.target).count:
            return False
        basis = self.kernel.basis.array
        if basis.shape[1] == 0:
            return True
        blocks = basis.reshape(self.rank, a.dim, basis.shape[1])
        residues = np.tensordot(a.residue_row, blocks, axes=([0], [1])) % a.p
        return not bool(np.any(residues))


class MinimalResolution:
    """The minimal free resolution ... -> F_1 -> F_0 -> M, extended on demand."""

    def __init__(self, module: Module) -> None:
        self.module = module
        self.algebra = module.algebra
        self._covers: list[FreeCover] = []
        self._syzygies: list[Module] = [module]
        self._diffs: list[FreeMap | None] = [None]
        self._lock = threading.Lock()

    def extend_to(self, length: int) -> None:
        """Make F_0..F_length (and d_1..d_length) available."""

        with self._lock:
            while len(self._covers) <= length:
                self._extend_once()

    def _extend_once(self) -> None:
        a = self.algebra
        i = len(self._covers)
        target = self._syzygies[i]
        pres = presentation(target)
        free = free_module(a, pres.rank)
        cover = ModuleHom(free, target, pres.cover, check=False)
        kernel = submodule(free, pres.kernel, name=f"syz{i + 1}({self.module.label()})", check=False)
        self._covers.append(FreeCover(free, cover, kernel))
        self._syzygies.append(kernel.module)
        if i >= 1:
            # d_i : F_i -> F_{i-1} sends the generators of F_i onto the chosen
            # generators of syz_i inside F_{i-1}.
            embedding = self._covers[i - 1].kernel
            columns = matmul_mod(embedding.basis.array, pres.generators.array, a.p)
            self._diffs.append(FreeMap.from_columns(a, self._covers[i - 1].rank, columns))
        logger.debug("resolution.extend module=%s degree=%d betti=%d", self.module.label(), i, pres.rank)

    def cover(self, i: int) -> FreeCover:
        self.extend_to(i)
        return self._covers[i]

    def syzygy(self, i: int) -> Module:
        if i < 0:
            raise DegreeError(f"syzygy index must be >= 0, got {i}")
        if i > 0:
            self.extend_to(i - 1)
        return self._syzygies[i]

    def betti(self, i: int) -> int:
        return self.cover(i).rank

    def betti_numbers(self, length: int) -> list[int]:
        self.extend_to(length)
        return [c.rank for c in self._covers[: length + 1]]

    def differential(self, i: int) -> FreeMap:
        """d_i : F_i -> F_{i-1} for i >= 1."""

        if i < 1:
            raise DegreeError(f"differential index must be >= 1, got {i}")
        self.extend_to(i)
        d = self._diffs[i]
        assert d is not None
        return d

    def inclusion(self, i: int) -> SubmoduleEmbedding:
        """syz_{i+1} inside F_i."""

        return self.cover(i).kernel


def resolution_of(m: Module) -> MinimalResolution:
    with _CACHE_LOCK:
        res = m._cache.get("resolution")
        if res is None:
            res = MinimalResolution(m)
            m._cache["resolution"] = res
    return res


def minimal_free_resolution(m: Module, length: int) -> tuple[list[FreeCover], list[int]]:
    if length < 0:
        raise DegreeError(f"length must be >= 0, got {length}")
    res = resolution_of(m)
    res.extend_to(length)
    covers = [res.cover(i) for i in range(length + 1)]
    return covers, [c.rank for c in covers]


def syzygy(m: Module, n: int) -> Module:
    return resolution_of(m).syzygy(n)


def cosyzygy(m: Module, n: int) -> Module:
    """Omega^{-n} M = (Omega^n (M*))*."""

    _require_gorenstein(m.algebra, "cosyzygy")
    if n < 0:
        raise DegreeError(f"cosyzygy index must be >= 0, got {n}")
    if n == 0:
        return m
    return a_dual(syzygy(a_dual(m), n))


def transpose(m: Module) -> Module:
    """Tr M = coker(d_1^T : F_0* -> F_1*) from a minimal presentation."""

    relations = presentation(m).relations
    ambient = free_module(m.algebra, relations.source_rank)
    return quotient_module(ambient, relations.transpose().kmatrix(), name=f"Tr({m.label()})", check=False).module


# ---------------------------------------------------------------------------
# Free summands
# ---------------------------------------------------------------------------


def split_free(m: Module) -> tuple[Module, int]:
    """Write M ~= M' (+) A^r with M' free of free summands; returns (M', r).

    A free summand exists exactly when some f : M -> A is surjective, i.e.
    some generator image f(u_t) is a unit. The kernel of such an f is a
    complement of a copy of A.
    """

    cached = m._cache.get("split_free")
    if cached is not None:
        return cached
    a = m.algebra
    one = free_module(a, 1)
    current, count = m, 0
    while current.kdim > 0:
        space = hom_space(current, one)
        r = presentation(current).rank
        if space.dim == 0:
            break
        blocks = space.vectors.array.reshape(r, a.dim, space.dim)
        residues = np.tensordot(a.residue_row, blocks, axes=([0], [1])) % a.p
        hits = np.argwhere(residues)
        if hits.size == 0:
            break
        f = hom_vector_to_map(current, one, space.vectors.array[:, int(hits[0][1])])
        current = submodule(current, kernel_basis(f.mat), name=current.name, check=False).module
        count += 1
    if count == 0:
        result = (m, 0)
    else:
        stripped = Module(a, current.kdim, current.action, None, f"stable({m.label()})", check=False)
        result = (stripped, count)
        logger.debug("homalg.split_free module=%s free_rank=%d", m.label(), count)
    return remember(m, "split_free", result)


def strip_free(m: Module) -> Module:
    return split_free(m)[0]


def free_rank(m: Module) -> int:
    return split_free(m)[1]


def stable_iso(m: Module, n: Module, **kwargs: Any) -> IsoResult:
    return is_iso(strip_free(m), strip_free(n), **kwargs)


# ---------------------------------------------------------------------------
# Complete resolutions
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class CompleteResolutionWindow:
    """T_i for lo - padding <= i <= hi + padding, with d_i : T_i -> T_{i-1}.

    Degrees >= 0 agree with the minimal resolution of the stable part of the
    module (the comparison map is the identity there); degree -1-j is the dual
    of G_j, G the minimal resolution of the A-dual.
    """

    module: Module
    lo: int
    hi: int
    padding: int
    ranks: dict[int, int]
    diffs: dict[int, FreeMap]
    stripped_free_rank: int = 0

    @property
    def first(self) -> int:
        return self.lo - self.padding

    @property
    def last(self) -> int:
        return self.hi + self.padding

    def rank(self, i: int) -> int:
        return self.ranks[i]

    def diff(self, i: int) -> FreeMap:
        return self.diffs[i]

    def splice_data(self) -> dict[str, Any]:
        return {"comparison": "identity-in-degrees>=0", "stripped_free_rank": self.stripped_free_rank}

    def to_dict(self) -> dict[str, Any]:
        return {
            "lo": self.lo,
            "hi": self.hi,
            "ranks": {str(i): self.ranks[i] for i in sorted(self.ranks)},
            "splice": self.splice_data(),
        }


def _stable_dual(m: Module) -> tuple[Module, SubmoduleEmbedding]:
    """(stable part M', its A-dual as a submodule of A^{beta_0(M')}), cached."""

    cached = m._cache.get("stable_dual")
    if cached is None:
        stable = strip_free(m)
        cached = remember(m, "stable_dual", (stable, hom_module(stable, free_module(m.algebra, 1))))
    return cached


def _check_window(lo: int, hi: int) -> None:
    if not lo <= 0 < hi:
        raise WindowError(f"window must satisfy lo <= 0 < hi, got [{lo}, {hi}]")


def complete_resolution(m: Module, lo: int, hi: int, *, padding: int | None = None) -> CompleteResolutionWindow:
    a = m.algebra
    _require_gorenstein(a, "complete_resolution")
    _check_window(lo, hi)
    pad = current_settings().window_padding if padding is None else padding
    first, last = lo - pad, hi + pad

    stable, dual = _stable_dual(m)
    n = a.dim
    ranks: dict[int, int] = {}
    diffs: dict[int, FreeMap] = {}

    pos = resolution_of(stable)
    if last >= 0:
        pos.extend_to(last)
    neg = resolution_of(dual.module)
    if first <= -1:
        neg.extend_to(-first - 1)

    for i in range(first, last + 1):
        ranks[i] = pos.betti(i) if i >= 0 else neg.betti(-1 - i)

    for i in range(first + 1, last + 1):
        if i >= 1:
            diffs[i] = pos.differential(i)
        elif i == 0:
            # Weld T_0 -> T_{-1}: e_b -> (phi_a(u_b))_a, phi_a the generators of M*.
            beta0 = ranks[0]
            gens = minimal_generators(dual.module)
            phis = matmul_mod(dual.basis.array, gens.lift.array, a.p)
            entries = phis.reshape(beta0, n, gens.count).transpose(2, 0, 1)
            diffs[0] = FreeMap(a, entries)
        else:
            # T_i = G_{-1-i}*, T_{i-1} = G_{-i}*: dual of G's d_{-i}.
            diffs[i] = neg.differential(-i).transpose()

    return CompleteResolutionWindow(m, lo, hi, pad, ranks, diffs, free_rank(m))


@dataclass(frozen=True)
class WindowCheck:
    errors: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.errors


def verify_window(w: CompleteResolutionWindow) -> WindowCheck:
    """d o d = 0, exactness, minimality and exactness after dualizing."""

    a = w.module.algebra
    n = a.dim
    errors: list[str] = []
    kmats = {i: d.kmatrix() for i, d in w.diffs.items()}
    duals = {i: d.transpose().kmatrix() for i, d in w.diffs.items()}
    ranks = {i: rank(k) for i, k in kmats.items()}
    dual_ranks = {i: rank(k) for i, k in duals.items()}

    for i, d in w.diffs.items():
        if not d.is_minimal():
            errors.append(f"d_{i} is not minimal (an entry is a unit)")
        if i + 1 in kmats and not (kmats[i] @ kmats[i + 1]).is_zero():
            errors.append(f"d_{i} o d_{i + 1} != 0")

    for i in range(w.first + 1, w.last):
        size = w.ranks[i] * n
        if ranks[i] + ranks[i + 1] != size:
            errors.append(f"not exact at T_{i}: rank d_{i} = {ranks[i]}, rank d_{i + 1} = {ranks[i + 1]}, dim {size}")
        if dual_ranks[i] + dual_ranks[i + 1] != size:
            errors.append(f"dual not exact at T_{i}*")
    return WindowCheck(tuple(errors))


# ---------------------------------------------------------------------------
# Tate and ordinary Ext / Tor
# ---------------------------------------------------------------------------

TableKind = Literal["ext", "tor"]


@dataclass(frozen=True)
class Periodicity:
    period: int
    shift: int
    zero: bool = False

    def to_dict(self) -> dict[str, Any]:
        return {"p": self.period, "shift": self.shift, "zero": self.zero}


@dataclass(frozen=True)
class TateTable:
    kind: TableKind
    lo: int
    hi: int
    dims: tuple[int, ...]
    period: Periodicity | None = None
    period_from: int | None = None

    def dim(self, i: int) -> int:
        if not self.lo <= i <= self.hi:
            raise WindowError(f"degree {i} outside table window [{self.lo}, {self.hi}]")
        return self.dims[i - self.lo]

    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def items(self) -> list[tuple[int, int]]:
        return list(zip(self.degrees(), self.dims))

    def vanishes_on(self, lo: int, hi: int) -> bool:
        return all(self.dim(i) == 0 for i in range(max(lo, self.lo), min(hi, self.hi) + 1))

    def with_period(self, period: Periodicity | None) -> "TateTable":
        return TateTable(self.kind, self.lo, self.hi, self.dims, period, self.lo if period else None)

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": self.kind,
            "lo": self.lo,
            "hi": self.hi,
            "dims": list(self.dims),
            "period": None if self.period is None else {"p": self.period.period, "from": self.period_from},
        }


def _table(kind: TableKind, m: Module, n: Module, lo: int, hi: int) -> TateTable:
    if hi < lo:
        raise WindowError(f"empty window [{lo}, {hi}]")
    with _CACHE_LOCK:
        tables = m._cache.setdefault("tables", weakref.WeakKeyDictionary())
        per_target = tables.setdefault(n, {})
    cached = per_target.get((kind, lo, hi))
    if cached is not None:
        return cached
    w = complete_resolution(m, min(lo, 0), max(hi, 1))
    kn = n.kdim
    ranks: dict[int, int] = {}
    for i in range(lo, hi + 2):
        d = w.diff(i)
        ranks[i] = rank(d.hom_into(n) if kind == "ext" else d.tensor_with(n))
    dims = tuple(w.rank(i) * kn - ranks[i] - ranks[i + 1] for i in range(lo, hi + 1))
    logger.debug("homalg.tate kind=%s m=%s n=%s window=%d:%d dims=%s", kind, m.label(), n.label(), lo, hi, dims)
    table = TateTable(kind, lo, hi, dims)
    per_target[(kind, lo, hi)] = table
    return table


def tate_ext(m: Module, n: Module, lo: int, hi: int) -> TateTable:
    """dim Ext^i(M, N) from Hom(T, N), i in [lo, hi]."""

    _require_gorenstein(m.algebra, "tate_ext")
    return _table("ext", m, n, lo, hi)


def tate_tor(m: Module, n: Module, lo: int, hi: int) -> TateTable:
    _require_gorenstein(m.algebra, "tate_tor")
    return _table("tor", m, n, lo, hi)


def _ordinary(kind: TableKind, m: Module, n: Module, i: int) -> int:
    if i < 0:
        raise DegreeError(f"ordinary {kind} needs i >= 0, got {i}")
    res = resolution_of(m)
    res.extend_to(i + 1)
    kn = n.kdim

    def r(j: int) -> int:
        if j < 1:
            return 0
        d = res.differential(j)
        return rank(d.hom_into(n) if kind == "ext" else d.tensor_with(n))

    return res.betti(i) * kn - r(i) - r(i + 1)


def ordinary_ext(m: Module, n: Module, i: int) -> int:
    return _ordinary("ext", m, n, i)


def ordinary_tor(m: Module, n: Module, i: int) -> int:
    return _ordinary("tor", m, n, i)


# ---------------------------------------------------------------------------
# Cocycles and pushouts
# ---------------------------------------------------------------------------


def ext_basis(m: Module, q: int) -> list[ModuleHom]:
    """Representatives f : syz_q M -> M of a basis of Ext^q(M, M)."""

    if q < 1:
        raise DegreeError(f"cocycle degree must be >= 1, got {q}")
    res = resolution_of(m)
    omega = res.syzygy(q)
    homs = hom_space(omega, m)
    if homs.dim == 0:
        return []
    factoring = res.differential(q).hom_into(m)
    proj, _ = quotient_projection(factoring)
    reduced = Mat(m.field, matmul_mod(proj.array, homs.vectors.array, m.algebra.p), canonical=True)
    _, pivots = rref(reduced)
    return [hom_vector_to_map(omega, m, homs.vectors.array[:, j]) for j in pivots]


def combine_cocycles(basis: list[ModuleHom], coeffs: np.ndarray) -> ModuleHom:
    src, tgt = basis[0].source, basis[0].target
    p = src.algebra.p
    total = np.zeros(basis[0].mat.shape, dtype=np.int64)
    for c, f in zip(coeffs, basis):
        total = np.mod(total + int(c) * f.mat.array, p)
    return ModuleHom(src, tgt, Mat(src.field, total, canonical=True), check=False)


def pushout_extension(m: Module, eta: ModuleHom | Mat, q: int) -> Module:
    """K_eta = (F_{q-1} (+) M) / {(iota(u), -f(u)) : u in syz_q M}."""

    if q < 1:
        raise DegreeError(f"cocycle degree must be >= 1, got {q}")
    res = resolution_of(m)
    omega = res.syzygy(q)
    if isinstance(eta, Mat):
        eta = ModuleHom(omega, m, eta)
    elif eta.source.kdim != omega.kdim or eta.target.kdim != m.kdim:
        raise DegreeError(f"cocycle must map syz_{q} (kdim {omega.kdim}) to M (kdim {m.kdim})")
    else:
        eta = ModuleHom(omega, m, eta.mat)
    inclusion = res.inclusion(q - 1)
    ambient = direct_sum(res.cover(q - 1).free, m)
    span = vstack(m.field, [inclusion.basis, -eta.mat])
    return quotient_module(ambient, span, name=f"K_eta({m.label()}, q={q})", check=False).module


# ---------------------------------------------------------------------------
# Periodicity
# ---------------------------------------------------------------------------


def detect_periodicity(m: Module, max_p: int | None = None, max_shift: int | None = None) -> Periodicity | None:
    """Smallest p with stable(syz_s M) ~= stable(syz_{s+p} M) for some s <= max_shift."""

    cfg = current_settings()
    max_p = cfg.period_max if max_p is None else max_p
    max_shift = cfg.period_max_shift if max_shift is None else max_shift
    cached = m._cache.get(("periodicity", max_p, max_shift))
    if cached is not None:
        return cached or None
    found: Periodicity | None = None
    if strip_free(m).kdim == 0:
        found = Periodicity(1, 0, zero=True)
    else:
        stable = [strip_free(syzygy(m, j)) for j in range(max_shift + max_p + 1)]
        for p in range(1, max_p + 1):
            for s in range(0, max_shift + 1):
                if is_iso(stable[s], stable[s + p]):
                    found = Periodicity(p, s)
                    break
            if found:
                break
    stored = remember(m, ("periodicity", max_p, max_shift), found or False)
    logger.debug("homalg.periodicity module=%s result=%s", m.label(), stored)
    return stored or None
