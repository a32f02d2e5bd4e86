"""Finitely generated modules as vector spaces with an equivariant action.

A module M over an algebra with basis b_1..b_n stores the k-matrices
rho(b_i). Free modules A^r use block coordinates: the element sum_t a_t e_t
is the concatenation of the coordinate vectors of a_1, ..., a_r.

Hom and tensor are computed from a minimal presentation
A^s --d--> A^r --pi--> M --> 0, which keeps every linear system at the size of
the target module times the number of generators and relations.
"""

from __future__ import annotations

import itertools
import logging
import weakref
from dataclasses import InitVar, dataclass, field
from typing import Any, Literal

import numpy as np

from .algebra import Algebra, Ideal, _columns
from .config import current_settings
from .errors import AlgebraMismatchError, BadActionError, NotEquivariantError, NotInvariantError, ShapeError
from .exactla import (
    Mat,
    PrimeField,
    canonical_basis,
    kernel_basis,
    matmul_mod,
    quotient_projection,
    rank,
    rref,
    solve,
)

logger = logging.getLogger(__name__)

_RESIDUE_FIELDS: "weakref.WeakKeyDictionary[Algebra, Module]" = weakref.WeakKeyDictionary()


def _readonly(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class Module:
    algebra: Algebra
    kdim: int
    action: tuple[Mat, ...]
    free_rank: int | None = None
    name: str = ""
    check: InitVar[bool] = True

    stack: np.ndarray = field(init=False, repr=False)
    _cache: dict[str, Any] = field(init=False, repr=False, default_factory=dict)

    def __post_init__(self, check: bool) -> None:
        a = self.algebra
        n = a.dim
        k = self.kdim
        if len(self.action) != n:
            raise BadActionError(f"expected {n} action matrices (one per basis element), got {len(self.action)}")
        for i, m in enumerate(self.action):
            if m.field != a.field:
                raise BadActionError(f"action matrix {i} is over {m.field}, expected {a.field}")
            if m.shape != (k, k):
                raise ShapeError(f"action matrix {i} has shape {m.shape}, expected ({k}, {k})")
        stack = np.stack([m.array for m in self.action]) if n else np.zeros((0, k, k), dtype=np.int64)
        object.__setattr__(self, "stack", _readonly(stack.reshape(n, k, k)))
        if check:
            self._check_axioms()

    def _check_axioms(self) -> None:
        a = self.algebra
        n, k, p = a.dim, self.kdim, a.p
        if k == 0:
            return
        if not np.array_equal(self.act(a.unit_vector()).array, np.eye(k, dtype=np.int64)):
            raise BadActionError("the unit does not act as the identity")
        flat = self.stack.transpose(1, 0, 2).reshape(k, n * k)
        by_basis = self.stack.reshape(n, k * k)
        for i in range(n):
            lhs = matmul_mod(self.stack[i], flat, p).reshape(k, n, k).transpose(1, 0, 2).reshape(n, k * k)
            rhs = matmul_mod(a.constants[i], by_basis, p)
            bad = np.flatnonzero(np.any(lhs != rhs, axis=1))
            if bad.size:
                j = int(bad[0])
                raise BadActionError(
                    f"rho({a.labels[i]}) rho({a.labels[j]}) differs from rho({a.labels[i]}*{a.labels[j]})"
                )

    @property
    def field(self) -> PrimeField:
        return self.algebra.field

    @property
    def is_zero(self) -> bool:
        return self.kdim == 0

    def act(self, r: Any) -> Mat:
        """k-matrix of the algebra element r acting on M."""

        return Mat(self.algebra.field, element_actions(self, np.asarray(r, dtype=np.int64)), canonical=True)

    def generator_actions(self) -> list[np.ndarray]:
        cached = self._cache.get("generator_actions")
        if cached is None:
            gens = self.algebra.radical_generators
            cached = [element_actions(self, gens.array[:, j]) for j in range(gens.cols)]
            self._cache["generator_actions"] = cached
        return cached

    def action_ranks(self) -> tuple[int, ...]:
        cached = self._cache.get("action_ranks")
        if cached is None:
            cached = tuple(rank(m) for m in self.action)
            self._cache["action_ranks"] = cached
        return cached

    def label(self) -> str:
        return self.name or f"M(kdim={self.kdim})"

    def __repr__(self) -> str:
        return f"Module({self.label()}, kdim={self.kdim}, over {self.algebra!r})"


def element_actions(m: Module, elems: np.ndarray) -> np.ndarray:
    """rho(e) for an array of algebra elements of shape (..., n); returns (..., kdim, kdim)."""

    n, k = m.algebra.dim, m.kdim
    lead = elems.shape[:-1]
    flat = elems.reshape(-1, n)
    out = matmul_mod(flat, m.stack.reshape(n, k * k), m.algebra.p)
    return out.reshape(*lead, k, k)


def _same_algebra(*mods: Module) -> Algebra:
    a = mods[0].algebra
    for m in mods[1:]:
        if m.algebra is not a:
            raise AlgebraMismatchError("modules are over different algebras")
    return a


def _module_from_stack(a: Algebra, stack: np.ndarray, *, name: str = "", free_rank: int | None = None) -> Module:
    k = stack.shape[-1]
    action = tuple(Mat(a.field, stack[i], canonical=True) for i in range(a.dim))
    return Module(a, k, action, free_rank, name, check=False)


@dataclass(frozen=True, eq=False)
class ModuleHom:
    source: Module
    target: Module
    mat: Mat
    check: InitVar[bool] = True

    def __post_init__(self, check: bool) -> None:
        _same_algebra(self.source, self.target)
        if self.mat.shape != (self.target.kdim, self.source.kdim):
            raise ShapeError(f"hom matrix has shape {self.mat.shape}, expected ({self.target.kdim}, {self.source.kdim})")
        if check and not is_equivariant(self.source, self.target, self.mat):
            raise NotEquivariantError("matrix does not commute with the algebra action")

    def __matmul__(self, other: "ModuleHom") -> "ModuleHom":
        if other.target is not self.source:
            raise AlgebraMismatchError("cannot compose: target of the right map is not the source of the left map")
        return ModuleHom(other.source, self.target, self.mat @ other.mat, check=False)

    def rank(self) -> int:
        return rank(self.mat)

    def is_iso(self) -> bool:
        return self.source.kdim == self.target.kdim and self.rank() == self.source.kdim

    def is_zero(self) -> bool:
        return self.mat.is_zero()


def is_equivariant(source: Module, target: Module, mat: Mat) -> bool:
    p = source.algebra.p
    for rs, rt in zip(source.stack, target.stack):
        if not np.array_equal(matmul_mod(mat.array, rs, p), matmul_mod(rt, mat.array, p)):
            return False
    return True


# ---------------------------------------------------------------------------
# Builders
# ---------------------------------------------------------------------------


def free_module(a: Algebra, r: int) -> Module:
    if r < 0:
        raise ShapeError(f"rank must be >= 0, got {r}")
    eye = np.eye(r, dtype=np.int64)
    stack = np.stack([np.kron(eye, m.array) for m in a.left]) if r else np.zeros((a.dim, 0, 0), dtype=np.int64)
    name = "0" if r == 0 else ("A" if r == 1 else f"A^{r}")
    return _module_from_stack(a, stack, name=name, free_rank=r)


def power(m: Module, r: int) -> Module:
    """M^r = M (+) ... (+) M."""

    eye = np.eye(r, dtype=np.int64)
    stack = np.stack([np.kron(eye, s) for s in m.stack]) if r else np.zeros((m.algebra.dim, 0, 0), dtype=np.int64)
    free_rank = m.free_rank * r if m.free_rank is not None else None
    return _module_from_stack(m.algebra, stack, name=f"({m.label()})^{r}", free_rank=free_rank)


def direct_sum(*mods: Module) -> Module:
    a = _same_algebra(*mods)
    k = sum(m.kdim for m in mods)
    stack = np.zeros((a.dim, k, k), dtype=np.int64)
    offset = 0
    for m in mods:
        stack[:, offset : offset + m.kdim, offset : offset + m.kdim] = m.stack
        offset += m.kdim
    ranks = [m.free_rank for m in mods]
    free_rank = sum(r for r in ranks if r is not None) if all(r is not None for r in ranks) else None
    return _module_from_stack(a, stack, name=" + ".join(m.label() for m in mods), free_rank=free_rank)


@dataclass(frozen=True, eq=False)
class SubmoduleEmbedding:
    """A submodule with its canonical basis inside the ambient module.

    The coordinates of an ambient vector w lying in the submodule are w[pivots].
    """

    module: Module
    ambient: Module
    basis: Mat
    pivots: tuple[int, ...]

    def inclusion(self) -> ModuleHom:
        return ModuleHom(self.module, self.ambient, self.basis, check=False)

    def coords(self, w: np.ndarray) -> np.ndarray:
        return np.asarray(w)[list(self.pivots), ...]


@dataclass(frozen=True, eq=False)
class QuotientMap:
    module: Module
    ambient: Module
    projection: Mat
    complement: tuple[int, ...]

    def as_hom(self) -> ModuleHom:
        return ModuleHom(self.ambient, self.module, self.projection, check=False)


def _check_invariant(m: Module, span: np.ndarray) -> None:
    if span.shape[1] == 0 or m.kdim == 0:
        return
    q, _ = quotient_projection(Mat(m.field, span, canonical=True))
    p = m.algebra.p
    for g in m.generator_actions():
        if np.any(matmul_mod(q.array, matmul_mod(g, span, p), p)):
            raise NotInvariantError("subspace is not closed under the algebra action")


def submodule(m: Module, span: Mat, *, name: str = "", check: bool = True) -> SubmoduleEmbedding:
    """Submodule spanned by the columns of `span` (must be invariant)."""

    if span.rows != m.kdim:
        raise ShapeError(f"subspace vectors have {span.rows} coordinates, module has {m.kdim}")
    basis, pivots = canonical_basis(span)
    if check:
        _check_invariant(m, basis.array)
    n, k, s = m.algebra.dim, m.kdim, basis.cols
    moved = matmul_mod(m.stack.reshape(n * k, k), basis.array, m.algebra.p).reshape(n, k, s)
    stack = moved[:, pivots, :]
    sub = _module_from_stack(m.algebra, stack, name=name)
    return SubmoduleEmbedding(sub, m, basis, tuple(pivots))


def quotient_module(m: Module, span: Mat, *, name: str = "", check: bool = True) -> QuotientMap:
    """M / span, on the complement coordinates of the span."""

    if span.rows != m.kdim:
        raise ShapeError(f"subspace vectors have {span.rows} coordinates, module has {m.kdim}")
    if check:
        _check_invariant(m, span.array)
    q, complement = quotient_projection(span)
    n, k = m.algebra.dim, m.kdim
    qd = len(complement)
    moved = matmul_mod(q.array, m.stack.transpose(1, 0, 2).reshape(k, n * k), m.algebra.p).reshape(qd, n, k)
    stack = moved[:, :, complement].transpose(1, 0, 2)
    quo = _module_from_stack(m.algebra, stack, name=name)
    return QuotientMap(quo, m, q, tuple(complement))


def cyclic_module(a: Algebra, i: Ideal, *, name: str = "") -> Module:
    """A / I."""

    if i.algebra is not a:
        raise AlgebraMismatchError("ideal belongs to a different algebra")
    label = name or f"A/({', '.join(i.describe()) or '0'})"
    return quotient_module(free_module(a, 1), i.basis, name=label, check=False).module


def residue_field(a: Algebra) -> Module:
    """k = A/m, one shared instance per algebra so its resolution is built once."""

    k = _RESIDUE_FIELDS.get(a)
    if k is None:
        k = cyclic_module(a, a.maximal_ideal(), name="k")
        _RESIDUE_FIELDS[a] = k
    return k


def change_basis(m: Module, p_mat: Mat, *, name: str = "") -> Module:
    """The same module written in the basis given by the columns of p_mat."""

    from .exactla import inverse

    p_inv = inverse(p_mat)
    prime = m.algebra.p
    stack = np.stack([matmul_mod(matmul_mod(p_inv.array, s, prime), p_mat.array, prime) for s in m.stack])
    return _module_from_stack(m.algebra, stack.reshape(m.stack.shape), name=name or m.name, free_rank=m.free_rank)


def matlis_dual(m: Module) -> Module:
    """Hom_k(M, k) with the contragredient action rho(b)^T."""

    stack = m.stack.transpose(0, 2, 1)
    return _module_from_stack(m.algebra, np.ascontiguousarray(stack), name=f"({m.label()})^v")


def annihilator(m: Module) -> Ideal:
    a = m.algebra
    k = m.kdim
    evaluation = Mat(a.field, m.stack.reshape(a.dim, k * k).T, canonical=True)
    kernel = kernel_basis(evaluation)
    return Ideal(a, tuple(tuple(int(x) for x in col) for col in _columns(kernel)))


# ---------------------------------------------------------------------------
# Generators, presentations, free maps
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class MinimalGenerators:
    count: int
    lift: Mat  # kdim x count, columns lift a basis of M/mM
    top: Mat  # count x kdim, the projection M -> M/mM in that basis


def radical_image(m: Module) -> Mat:
    """Spanning set (columns) of mM."""

    k = m.kdim
    acts = m.generator_actions()
    if not acts or k == 0:
        return Mat.zeros(m.field, k, 0)
    return Mat(m.field, np.hstack(acts), canonical=True)


def minimal_generators(m: Module) -> MinimalGenerators:
    cached = m._cache.get("minimal_generators")
    if cached is None:
        q, complement = quotient_projection(radical_image(m))
        lift = np.zeros((m.kdim, len(complement)), dtype=np.int64)
        lift[complement, np.arange(len(complement))] = 1
        cached = MinimalGenerators(len(complement), Mat(m.field, lift, canonical=True), q)
        m._cache["minimal_generators"] = cached
    return cached


@dataclass(frozen=True, eq=False)
class FreeMap:
    """A-linear map A^source_rank -> A^target_rank as a matrix of algebra elements.

    entries[t, l] is the coordinate vector of the (t, l) entry; column l is
    the image of the l-th basis element of the source.
    """

    algebra: Algebra
    entries: np.ndarray

    def __post_init__(self) -> None:
        e = np.mod(np.asarray(self.entries, dtype=np.int64), self.algebra.p)
        if e.ndim != 3 or e.shape[2] != self.algebra.dim:
            raise ShapeError(f"free map entries must have shape (r, s, {self.algebra.dim}), got {e.shape}")
        object.__setattr__(self, "entries", _readonly(e))

    @property
    def target_rank(self) -> int:
        return int(self.entries.shape[0])

    @property
    def source_rank(self) -> int:
        return int(self.entries.shape[1])

    @classmethod
    def from_columns(cls, a: Algebra, target_rank: int, columns: np.ndarray) -> "FreeMap":
        """Columns are vectors of A^target_rank in block coordinates."""

        s = columns.shape[1]
        return cls(a, columns.reshape(target_rank, a.dim, s).transpose(0, 2, 1))

    def transpose(self) -> "FreeMap":
        return FreeMap(self.algebra, self.entries.transpose(1, 0, 2))

    def kmatrix(self) -> Mat:
        a = self.algebra
        r, s, n = self.target_rank, self.source_rank, a.dim
        blocks = matmul_mod(self.entries.reshape(r * s, n), a.left_stack, a.p).reshape(r, s, n, n)
        return Mat(a.field, blocks.transpose(0, 2, 1, 3).reshape(r * n, s * n), canonical=True)

    def tensor_with(self, m: Module) -> Mat:
        """d (x) M : M^source_rank -> M^target_rank."""

        r, s, k = self.target_rank, self.source_rank, m.kdim
        blocks = element_actions(m, self.entries)
        return Mat(m.field, blocks.transpose(0, 2, 1, 3).reshape(r * k, s * k), canonical=True)

    def hom_into(self, m: Module) -> Mat:
        """Hom(d, M) : M^target_rank -> M^source_rank, phi -> phi o d."""

        r, s, k = self.target_rank, self.source_rank, m.kdim
        blocks = element_actions(m, self.entries)
        return Mat(m.field, blocks.transpose(1, 2, 0, 3).reshape(s * k, r * k), canonical=True)

    def is_minimal(self) -> bool:
        """Every entry lies in the maximal ideal."""

        a = self.algebra
        flat = self.entries.reshape(-1, a.dim)
        return not bool(np.any(matmul_mod(flat, a.residue_row.reshape(a.dim, 1), a.p)))


def cover_matrix(m: Module, images: np.ndarray) -> np.ndarray:
    """k-matrix of the A-map A^r -> M sending e_t to the column images[:, t]."""

    n, k = m.algebra.dim, m.kdim
    r = images.shape[1]
    moved = matmul_mod(m.stack.reshape(n * k, k), images, m.algebra.p).reshape(n, k, r)
    return moved.transpose(1, 2, 0).reshape(k, r * n)


@dataclass(frozen=True, eq=False)
class Presentation:
    """Minimal presentation A^s --relations--> A^r --cover--> M --> 0."""

    module: Module
    generators: Mat
    cover: Mat
    section: Mat
    kernel: Mat
    kernel_pivots: tuple[int, ...]
    relations: FreeMap

    @property
    def rank(self) -> int:
        return self.generators.cols


def _ambient_generator_images(a: Algebra, r: int, vectors: np.ndarray) -> list[np.ndarray]:
    """g * v for each radical generator g, with v in A^r given in block coordinates."""

    s = vectors.shape[1]
    blocks = vectors.reshape(r, a.dim, s).transpose(1, 0, 2).reshape(a.dim, r * s)
    out = []
    for j in range(a.radical_generators.cols):
        lg = a.mult_matrix(a.radical_generators.array[:, j]).array
        moved = matmul_mod(lg, blocks, a.p).reshape(a.dim, r, s).transpose(1, 0, 2).reshape(r * a.dim, s)
        out.append(moved)
    return out


def minimal_submodule_generators(a: Algebra, r: int, basis: Mat) -> np.ndarray:
    """Columns of `basis` (a submodule of A^r) that minimally generate it."""

    if basis.cols == 0:
        return basis.array
    images = _ambient_generator_images(a, r, basis.array)
    rad = Mat(a.field, np.hstack(images), canonical=True) if images else Mat.zeros(a.field, basis.rows, 0)
    q, _ = quotient_projection(rad)
    _, pivots = rref(Mat(a.field, matmul_mod(q.array, basis.array, a.p), canonical=True))
    return basis.array[:, pivots]


def presentation(m: Module) -> Presentation:
    cached = m._cache.get("presentation")
    if cached is not None:
        return cached
    a = m.algebra
    gens = minimal_generators(m)
    r = gens.count
    cover = Mat(a.field, cover_matrix(m, gens.lift.array), canonical=True)
    section = solve(cover, Mat.identity(a.field, m.kdim))
    kernel, pivots = canonical_basis(kernel_basis(cover))
    relations = FreeMap.from_columns(a, r, minimal_submodule_generators(a, r, kernel))
    cached = Presentation(m, gens.lift, cover, section, kernel, tuple(pivots), relations)
    m._cache["presentation"] = cached
    logger.debug("modrep.presentation module=%s generators=%d relations=%d", m.label(), r, relations.source_rank)
    return cached


# ---------------------------------------------------------------------------
# Hom, tensor, duals
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class HomSpace:
    """Hom_A(M, N), stored as the images of M's minimal generators (vectors of N^r)."""

    source: Module
    target: Module
    vectors: Mat  # (r * kdim N) x dim

    @property
    def dim(self) -> int:
        return self.vectors.cols

    @property
    def basis(self) -> list[ModuleHom]:
        return [hom_vector_to_map(self.source, self.target, self.vectors.array[:, j]) for j in range(self.dim)]


def hom_vector_to_map(m: Module, n: Module, vector: np.ndarray) -> ModuleHom:
    """The homomorphism sending the t-th minimal generator of m to block t of `vector`."""

    pres = presentation(m)
    r, k = pres.rank, n.kdim
    images = np.asarray(vector, dtype=np.int64).reshape(r, k).T
    lifted = cover_matrix(n, images)
    mat = matmul_mod(lifted, pres.section.array, m.algebra.p)
    return ModuleHom(m, n, Mat(m.field, mat, canonical=True), check=False)


def hom_space(m: Module, n: Module) -> HomSpace:
    _same_algebra(m, n)
    pres = presentation(m)
    constraints = pres.relations.hom_into(n)
    if pres.rank == 0 or n.kdim == 0:
        vectors = Mat.zeros(m.field, pres.rank * n.kdim, 0)
    else:
        vectors = kernel_basis(constraints)
    return HomSpace(m, n, vectors)


def hom_module(m: Module, n: Module) -> SubmoduleEmbedding:
    """Hom_A(M, N) as an A-submodule of N^r (r = number of generators of M)."""

    space = hom_space(m, n)
    ambient = power(n, presentation(m).rank)
    return submodule(ambient, space.vectors, name=f"Hom({m.label()}, {n.label()})", check=False)


def tensor(m: Module, n: Module) -> Module:
    _same_algebra(m, n)
    pres = presentation(m)
    relations = pres.relations.tensor_with(n)
    ambient = power(n, pres.rank)
    return quotient_module(ambient, relations, name=f"{m.label()} (x) {n.label()}", check=False).module


def a_dual(m: Module) -> Module:
    """M* = Hom_A(M, A)."""

    emb = hom_module(m, free_module(m.algebra, 1))
    mod = emb.module
    return Module(mod.algebra, mod.kdim, mod.action, None, f"({m.label()})*", check=False)


def biduality_rank(m: Module) -> tuple[int, int]:
    """Rank of the evaluation map M -> M** and the dimension of M**."""

    a = m.algebra
    one = free_module(a, 1)
    dual = hom_module(m, one)
    dual_gens = minimal_generators(dual.module)
    phis = matmul_mod(dual.basis.array, dual_gens.lift.array, a.p)
    if phis.shape[1] == 0:
        return 0, 0
    evaluation = np.vstack([hom_vector_to_map(m, one, phis[:, j]).mat.array for j in range(phis.shape[1])])
    double_dual_dim = hom_space(dual.module, one).dim
    return rank(Mat(a.field, evaluation, canonical=True)), double_dual_dim


# ---------------------------------------------------------------------------
# Isomorphism testing
# ---------------------------------------------------------------------------

IsoStatus = Literal["iso", "not-iso", "undetermined"]


@dataclass(frozen=True)
class IsoResult:
    status: IsoStatus
    witness: ModuleHom | None = None
    reason: str = ""
    candidates_tried: int = 0

    def __bool__(self) -> bool:
        return self.status == "iso"

    def to_dict(self) -> dict[str, Any]:
        return {"status": self.status, "reason": self.reason, "candidates_tried": self.candidates_tried}


def _invertible(top: np.ndarray, field_: PrimeField) -> bool:
    return rank(Mat(field_, top, canonical=True)) == top.shape[0]


def is_iso(
    m: Module,
    n: Module,
    *,
    seed: int | None = None,
    samples: int | None = None,
    budget: int | None = None,
    enum_max_dim: int | None = None,
) -> IsoResult:
    """Decide M ~= N, with an invertible equivariant witness when true.

    A map between modules of equal k-dimension is invertible exactly when the
    map it induces on M/mM -> N/mN is, so the search runs over the space of
    induced "top" maps, which is at most (generators)^2-dimensional.
    """

    a = _same_algebra(m, n)
    cfg = current_settings()
    seed = cfg.seed if seed is None else seed
    samples = cfg.iso_samples if samples is None else samples
    budget = cfg.iso_budget if budget is None else budget
    enum_max_dim = cfg.iso_enum_max_dim if enum_max_dim is None else enum_max_dim
    p = a.p

    if m.kdim != n.kdim:
        return IsoResult("not-iso", reason="kdim")
    if m.kdim == 0:
        return IsoResult("iso", ModuleHom(m, n, Mat.zeros(a.field, 0, 0), check=False), reason="zero")
    gm, gn = minimal_generators(m), minimal_generators(n)
    if gm.count != gn.count:
        return IsoResult("not-iso", reason="generator-count")
    if m.action_ranks() != n.action_ranks():
        return IsoResult("not-iso", reason="action-ranks")

    space = hom_space(m, n)
    if space.dim == 0:
        return IsoResult("not-iso", reason="no-homs")
    g, k, h = gm.count, n.kdim, space.dim
    images = space.vectors.array.reshape(g, k, h).transpose(1, 0, 2).reshape(k, g * h)
    tops = matmul_mod(gn.top.array, images, p).reshape(g, g, h)
    _, pivots = rref(Mat(a.field, tops.reshape(g * g, h), canonical=True))
    if not pivots:
        return IsoResult("not-iso", reason="top-maps-zero")
    basis_tops = tops[:, :, pivots]
    dim = len(pivots)

    def witness(coeffs: np.ndarray) -> ModuleHom:
        vec = matmul_mod(space.vectors.array[:, pivots], coeffs.reshape(dim, 1), p).reshape(-1)
        return hom_vector_to_map(m, n, vec)

    def attempt(coeffs: np.ndarray) -> bool:
        combo = matmul_mod(basis_tops.reshape(g * g, dim), coeffs.reshape(dim, 1), p).reshape(g, g)
        return _invertible(combo, a.field)

    tried = 0
    for j in range(dim):
        e = np.zeros(dim, dtype=np.int64)
        e[j] = 1
        tried += 1
        if attempt(e):
            return IsoResult("iso", witness(e), reason="basis-element", candidates_tried=tried)

    total = p**dim - 1
    if dim <= enum_max_dim and total <= budget:
        for coeffs in itertools.product(range(p), repeat=dim):
            c = np.asarray(coeffs, dtype=np.int64)
            if not c.any():
                continue
            tried += 1
            if attempt(c):
                return IsoResult("iso", witness(c), reason="enumeration", candidates_tried=tried)
        return IsoResult("not-iso", reason="exhausted-top-maps", candidates_tried=tried)

    rng = np.random.default_rng(seed)
    for _ in range(samples):
        c = rng.integers(0, p, size=dim, dtype=np.int64)
        tried += 1
        if c.any() and attempt(c):
            return IsoResult("iso", witness(c), reason="sampling", candidates_tried=tried)

    for count, coeffs in enumerate(itertools.product(range(p), repeat=dim)):
        if count > budget:
            logger.info("modrep.is_iso.undetermined top_dim=%d budget=%d", dim, budget)
            return IsoResult("undetermined", reason="budget", candidates_tried=tried)
        c = np.asarray(coeffs, dtype=np.int64)
        if not c.any():
            continue
        tried += 1
        if attempt(c):
            return IsoResult("iso", witness(c), reason="enumeration", candidates_tried=tried)
    return IsoResult("not-iso", reason="exhausted-top-maps", candidates_tried=tried)
