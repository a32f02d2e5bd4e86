"""Finite-dimensional commutative local algebras given by structure constants.

An algebra of dimension n stores c with shape (n, n, n): c[i, j, :] is the
coordinate vector of b_i * b_j. Validation is exhaustive at construction and
the maximal ideal and socle are computed eagerly, so an `Algebra` instance is
always a valid local algebra whose residue field is the prime field itself.
"""

from __future__ import annotations

import itertools
import logging
from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import numpy as np

from .errors import (
    BadPowerError,
    BadUnitError,
    ImproperIdealError,
    InputError,
    NonAssociativeError,
    NonCommutativeError,
    NonLocalError,
    ShapeError,
)
from .exactla import Mat, PrimeField, canonical_basis, kernel_basis, matmul_mod, quotient_projection, rref, vstack

if TYPE_CHECKING:
    from .modrep import Module

logger = logging.getLogger(__name__)

_DEFAULT_VARS = ("x", "y", "z", "w")


def _readonly(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class Algebra:
    field: PrimeField
    labels: tuple[str, ...]
    constants: np.ndarray
    unit: tuple[int, ...]
    name: str = ""

    left: tuple[Mat, ...] = field(init=False, repr=False)
    left_stack: np.ndarray = field(init=False, repr=False)
    radical_basis: Mat = field(init=False, repr=False)
    socle_basis: Mat = field(init=False, repr=False)
    residue_row: np.ndarray = field(init=False, repr=False)
    radical_generators: Mat = field(init=False, repr=False)

    def __post_init__(self) -> None:
        p = self.field.p
        c = np.mod(np.asarray(self.constants, dtype=np.int64), p)
        n = len(self.labels)
        if n == 0:
            raise ShapeError("an algebra needs at least one basis element")
        if c.shape != (n, n, n):
            raise ShapeError(f"structure constants must have shape ({n}, {n}, {n}), got {c.shape}")
        if len(self.unit) != n:
            raise ShapeError(f"unit must have {n} coordinates, got {len(self.unit)}")
        if len(set(self.labels)) != n:
            raise ShapeError("basis labels must be distinct")
        object.__setattr__(self, "constants", _readonly(c))
        object.__setattr__(self, "unit", tuple(int(u) % p for u in self.unit))

        for i, j in zip(*np.nonzero(np.any(c != c.transpose(1, 0, 2), axis=2))):
            raise NonCommutativeError(
                f"b_{i}*b_{j} != b_{j}*b_{i} ({self.labels[i]}*{self.labels[j]} differs from reverse order)"
            )

        left = tuple(Mat(self.field, c[i].T, canonical=True) for i in range(n))
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "left_stack", _readonly(np.stack([m.array for m in left]).reshape(n, n * n)))

        if not np.array_equal(self.mult_matrix(self.unit).array, np.eye(n, dtype=np.int64)):
            raise BadUnitError("the given unit does not act as the identity on every basis element")

        self._check_associative()
        radical = self._radical()
        if radical.cols != n - 1:
            raise NonLocalError(
                f"nilpotent elements span dimension {radical.cols}, expected {n - 1} for a local algebra "
                "with residue field the prime field"
            )
        object.__setattr__(self, "radical_basis", radical)
        q, _ = quotient_projection(radical)
        scale = self.field.inv(int(matmul_mod(q.array, self.unit_vector().reshape(n, 1), p)[0, 0]))
        object.__setattr__(self, "residue_row", _readonly(np.mod(q.array[0] * scale, p)))
        if n == 1:
            socle = Mat.identity(self.field, 1)
        else:
            socle = kernel_basis(vstack(self.field, [self.mult_matrix(v) for v in _columns(radical)]))
        object.__setattr__(self, "socle_basis", canonical_basis(socle)[0])
        object.__setattr__(self, "radical_generators", self._radical_generators(radical))
        logger.debug("algebra.validated name=%s dim=%d socle_dim=%d", self.name, n, self.socle_basis.cols)

    # ---- validation helpers ----

    def _check_associative(self) -> None:
        n = self.dim
        p = self.field.p
        c = self.constants
        flat = c.reshape(n, n * n)
        by_pair = c.reshape(n * n, n)
        for i in range(n):
            # (b_i b_j) b_l for all j, l  vs  b_i (b_j b_l)
            lhs = matmul_mod(c[i], flat, p).reshape(n, n, n)
            rhs = matmul_mod(by_pair, c[i], p).reshape(n, n, n)
            bad = np.argwhere(np.any(lhs != rhs, axis=2))
            if bad.size:
                j, l_ = (int(x) for x in bad[0])
                raise NonAssociativeError(
                    f"({self.labels[i]}*{self.labels[j]})*{self.labels[l_]} != "
                    f"{self.labels[i]}*({self.labels[j]}*{self.labels[l_]})"
                )

    def _radical(self) -> Mat:
        """Basis of the nilpotent elements.

        For p > dim the nilradical is the radical of the trace form. Otherwise
        it is the kernel of an iterated Frobenius x -> x^(p^m) with p^m >= dim,
        which is F_p-linear in characteristic p.
        """

        n = self.dim
        p = self.field.p
        if n == 1:
            return Mat.zeros(self.field, 1, 0)
        if p > n:
            traces = np.array([int(np.trace(m.array)) % p for m in self.left], dtype=np.int64)
            gram = matmul_mod(self.constants.reshape(n * n, n), traces.reshape(n, 1), p).reshape(n, n)
            return kernel_basis(Mat(self.field, gram, canonical=True))
        cols = []
        for j in range(n):
            e = np.zeros(n, dtype=np.int64)
            e[j] = 1
            x = e
            for _ in range(p - 1):
                x = self.mul(x, e)
            cols.append(x)
        frob = Mat(self.field, np.stack(cols, axis=1), canonical=True)
        power = frob
        reach = p
        while reach < n:
            power = power @ frob
            reach *= p
        return kernel_basis(power)

    def _radical_generators(self, radical: Mat) -> Mat:
        """Elements of m lifting a basis of m/m^2; they generate m as an ideal."""

        if radical.cols == 0:
            return radical
        squares = [matmul_mod(self.mult_matrix(v).array, radical.array, self.p) for v in _columns(radical)]
        m2 = Mat(self.field, np.hstack(squares), canonical=True)
        q, _ = quotient_projection(m2)
        image = Mat(self.field, matmul_mod(q.array, radical.array, self.p), canonical=True)
        _, pivots = rref(image)
        return radical.cols_at(pivots)

    # ---- arithmetic ----

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def p(self) -> int:
        return self.field.p

    def vector(self, values: Sequence[int]) -> np.ndarray:
        if len(values) != self.dim:
            raise ShapeError(f"element needs {self.dim} coordinates, got {len(values)}")
        return np.mod(np.asarray(values, dtype=np.int64), self.p)

    def basis_vector(self, i: int) -> np.ndarray:
        e = np.zeros(self.dim, dtype=np.int64)
        e[i] = 1
        return e

    def element(self, label: str) -> np.ndarray:
        try:
            return self.basis_vector(self.labels.index(label))
        except ValueError:
            raise InputError(f"unknown basis label {label!r}; known: {', '.join(self.labels)}") from None

    def unit_vector(self) -> np.ndarray:
        return np.asarray(self.unit, dtype=np.int64)

    def mul(self, x: Sequence[int] | np.ndarray, y: Sequence[int] | np.ndarray) -> np.ndarray:
        n = self.dim
        xv = np.asarray(x, dtype=np.int64).reshape(1, n)
        t = matmul_mod(xv, self.constants.reshape(n, n * n), self.p).reshape(n, n)
        return matmul_mod(np.asarray(y, dtype=np.int64).reshape(1, n), t, self.p).reshape(n)

    def mult_matrix(self, v: Sequence[int] | np.ndarray) -> Mat:
        """k-matrix of multiplication by the element v."""

        n = self.dim
        out = matmul_mod(np.asarray(v, dtype=np.int64).reshape(1, n), self.left_stack, self.p).reshape(n, n)
        return Mat(self.field, out, canonical=True)

    def residue(self, v: Sequence[int] | np.ndarray) -> int:
        """Image of v in the residue field A/m."""

        row = self.residue_row.reshape(1, self.dim)
        return int(matmul_mod(row, np.asarray(v, dtype=np.int64).reshape(self.dim, 1), self.p)[0, 0])

    # ---- derived data ----

    @property
    def socle_dim(self) -> int:
        return self.socle_basis.cols

    def maximal_ideal(self) -> "Ideal":
        return Ideal(self, tuple(tuple(int(x) for x in col) for col in _columns(self.radical_basis)))

    def same_structure(self, other: "Algebra") -> bool:
        return (
            self.field == other.field
            and self.labels == other.labels
            and self.unit == other.unit
            and bool(np.array_equal(self.constants, other.constants))
        )

    def describe(self) -> dict[str, object]:
        return {
            "name": self.name,
            "char": self.p,
            "dim": self.dim,
            "labels": list(self.labels),
            "gorenstein": is_gorenstein(self),
            "socle": [_render(self, col) for col in _columns(self.socle_basis)],
            "radical_dim": self.radical_basis.cols,
        }

    def __repr__(self) -> str:
        return f"Algebra({self.name or 'unnamed'}, {self.field}, dim={self.dim})"


def _columns(m: Mat) -> list[np.ndarray]:
    return [m.array[:, j] for j in range(m.cols)]


def _render(a: Algebra, v: np.ndarray) -> str:
    terms = []
    for i, coeff in enumerate(int(x) for x in v):
        if coeff == 0:
            continue
        terms.append(a.labels[i] if coeff == 1 else f"{coeff}*{a.labels[i]}")
    return " + ".join(terms) or "0"


@dataclass(frozen=True, eq=False)
class Ideal:
    """Ideal generated by coordinate vectors; `basis` is its canonical spanning basis."""

    algebra: Algebra
    generators: tuple[tuple[int, ...], ...]
    basis: Mat = field(init=False, repr=False)
    pivots: tuple[int, ...] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        a = self.algebra
        gens = [a.vector(g) for g in self.generators]
        if gens:
            g = np.stack(gens, axis=1)
            span = np.hstack([matmul_mod(m.array, g, a.p) for m in a.left])
        else:
            span = np.zeros((a.dim, 0), dtype=np.int64)
        basis, pivots = canonical_basis(Mat(a.field, span, canonical=True))
        object.__setattr__(self, "generators", tuple(tuple(int(x) for x in v) for v in gens))
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "pivots", tuple(pivots))

    @property
    def dim(self) -> int:
        return self.basis.cols

    def contains(self, v: Sequence[int] | np.ndarray) -> bool:
        vec = np.asarray(v, dtype=np.int64).reshape(self.algebra.dim, 1)
        q, _ = quotient_projection(self.basis)
        return not bool(np.any(matmul_mod(q.array, vec, self.algebra.p)))

    def is_subideal_of(self, other: "Ideal") -> bool:
        return all(other.contains(col) for col in _columns(self.basis))

    def __add__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.algebra, self.generators + other.generators)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Ideal):
            return NotImplemented
        return other.algebra is self.algebra and other.basis == self.basis

    __hash__ = None  # type: ignore[assignment]

    def describe(self) -> list[str]:
        return [_render(self.algebra, col) for col in _columns(self.basis)]

    def __repr__(self) -> str:
        return f"Ideal({', '.join(self.describe()) or '0'})"


def ideal(a: Algebra, generators: Sequence[Sequence[int]]) -> Ideal:
    return Ideal(a, tuple(tuple(int(x) for x in g) for g in generators))


def ideal_from_labels(a: Algebra, labels: Sequence[str]) -> Ideal:
    return Ideal(a, tuple(tuple(int(x) for x in a.element(lbl)) for lbl in labels))


def from_structure_constants(
    field_: PrimeField,
    labels: Sequence[str],
    constants: Sequence[Sequence[Sequence[int]]] | np.ndarray,
    unit: Sequence[int],
    *,
    name: str = "",
) -> Algebra:
    return Algebra(field_, tuple(str(x) for x in labels), np.asarray(constants, dtype=np.int64), tuple(unit), name)


def _monomial_label(variables: Sequence[str], exps: Sequence[int]) -> str:
    parts = []
    for v, e in zip(variables, exps):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
    return "*".join(parts) or "1"


def monomial_algebra(
    field_: PrimeField,
    variables: Sequence[str],
    generators: Sequence[Sequence[int]],
    *,
    name: str = "",
) -> Algebra:
    """k[vars]/I for an m-primary monomial ideal I given by exponent vectors.

    The basis is the standard monomials (those outside I), ordered by total
    degree and then with higher powers of earlier variables first.
    """

    nvars = len(variables)
    if nvars == 0:
        raise InputError("at least one variable is required")
    gens = [tuple(int(e) for e in g) for g in generators]
    for g in gens:
        if len(g) != nvars or any(e < 0 for e in g):
            raise ShapeError(f"monomial generator {g} does not match variables {list(variables)}")
        if sum(g) == 0:
            raise ImproperIdealError("the unit monomial generates the whole ring")
    bounds = []
    for i in range(nvars):
        pure = [g[i] for g in gens if all(e == 0 for k, e in enumerate(g) if k != i)]
        if not pure:
            raise InputError(f"ideal is not primary to the maximal ideal: no pure power of {variables[i]}")
        bounds.append(min(pure))

    def standard(exps: Sequence[int]) -> bool:
        return not any(all(e >= ge for e, ge in zip(exps, g)) for g in gens)

    monomials = [e for e in itertools.product(*(range(b) for b in bounds)) if standard(e)]
    monomials.sort(key=lambda e: (sum(e), tuple(-x for x in e)))
    index = {e: i for i, e in enumerate(monomials)}
    n = len(monomials)
    c = np.zeros((n, n, n), dtype=np.int64)
    for i, ei in enumerate(monomials):
        for j, ej in enumerate(monomials):
            k = index.get(tuple(a + b for a, b in zip(ei, ej)))
            if k is not None:
                c[i, j, k] = 1
    unit = [0] * n
    unit[0] = 1
    labels = tuple(_monomial_label(variables, e) for e in monomials)
    return Algebra(field_, labels, c, tuple(unit), name)


def monomial_complete_intersection(
    field_: PrimeField,
    powers: Sequence[int],
    variables: Sequence[str] | None = None,
    *,
    name: str = "",
) -> Algebra:
    """k[x_1..x_n]/(x_1^a_1, ..., x_n^a_n)."""

    powers = [int(a) for a in powers]
    if not powers:
        raise BadPowerError("at least one power is required")
    if any(a < 2 for a in powers):
        raise BadPowerError(f"every power must be >= 2, got {powers}")
    if variables is None:
        variables = _DEFAULT_VARS[: len(powers)] if len(powers) <= len(_DEFAULT_VARS) else [
            f"x{i + 1}" for i in range(len(powers))
        ]
    if len(variables) != len(powers):
        raise ShapeError("one variable name per power is required")
    gens = []
    for i, a in enumerate(powers):
        g = [0] * len(powers)
        g[i] = a
        gens.append(g)
    return monomial_algebra(field_, variables, gens, name=name)


def is_gorenstein(a: Algebra) -> bool:
    return a.socle_dim == 1


def socle(a: Algebra) -> Ideal:
    return Ideal(a, tuple(tuple(int(x) for x in col) for col in _columns(a.socle_basis)))


def annihilator_ideal(i: Ideal) -> Ideal:
    """(0 : i) = {r : r * i = 0}."""

    a = i.algebra
    if i.dim == 0:
        return Ideal(a, (tuple(int(x) for x in a.unit),))
    stacked = vstack(a.field, [a.mult_matrix(col) for col in _columns(i.basis)])
    kernel = kernel_basis(stacked)
    return Ideal(a, tuple(tuple(int(x) for x in col) for col in _columns(kernel)))


def quotient_algebra(a: Algebra, i: Ideal) -> tuple[Algebra, Mat]:
    """A/i with basis the complement coordinates of i, plus the projection A -> A/i."""

    if i.algebra is not a:
        raise InputError("ideal belongs to a different algebra")
    if i.dim == a.dim:
        raise ImproperIdealError("cannot form the quotient by the whole algebra")
    if i.dim == 0:
        return a, Mat.identity(a.field, a.dim)
    q, complement = quotient_projection(i.basis)
    r = len(complement)
    products = a.constants[np.ix_(complement, complement)].reshape(r * r, a.dim)
    c = matmul_mod(products, q.array.T, a.p).reshape(r, r, r)
    unit = matmul_mod(q.array, a.unit_vector().reshape(a.dim, 1), a.p).reshape(r)
    labels = tuple(a.labels[k] for k in complement)
    name = f"{a.name}/({', '.join(i.describe())})" if a.name else ""
    b = Algebra(a.field, labels, c, tuple(int(u) for u in unit), name)
    logger.debug("algebra.quotient ambient_dim=%d ideal_dim=%d quotient_dim=%d", a.dim, i.dim, b.dim)
    return b, q


def canonical_module(a: Algebra) -> "Module":
    """A^vee = Hom_k(A, k); realizes both the canonical module and E(k)."""

    from .modrep import free_module, matlis_dual

    return matlis_dual(free_module(a, 1))
