"""Exact linear algebra over prime fields.

Matrices are dense int64 numpy arrays holding canonical residues in [0, p).
Every function here is pure: inputs are never mutated and results are fresh,
read-only arrays wrapped in `Mat`.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from typing import Any

import numpy as np

from .errors import NoSolutionError, NotPrimeError, ShapeError

_INT64_LIMIT = 2**63 - 1


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class PrimeField:
    """The field F_p. Elements (scalars) are canonical ints in [0, p)."""

    p: int

    def __post_init__(self) -> None:
        if not isinstance(self.p, int) or not (2 <= self.p < 2**31) or not _is_prime(self.p):
            raise NotPrimeError(f"characteristic must be a prime in [2, 2^31), got {self.p!r}")

    @property
    def characteristic(self) -> int:
        return self.p

    def scalar(self, value: int) -> int:
        return int(value) % self.p

    def inv(self, value: int) -> int:
        v = int(value) % self.p
        if v == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(v, self.p - 2, self.p)

    def __str__(self) -> str:
        return f"F_{self.p}"


def _readonly(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


def _reduce(a: np.ndarray, p: int) -> np.ndarray:
    if a.dtype == object:
        return np.mod(a, p).astype(np.int64)
    return np.mod(a.astype(np.int64), p)


class Mat:
    """Immutable dense matrix over a prime field."""

    __slots__ = ("field", "array")

    field: PrimeField
    array: np.ndarray

    def __init__(self, field: PrimeField, array: Any, *, canonical: bool = False) -> None:
        arr = np.asarray(array)
        if arr.ndim != 2:
            raise ShapeError(f"matrix must be 2-dimensional, got shape {arr.shape}")
        if not canonical or arr.dtype != np.int64:
            arr = _reduce(arr, field.p)
        else:
            arr = arr.copy()
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "array", _readonly(arr))

    def __setattr__(self, name: str, value: Any) -> None:
        raise AttributeError("Mat is immutable")

    # ---- constructors ----

    @classmethod
    def zeros(cls, field: PrimeField, rows: int, cols: int) -> "Mat":
        return cls(field, np.zeros((rows, cols), dtype=np.int64), canonical=True)

    @classmethod
    def identity(cls, field: PrimeField, n: int) -> "Mat":
        return cls(field, np.eye(n, dtype=np.int64), canonical=True)

    @classmethod
    def from_rows(cls, field: PrimeField, rows: Sequence[Sequence[int]], *, cols: int | None = None) -> "Mat":
        if not rows:
            return cls.zeros(field, 0, cols or 0)
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ShapeError("ragged rows")
        return cls(field, np.array([[int(x) % field.p for x in r] for r in rows], dtype=np.int64), canonical=True)

    @classmethod
    def column(cls, field: PrimeField, values: Iterable[int]) -> "Mat":
        vals = [int(v) % field.p for v in values]
        return cls(field, np.array(vals, dtype=np.int64).reshape(len(vals), 1), canonical=True)

    # ---- shape ----

    @property
    def rows(self) -> int:
        return int(self.array.shape[0])

    @property
    def cols(self) -> int:
        return int(self.array.shape[1])

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def entries(self) -> list[list[int]]:
        return [[int(x) for x in row] for row in self.array]

    # ---- arithmetic ----

    def _check(self, other: "Mat") -> None:
        if other.field != self.field:
            raise ShapeError(f"field mismatch: {self.field} vs {other.field}")

    def __matmul__(self, other: "Mat") -> "Mat":
        self._check(other)
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        return Mat(self.field, matmul_mod(self.array, other.array, self.field.p), canonical=True)

    def __add__(self, other: "Mat") -> "Mat":
        self._check(other)
        if self.shape != other.shape:
            raise ShapeError(f"cannot add {self.shape} and {other.shape}")
        return Mat(self.field, np.mod(self.array + other.array, self.field.p), canonical=True)

    def __sub__(self, other: "Mat") -> "Mat":
        self._check(other)
        if self.shape != other.shape:
            raise ShapeError(f"cannot subtract {other.shape} from {self.shape}")
        return Mat(self.field, np.mod(self.array - other.array, self.field.p), canonical=True)

    def __neg__(self) -> "Mat":
        return Mat(self.field, np.mod(-self.array, self.field.p), canonical=True)

    def scale(self, c: int) -> "Mat":
        return Mat(self.field, np.mod(self.array * (int(c) % self.field.p), self.field.p), canonical=True)

    @property
    def T(self) -> "Mat":
        return Mat(self.field, self.array.T, canonical=True)

    def cols_at(self, idx: Sequence[int]) -> "Mat":
        return Mat(self.field, self.array[:, list(idx)], canonical=True)

    def rows_at(self, idx: Sequence[int]) -> "Mat":
        return Mat(self.field, self.array[list(idx), :], canonical=True)

    def is_zero(self) -> bool:
        return not bool(np.any(self.array))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Mat):
            return NotImplemented
        return self.field == other.field and self.shape == other.shape and bool(np.array_equal(self.array, other.array))

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"Mat({self.field}, {self.entries()!r})"


def matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    inner = a.shape[1]
    if inner == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    if inner * (p - 1) ** 2 <= _INT64_LIMIT:
        return np.mod(a @ b, p)
    # Large characteristic: exact Python ints, then back to canonical int64.
    prod = a.astype(object) @ b.astype(object)
    return np.mod(prod, p).astype(np.int64)


def hstack(field: PrimeField, mats: Sequence[Mat], *, rows: int | None = None) -> Mat:
    if not mats:
        return Mat.zeros(field, rows or 0, 0)
    return Mat(field, np.hstack([m.array for m in mats]), canonical=True)


def vstack(field: PrimeField, mats: Sequence[Mat], *, cols: int | None = None) -> Mat:
    if not mats:
        return Mat.zeros(field, 0, cols or 0)
    return Mat(field, np.vstack([m.array for m in mats]), canonical=True)


def _rref_array(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    r = np.array(a, dtype=np.int64, copy=True)
    n_rows, n_cols = r.shape
    pivots: list[int] = []
    row = 0
    for col in range(n_cols):
        if row >= n_rows:
            break
        nz = np.flatnonzero(r[row:, col])
        if nz.size == 0:
            continue
        piv = row + int(nz[0])
        if piv != row:
            r[[row, piv]] = r[[piv, row]]
        inv = pow(int(r[row, col]), p - 2, p)
        if inv != 1:
            r[row] = np.mod(r[row] * inv, p)
        factors = r[:, col].copy()
        factors[row] = 0
        targets = np.flatnonzero(factors)
        if targets.size:
            r[targets] = np.mod(r[targets] - np.outer(factors[targets], r[row]), p)
        pivots.append(col)
        row += 1
    return r, pivots


def rref(m: Mat) -> tuple[Mat, list[int]]:
    """Reduced row echelon form with first-nonzero pivoting in column order."""

    r, pivots = _rref_array(m.array, m.field.p)
    return Mat(m.field, r, canonical=True), pivots


def rank(m: Mat) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    # Eliminate on the smaller orientation; rank is transpose-invariant.
    a = m.array if m.rows <= m.cols else m.array.T
    return len(_rref_array(a, m.field.p)[1])


def kernel_basis(m: Mat) -> Mat:
    """Columns form a basis of the right null space {x : m x = 0}."""

    p = m.field.p
    n = m.cols
    r, pivots = _rref_array(m.array, p)
    piv_set = set(pivots)
    free = [j for j in range(n) if j not in piv_set]
    k = np.zeros((n, len(free)), dtype=np.int64)
    if free:
        k[free, np.arange(len(free))] = 1
        if pivots:
            k[pivots, :] = np.mod(-r[: len(pivots)][:, free], p)
    return Mat(m.field, k, canonical=True)


def solve(m: Mat, b: Mat) -> Mat:
    """One particular solution X of m X = b (free variables set to 0)."""

    if b.rows != m.rows:
        raise ShapeError(f"right-hand side has {b.rows} rows, expected {m.rows}")
    n = m.cols
    aug = np.hstack([m.array, b.array])
    r, pivots = _rref_array(aug, m.field.p)
    if pivots and pivots[-1] >= n:
        raise NoSolutionError("right-hand side is not in the column space")
    x = np.zeros((n, b.cols), dtype=np.int64)
    if pivots:
        x[pivots, :] = r[: len(pivots), n:]
    return Mat(m.field, x, canonical=True)


def column_space(m: Mat) -> Mat:
    """Basis of the image: the pivot columns of m itself."""

    _, pivots = _rref_array(m.array, m.field.p)
    return m.cols_at(pivots)


def inverse(m: Mat) -> Mat:
    if m.rows != m.cols:
        raise ShapeError(f"cannot invert a {m.shape} matrix")
    if rank(m) != m.rows:
        raise NoSolutionError("matrix is singular")
    return solve(m, Mat.identity(m.field, m.rows))


def canonical_basis(span: Mat) -> tuple[Mat, list[int]]:
    """Reduced basis (columns) of the column span of `span`, plus its pivot rows.

    The coordinates of any vector w in the span are w[pivot_rows].
    """

    r, pivots = _rref_array(span.array.T, span.field.p)
    basis = r[: len(pivots)].T
    return Mat(span.field, basis.reshape(span.rows, len(pivots)), canonical=True), pivots


def quotient_projection(span: Mat) -> tuple[Mat, list[int]]:
    """Quotient map V -> V/S for S the column span of `span`.

    Returns Q with Q[:, complement] = I and the complement coordinates, i.e.
    the non-pivot positions of the reduced basis of S. Q kills S exactly.
    """

    p = span.field.p
    n = span.rows
    r, pivots = _rref_array(span.array.T, p)
    piv_set = set(pivots)
    complement = [j for j in range(n) if j not in piv_set]
    q = np.zeros((len(complement), n), dtype=np.int64)
    if complement:
        q[np.arange(len(complement)), complement] = 1
        if pivots:
            q[:, pivots] = np.mod(-r[: len(pivots)][:, complement].T, p)
    return Mat(span.field, q, canonical=True), complement


def random_matrix(field: PrimeField, rows: int, cols: int, rng: np.random.Generator) -> Mat:
    return Mat(field, rng.integers(0, field.p, size=(rows, cols), dtype=np.int64), canonical=True)


def random_invertible(field: PrimeField, n: int, rng: np.random.Generator) -> Mat:
    while True:
        m = random_matrix(field, n, n, rng)
        if rank(m) == n:
            return m
