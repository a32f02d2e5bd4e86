from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from tatekit.errors import NoSolutionError, NotPrimeError, ShapeError
from tatekit.exactla import (
    Mat,
    PrimeField,
    column_space,
    inverse,
    kernel_basis,
    quotient_projection,
    random_invertible,
    random_matrix,
    rank,
    solve,
)

primes = st.sampled_from([2, 3, 5, 7])
dims = st.integers(min_value=1, max_value=6)
seeds = st.integers(min_value=0, max_value=2**32 - 1)


@given(primes, dims, dims, seeds)
@settings(max_examples=60, deadline=None)
def test_rank_nullity_and_kernel(p: int, rows: int, cols: int, seed: int) -> None:
    f = PrimeField(p)
    m = random_matrix(f, rows, cols, np.random.default_rng(seed))
    k = kernel_basis(m)
    assert rank(m) + k.cols == cols
    assert (m @ k).is_zero()
    assert rank(k) == k.cols


@given(primes, dims, dims, seeds)
@settings(max_examples=60, deadline=None)
def test_solve_recovers_a_preimage(p: int, rows: int, cols: int, seed: int) -> None:
    f = PrimeField(p)
    rng = np.random.default_rng(seed)
    m = random_matrix(f, rows, cols, rng)
    x = random_matrix(f, cols, 2, rng)
    b = m @ x
    assert m @ solve(m, b) == b


@given(primes, dims, seeds)
@settings(max_examples=40, deadline=None)
def test_inverse_of_random_invertible(p: int, n: int, seed: int) -> None:
    f = PrimeField(p)
    m = random_invertible(f, n, np.random.default_rng(seed))
    assert m @ inverse(m) == Mat.identity(f, n)
    assert inverse(m) @ m == Mat.identity(f, n)


@given(primes, dims, dims, seeds)
@settings(max_examples=40, deadline=None)
def test_quotient_projection_kills_the_span(p: int, rows: int, cols: int, seed: int) -> None:
    f = PrimeField(p)
    span = random_matrix(f, rows, cols, np.random.default_rng(seed))
    q, complement = quotient_projection(span)
    assert (q @ span).is_zero()
    assert q.rows == rows - rank(span) == len(complement)
    assert rank(q) == q.rows


def test_column_space_keeps_rank() -> None:
    f = PrimeField(5)
    m = Mat.from_rows(f, [[1, 2, 3], [2, 4, 6], [0, 1, 1]])
    assert rank(m) == 2
    assert column_space(m).cols == 2


def test_solve_rejects_rhs_outside_column_space() -> None:
    f = PrimeField(3)
    m = Mat.from_rows(f, [[1, 0], [0, 0]])
    with pytest.raises(NoSolutionError):
        solve(m, Mat.column(f, [0, 1]))


def test_inverse_rejects_singular_and_non_square() -> None:
    f = PrimeField(2)
    with pytest.raises(NoSolutionError):
        inverse(Mat.from_rows(f, [[1, 1], [1, 1]]))
    with pytest.raises(ShapeError):
        inverse(Mat.zeros(f, 2, 3))


def test_entries_are_reduced_mod_p() -> None:
    f = PrimeField(7)
    m = Mat(f, [[8, -1], [14, 3]])
    assert m.entries() == [[1, 6], [0, 3]]
    assert f.inv(3) * 3 % 7 == 1


def test_shape_mismatch_is_an_input_error() -> None:
    f = PrimeField(3)
    with pytest.raises(ShapeError):
        Mat.zeros(f, 2, 3) @ Mat.zeros(f, 2, 3)
    with pytest.raises(ShapeError):
        Mat.zeros(f, 2, 2) + Mat.zeros(PrimeField(5), 2, 2)


@pytest.mark.parametrize("p", [0, 1, 4, 9, 15])
def test_field_characteristic_must_be_prime(p: int) -> None:
    with pytest.raises(NotPrimeError):
        PrimeField(p)


def test_matrices_are_immutable() -> None:
    m = Mat.identity(PrimeField(2), 2)
    with pytest.raises(AttributeError):
        m.field = PrimeField(3)  # type: ignore[misc]
    with pytest.raises(ValueError):
        m.array[0, 0] = 0
