from __future__ import annotations

import numpy as np
import pytest

from tatekit.algebra import (
    annihilator_ideal,
    canonical_module,
    from_structure_constants,
    ideal,
    ideal_from_labels,
    is_gorenstein,
    monomial_algebra,
    monomial_complete_intersection,
    quotient_algebra,
    socle,
)
from tatekit.errors import (
    BadPowerError,
    BadUnitError,
    ImproperIdealError,
    InputError,
    NonAssociativeError,
    NonCommutativeError,
    NonLocalError,
    ShapeError,
)
from tatekit.exactla import PrimeField

F2 = PrimeField(2)
F3 = PrimeField(3)


def _dual_numbers() -> np.ndarray:
    c = np.zeros((2, 2, 2), dtype=np.int64)
    c[0, 0, 0] = 1
    c[0, 1, 1] = 1
    c[1, 0, 1] = 1
    return c


def test_complete_intersection_basis_and_socle() -> None:
    a = monomial_complete_intersection(F2, [2, 2], name="B")
    assert a.dim == 4
    assert a.labels == ("1", "x", "y", "x*y")
    assert socle(a).describe() == ["x*y"]
    assert is_gorenstein(a)
    assert a.maximal_ideal().dim == 3
    assert a.describe()["gorenstein"] is True


def test_multiplication_follows_the_monomials() -> None:
    a = monomial_complete_intersection(F3, [4])
    x = a.element("x")
    assert a.mul(x, x).tolist() == a.element("x^2").tolist()
    assert a.mul(a.element("x^2"), a.element("x^2")).tolist() == [0, 0, 0, 0]
    assert a.residue(a.unit_vector()) == 1
    assert a.residue(x) == 0


def test_monomial_algebra_with_two_dimensional_socle() -> None:
    a = monomial_algebra(F2, ["x", "y"], [[2, 0], [1, 1], [0, 2]])
    assert a.labels == ("1", "x", "y")
    assert a.socle_dim == 2
    assert not is_gorenstein(a)


def test_structure_constants_round_trip_through_same_structure() -> None:
    a = from_structure_constants(F2, ["1", "x"], _dual_numbers(), [1, 0])
    b = monomial_complete_intersection(F2, [2])
    assert a.same_structure(b)
    assert not a.same_structure(monomial_complete_intersection(F3, [2]))


def test_non_commutative_constants_are_rejected() -> None:
    c = _dual_numbers()
    c[1, 0, 1] = 0
    with pytest.raises(NonCommutativeError):
        from_structure_constants(F2, ["1", "x"], c, [1, 0])


def test_wrong_unit_is_rejected() -> None:
    with pytest.raises(BadUnitError):
        from_structure_constants(F2, ["1", "x"], _dual_numbers(), [0, 1])


def test_non_associative_constants_are_rejected() -> None:
    c = np.zeros((3, 3, 3), dtype=np.int64)
    for j in range(3):
        c[0, j, j] = 1
        c[j, 0, j] = 1
    c[1, 1, 2] = 1  # x*x = y
    c[2, 2, 1] = 1  # y*y = x
    with pytest.raises(NonAssociativeError):
        from_structure_constants(F2, ["1", "x", "y"], c, [1, 0, 0])


def test_product_of_fields_is_not_local() -> None:
    c = np.zeros((2, 2, 2), dtype=np.int64)
    c[0, 0, 0] = 1
    c[1, 1, 1] = 1
    with pytest.raises(NonLocalError):
        from_structure_constants(F2, ["e1", "e2"], c, [1, 1])


def test_constants_shape_is_checked() -> None:
    with pytest.raises(ShapeError):
        from_structure_constants(F2, ["1", "x"], np.zeros((2, 2, 3), dtype=np.int64), [1, 0])


@pytest.mark.parametrize("powers", [[], [1], [2, 0]])
def test_complete_intersection_powers_must_be_at_least_two(powers: list[int]) -> None:
    with pytest.raises(BadPowerError):
        monomial_complete_intersection(F2, powers)


def test_monomial_ideal_must_be_primary_and_proper() -> None:
    with pytest.raises(ImproperIdealError):
        monomial_algebra(F2, ["x"], [[0]])
    with pytest.raises(InputError):
        monomial_algebra(F2, ["x", "y"], [[2, 0], [1, 1]])


def test_annihilators_and_quotients() -> None:
    a = monomial_complete_intersection(F3, [4], name="A")
    x = ideal_from_labels(a, ["x"])
    assert x.dim == 3
    assert annihilator_ideal(x) == ideal_from_labels(a, ["x^3"])
    assert annihilator_ideal(annihilator_ideal(x)) == x
    assert annihilator_ideal(ideal(a, [])).dim == a.dim

    b, q = quotient_algebra(a, ideal_from_labels(a, ["x^2"]))
    assert b.dim == 2
    assert q.shape == (2, 4)
    assert is_gorenstein(b)

    with pytest.raises(ImproperIdealError):
        quotient_algebra(a, ideal(a, [a.unit_vector()]))


def test_unknown_label_is_an_input_error() -> None:
    a = monomial_complete_intersection(F2, [2])
    with pytest.raises(InputError):
        a.element("z")


def test_canonical_module_has_the_dimension_of_the_algebra() -> None:
    a = monomial_complete_intersection(F2, [2, 2])
    omega = canonical_module(a)
    assert omega.kdim == a.dim
