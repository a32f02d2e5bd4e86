from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from tatekit.algebra import ideal_from_labels, monomial_complete_intersection
from tatekit.corpus import corpus_algebra, corpus_modules
from tatekit.errors import AlgebraMismatchError, BadActionError, NotEquivariantError, NotInvariantError, ShapeError
from tatekit.exactla import Mat, PrimeField, random_invertible, rank
from tatekit.homalg import free_rank, strip_free
from tatekit.modrep import (
    Module,
    ModuleHom,
    a_dual,
    annihilator,
    biduality_rank,
    change_basis,
    cyclic_module,
    direct_sum,
    free_module,
    hom_space,
    is_iso,
    matlis_dual,
    minimal_generators,
    quotient_module,
    residue_field,
    submodule,
    tensor,
)


def _b():
    return corpus_algebra("f2-x2y2")


def test_cyclic_modules_have_the_expected_size() -> None:
    a = _b()
    assert residue_field(a).kdim == 1
    assert cyclic_module(a, ideal_from_labels(a, ["x"])).kdim == 2
    assert free_module(a, 2).kdim == 8
    assert minimal_generators(free_module(a, 2)).count == 2


def test_hom_and_tensor_of_two_cyclic_modules() -> None:
    a = _b()
    mx = cyclic_module(a, ideal_from_labels(a, ["x"]))
    my = cyclic_module(a, ideal_from_labels(a, ["y"]))
    assert hom_space(mx, my).dim == 1
    assert hom_space(mx, mx).dim == 2
    assert tensor(mx, my).kdim == 1
    assert tensor(mx, free_module(a, 1)).kdim == 2


def test_hom_space_basis_maps_are_equivariant() -> None:
    a = _b()
    k = residue_field(a)
    one = free_module(a, 1)
    space = hom_space(k, one)
    assert space.dim == 1
    for f in space.basis:
        ModuleHom(k, one, f.mat)  # check=True re-validates equivariance


def test_a_dual_of_cyclic_modules() -> None:
    a = _b()
    assert a_dual(residue_field(a)).kdim == 1
    mx = cyclic_module(a, ideal_from_labels(a, ["x"]))
    assert a_dual(mx).kdim == 2
    assert biduality_rank(residue_field(a)) == (1, 1)


def test_matlis_dual_is_an_involution_up_to_isomorphism() -> None:
    a = _b()
    for m in corpus_modules(a):
        assert is_iso(matlis_dual(matlis_dual(m)), m)


def test_distinct_cyclic_modules_are_not_isomorphic() -> None:
    a = _b()
    mx = cyclic_module(a, ideal_from_labels(a, ["x"]))
    my = cyclic_module(a, ideal_from_labels(a, ["y"]))
    result = is_iso(mx, my)
    assert result.status == "not-iso"
    assert not is_iso(residue_field(a), mx)
    assert is_iso(residue_field(a), residue_field(a)).status == "iso"


@given(st.integers(min_value=0, max_value=2**32 - 1))
@settings(max_examples=20, deadline=None)
def test_change_of_basis_gives_an_isomorphic_module(seed: int) -> None:
    a = corpus_algebra("f3-x4")
    m = cyclic_module(a, ideal_from_labels(a, ["x^2"]))
    p = random_invertible(a.field, m.kdim, np.random.default_rng(seed))
    moved = change_basis(m, p)
    result = is_iso(m, moved)
    assert result.status == "iso"
    assert result.witness is not None and result.witness.is_iso()


def test_annihilator_of_a_cyclic_module_is_its_ideal() -> None:
    a = _b()
    i = ideal_from_labels(a, ["x"])
    assert annihilator(cyclic_module(a, i)) == i
    assert annihilator(free_module(a, 1)).dim == 0
    assert annihilator(residue_field(a)) == a.maximal_ideal()


def test_free_summands_are_split_off() -> None:
    a = _b()
    k = residue_field(a)
    m = direct_sum(k, free_module(a, 1))
    assert free_rank(m) == 1
    assert strip_free(m).kdim == 1
    assert is_iso(strip_free(m), k)
    assert free_rank(k) == 0


def test_action_axioms_are_checked() -> None:
    a = monomial_complete_intersection(PrimeField(2), [2])
    f = a.field
    with pytest.raises(BadActionError):
        Module(a, 1, (Mat.zeros(f, 1, 1), Mat.zeros(f, 1, 1)))
    with pytest.raises(BadActionError):
        Module(a, 1, (Mat.identity(f, 1), Mat.identity(f, 1)))
    with pytest.raises(ShapeError):
        Module(a, 2, (Mat.identity(f, 2), Mat.zeros(f, 1, 1)))
    ok = Module(a, 1, (Mat.identity(f, 1), Mat.zeros(f, 1, 1)))
    assert is_iso(ok, residue_field(a))


def test_non_equivariant_matrix_is_rejected() -> None:
    a = _b()
    k = residue_field(a)
    one = free_module(a, 1)
    with pytest.raises(NotEquivariantError):
        ModuleHom(k, one, Mat.column(a.field, [1, 0, 0, 0]))


def test_modules_over_different_algebras_do_not_mix() -> None:
    a = _b()
    other = corpus_algebra("f2-x2")
    with pytest.raises(AlgebraMismatchError):
        hom_space(residue_field(a), residue_field(other))


def test_submodules_and_quotients_of_the_free_module() -> None:
    b = corpus_algebra("f2-x2y2")
    a = free_module(b, 1)
    span = ideal_from_labels(b, ["x"]).basis
    sub = submodule(a, span)
    assert sub.module.kdim == 2
    assert is_iso(sub.module, cyclic_module(b, ideal_from_labels(b, ["x"])))
    quo = quotient_module(a, span)
    assert quo.module.kdim == 2
    assert rank(quo.as_hom().mat) == 2
    with pytest.raises(NotInvariantError):
        submodule(a, Mat(b.field, np.array([[1], [0], [0], [0]])))
    with pytest.raises(ShapeError):
        quotient_module(a, Mat(b.field, np.array([[1], [0]])))
