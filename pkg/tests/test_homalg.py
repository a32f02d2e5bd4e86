from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from tatekit.algebra import ideal_from_labels, is_gorenstein, monomial_complete_intersection
from tatekit.corpus import corpus_algebra, corpus_ids, corpus_modules
from tatekit.errors import DegreeError, NotGorensteinError, WindowError
from tatekit.exactla import PrimeField, random_invertible
from tatekit.homalg import (
    complete_resolution,
    cosyzygy,
    detect_periodicity,
    ext_basis,
    minimal_free_resolution,
    ordinary_ext,
    ordinary_tor,
    pushout_extension,
    remember,
    resolution_of,
    stable_iso,
    syzygy,
    tate_ext,
    tate_tor,
    transpose,
    verify_window,
)
from tatekit.modrep import change_basis, cyclic_module, direct_sum, free_module, hom_space, is_iso, residue_field, tensor


GORENSTEIN_IDS = [i for i in corpus_ids() if is_gorenstein(corpus_algebra(i))]


def test_residue_field_of_dual_numbers_has_constant_tate_ext() -> None:
    a = corpus_algebra("f2-x2")
    k = residue_field(a)
    table = tate_ext(k, k, -10, 10)
    assert table.dims == (1,) * 21
    found = detect_periodicity(k)
    assert found is not None and found.period == 1


@pytest.mark.parametrize(
    ("n", "i", "j"),
    [(4, 1, 1), (4, 1, 3), (4, 2, 2), (5, 2, 3)],
)
def test_tate_tor_of_truncated_polynomial_quotients(n: int, i: int, j: int) -> None:
    a = monomial_complete_intersection(PrimeField(3), [n], name=f"f3-x{n}")
    mi = cyclic_module(a, ideal_from_labels(a, ["x" if i == 1 else f"x^{i}"]))
    mj = cyclic_module(a, ideal_from_labels(a, ["x" if j == 1 else f"x^{j}"]))
    expected = min(i, j, n - i, n - j)
    assert tate_tor(mi, mj, -8, 8).dims == (expected,) * 17


def test_betti_numbers_of_residue_field_grow_linearly() -> None:
    a = corpus_algebra("f2-x2y2")
    covers, betti = minimal_free_resolution(residue_field(a), 6)
    assert betti == [1, 2, 3, 4, 5, 6, 7]
    assert all(c.is_minimal() for c in covers)


@pytest.mark.parametrize("corpus_id", GORENSTEIN_IDS)
def test_complete_resolution_windows_are_exact_and_minimal(corpus_id: str) -> None:
    a = corpus_algebra(corpus_id)
    for m in corpus_modules(a):
        w = complete_resolution(m, -8, 8)
        check = verify_window(w)
        assert check.ok, (m.label(), check.errors)
        assert w.first <= -8 and w.last >= 8


def test_complete_resolution_of_a_free_module_is_zero() -> None:
    a = corpus_algebra("f2-x2y2")
    w = complete_resolution(free_module(a, 1), -3, 3)
    assert all(w.rank(i) == 0 for i in range(w.first, w.last + 1))
    assert w.stripped_free_rank == 1
    assert tate_ext(free_module(a, 1), residue_field(a), -3, 3).vanishes_on(-3, 3)


def test_free_summands_do_not_change_tate_tables() -> None:
    a = corpus_algebra("f3-x4")
    m = cyclic_module(a, ideal_from_labels(a, ["x^2"]))
    padded = direct_sum(m, free_module(a, 1))
    k = residue_field(a)
    assert tate_ext(padded, k, -4, 4).dims == tate_ext(m, k, -4, 4).dims
    assert tate_tor(padded, k, -4, 4).dims == tate_tor(m, k, -4, 4).dims


@pytest.mark.parametrize("corpus_id", GORENSTEIN_IDS)
def test_tate_agrees_with_ordinary_in_positive_degrees(corpus_id: str) -> None:
    a = corpus_algebra(corpus_id)
    mods = corpus_modules(a)
    for m in mods:
        for n in mods:
            ext = tate_ext(m, n, 1, 8)
            tor = tate_tor(m, n, 1, 8)
            for i in range(1, 9):
                assert ext.dim(i) == ordinary_ext(m, n, i)
                assert tor.dim(i) == ordinary_tor(m, n, i)


def test_degree_zero_ordinary_groups() -> None:
    a = corpus_algebra("f2-x2y2")
    mods = corpus_modules(a)
    for m in mods:
        for n in mods:
            assert ordinary_ext(m, n, 0) == hom_space(m, n).dim
            assert ordinary_tor(m, n, 0) == tensor(m, n).kdim
    with pytest.raises(DegreeError):
        ordinary_ext(mods[0], mods[0], -1)


@given(st.integers(min_value=0, max_value=2**32 - 1))
@settings(max_examples=10, deadline=None)
def test_tate_tables_do_not_depend_on_the_basis(seed: int) -> None:
    a = corpus_algebra("f2-x2y2")
    k = residue_field(a)
    m = cyclic_module(a, ideal_from_labels(a, ["x"]))
    p = random_invertible(a.field, m.kdim, np.random.default_rng(seed))
    moved = change_basis(m, p)
    assert tate_ext(moved, k, -4, 4).dims == tate_ext(m, k, -4, 4).dims
    assert tate_ext(k, moved, -4, 4).dims == tate_ext(k, m, -4, 4).dims
    assert tate_tor(moved, m, -4, 4).dims == tate_tor(m, m, -4, 4).dims


@pytest.mark.parametrize("corpus_id", GORENSTEIN_IDS)
def test_hundred_seeded_basis_changes_leave_every_table_alone(corpus_id: str) -> None:
    a = corpus_algebra(corpus_id)
    mods = corpus_modules(a)
    ext = {(i, j): tate_ext(m, n, -3, 3).dims for i, m in enumerate(mods) for j, n in enumerate(mods)}
    tor = {(i, j): tate_tor(m, n, -3, 3).dims for i, m in enumerate(mods) for j, n in enumerate(mods)}
    for seed in range(100):
        i = seed % len(mods)
        m = mods[i]
        moved = change_basis(m, random_invertible(a.field, m.kdim, np.random.default_rng(seed)))
        for j, n in enumerate(mods):
            assert tate_ext(moved, n, -3, 3).dims == ext[i, j], (seed, m.label(), n.label())
            assert tate_ext(n, moved, -3, 3).dims == ext[j, i], (seed, n.label(), m.label())
            assert tate_tor(moved, n, -3, 3).dims == tor[i, j], (seed, m.label(), n.label())


def test_syzygy_and_cosyzygy_invert_each_other_on_stable_modules() -> None:
    a = corpus_algebra("f3-x4")
    m = cyclic_module(a, ideal_from_labels(a, ["x"]))
    s = syzygy(m, 1)
    assert s.kdim == 3
    assert is_iso(cosyzygy(s, 1), m)
    assert cosyzygy(m, 0) is m
    with pytest.raises(DegreeError):
        cosyzygy(m, -1)


def test_transpose_of_a_cyclic_module() -> None:
    a = corpus_algebra("f3-x4")
    m = cyclic_module(a, ideal_from_labels(a, ["x"]))
    # A --x--> A --> A/(x) is a minimal presentation, so Tr = A/(x) again.
    assert is_iso(transpose(m), m)


def test_periodicity_detection() -> None:
    b = corpus_algebra("f2-x2y2")
    mx = cyclic_module(b, ideal_from_labels(b, ["x"]))
    found = detect_periodicity(mx)
    assert found is not None and found.period == 1 and not found.zero
    assert detect_periodicity(residue_field(b)) is None
    free = detect_periodicity(free_module(b, 1))
    assert free is not None and free.zero


def test_tate_table_lookup_and_shape() -> None:
    a = corpus_algebra("f2-x2")
    k = residue_field(a)
    table = tate_ext(k, k, -2, 2)
    assert table.items() == [(-2, 1), (-1, 1), (0, 1), (1, 1), (2, 1)]
    assert table.to_dict()["dims"] == [1, 1, 1, 1, 1]
    with pytest.raises(WindowError):
        table.dim(3)
    with pytest.raises(WindowError):
        tate_ext(k, k, 2, 1)
    with pytest.raises(WindowError):
        complete_resolution(k, 1, 4)


def test_pushout_along_a_cocycle_of_degree_one() -> None:
    a = corpus_algebra("f2-x2")
    k = residue_field(a)
    basis = ext_basis(k, 1)
    assert len(basis) == 1
    extension = pushout_extension(k, basis[0], 1)
    # the nonsplit extension of k by k over k[x]/(x^2) is the free module
    assert extension.kdim == 2
    assert is_iso(extension, free_module(a, 1))
    with pytest.raises(DegreeError):
        pushout_extension(k, basis[0], 0)


def test_non_gorenstein_algebras_have_no_complete_resolutions() -> None:
    a = corpus_algebra("f2-x2xyy2")
    k = residue_field(a)
    assert resolution_of(k).betti_numbers(3) == [1, 2, 4, 8]
    with pytest.raises(NotGorensteinError):
        complete_resolution(k, -2, 2)
    with pytest.raises(NotGorensteinError):
        tate_ext(k, k, -2, 2)
    with pytest.raises(NotGorensteinError):
        cosyzygy(k, 1)


def test_stable_isomorphism_ignores_free_summands() -> None:
    a = corpus_algebra("f3-x4")
    m = cyclic_module(a, ideal_from_labels(a, ["x^2"]))
    padded = direct_sum(m, free_module(a, 2))
    assert not is_iso(padded, m)
    assert stable_iso(padded, m)
    assert not stable_iso(padded, residue_field(a))


def test_remember_keeps_the_first_value_stored() -> None:
    a = corpus_algebra("f3-x4")
    m = cyclic_module(a, ideal_from_labels(a, ["x"]))
    first, second = object(), object()
    assert remember(m, ("scratch", 1), first) is first
    assert remember(m, ("scratch", 1), second) is first
    with ThreadPoolExecutor(max_workers=4) as pool:
        found = list(pool.map(lambda v: detect_periodicity(m), range(8)))
    assert all(f is found[0] for f in found)
