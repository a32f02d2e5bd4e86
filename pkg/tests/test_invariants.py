from __future__ import annotations

import pytest

from tatekit.algebra import ideal_from_labels
from tatekit.corpus import corpus_algebra
from tatekit.errors import DegreeError, NotGorensteinError
from tatekit.invariants import (
    complexity_estimate,
    depth,
    gdim_is_zero,
    grade,
    ordinary_bass,
    ordinary_betti,
    profile,
)
from tatekit.modrep import cyclic_module, free_module, residue_field


def test_stable_betti_numbers_of_the_residue_field() -> None:
    a = corpus_algebra("f2-x2y2")
    prof = profile(residue_field(a), -9, 8)
    for i in range(0, 9):
        assert prof.betti(i) == i + 1
    for i in range(0, 8):
        assert prof.betti(-i - 1) == prof.betti(i)
    # over a Gorenstein ring k is its own Matlis dual, so Betti and Bass numbers agree
    assert prof.stable_bass.dims == prof.stable_betti.dims
    assert list(prof.ordinary_betti) == list(range(1, 10))


def test_profile_to_dict_lists_both_tables() -> None:
    a = corpus_algebra("f2-x2")
    payload = profile(residue_field(a), -2, 2).to_dict()
    assert payload["stable_betti"] == [1, 1, 1, 1, 1]
    assert payload["stable_bass"] == [1, 1, 1, 1, 1]
    assert payload["ordinary_betti"] == [1, 1, 1]


def test_complexity_estimates() -> None:
    b = corpus_algebra("f2-x2y2")
    k = residue_field(b)
    mx = cyclic_module(b, ideal_from_labels(b, ["x"]))
    assert complexity_estimate(k).value == 2
    assert not complexity_estimate(k).certified
    est = complexity_estimate(mx)
    assert est.value == 1 and est.certified
    assert complexity_estimate(free_module(b, 1)).value == 0
    assert complexity_estimate(residue_field(corpus_algebra("f2-x2"))).label() == "1"
    with pytest.raises(DegreeError):
        complexity_estimate(k, 3)


def test_complexity_of_the_residue_field_over_a_non_gorenstein_algebra_is_not_polynomial() -> None:
    a = corpus_algebra("f2-x2xyy2")
    est = complexity_estimate(residue_field(a), 8)
    assert est.value is None
    assert est.label() == ">=1"


def test_ordinary_betti_and_bass_numbers() -> None:
    a = corpus_algebra("f2-x2")
    k = residue_field(a)
    assert ordinary_betti(k, 4) == [1, 1, 1, 1, 1]
    assert ordinary_bass(k, 4) == [1, 1, 1, 1, 1]
    assert ordinary_bass(free_module(a, 1), 3) == [1, 0, 0, 0]
    with pytest.raises(DegreeError):
        ordinary_betti(k, -1)


def test_g_dimension_zero_detects_gorenstein() -> None:
    b = corpus_algebra("f2-x2y2")
    assert gdim_is_zero(residue_field(b))
    assert gdim_is_zero(cyclic_module(b, ideal_from_labels(b, ["x"])))
    assert not gdim_is_zero(residue_field(corpus_algebra("f2-x2xyy2")))


def test_depth_and_grade() -> None:
    b = corpus_algebra("f2-x2y2")
    k = residue_field(b)
    assert depth(k) == 0
    assert grade(k, free_module(b, 1)) == 0
    mx = cyclic_module(b, ideal_from_labels(b, ["x"]))
    my = cyclic_module(b, ideal_from_labels(b, ["y"]))
    assert grade(mx, my) == 0


def test_profile_needs_a_gorenstein_algebra() -> None:
    a = corpus_algebra("f2-x2xyy2")
    with pytest.raises(NotGorensteinError):
        profile(residue_field(a), -2, 2)
