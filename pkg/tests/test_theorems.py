from __future__ import annotations

import pytest

from tatekit.algebra import ideal_from_labels
from tatekit.corpus import corpus_algebra, corpus_modules
from tatekit.errors import InputError, NotGorensteinError, UnstableModuleError, WindowError
from tatekit.homalg import detect_periodicity
from tatekit.modrep import cyclic_module, free_module, residue_field
from tatekit.theorems import (
    BUDGET,
    CERTIFIED,
    CONSISTENT,
    DEGENERATE,
    REFUTED,
    VACUOUS,
    VERIFIED,
    check_ar_duality,
    check_balanced_l5,
    check_betti_bass_c1,
    check_dagger_duality,
    check_dagger_linkage,
    check_depth_formula,
    check_duality_l2,
    check_even_linkage_t2,
    check_free_vanishing,
    check_full_symmetry,
    check_gorenstein_ideal_c6,
    check_gorenstein_pair_c2,
    check_ideal_linkage,
    check_linked_ext_t6,
    check_linked_vanishing,
    check_negative_control,
    check_pr1,
    check_quotient_ext_tor,
    check_reducible_complexity_l4,
    check_sup_inf_t3,
    certificate,
    check_symmetry,
    find_reducing_eta,
)

HOLDS = {VERIFIED, CERTIFIED}


def _b():
    return corpus_algebra("f2-x2y2")


def _cyclic(corpus_id: str, label: str):
    a = corpus_algebra(corpus_id)
    return cyclic_module(a, ideal_from_labels(a, [label]))


def test_symmetry_holds_non_vacuously_for_orthogonal_cyclic_modules() -> None:
    mx, my = _cyclic("f2-x2y2", "x"), _cyclic("f2-x2y2", "y")
    report = check_symmetry(mx, my, (-8, 8))
    assert report.verdict == CERTIFIED
    assert VACUOUS not in report.notes
    assert set(report.evidence["ext(M,N)"]["dims"]) == {0}
    assert set(report.evidence["ext(N,M)"]["dims"]) == {0}
    assert report.check_id == "symmetry/f2-x2y2/A/(x),A/(y)"
    assert report.to_dict()["verdict"] == CERTIFIED


def test_symmetry_is_vacuous_when_nothing_vanishes() -> None:
    k = residue_field(_b())
    report = check_symmetry(k, k, (-6, 6))
    assert report.verdict == CONSISTENT
    assert report.notes == (VACUOUS,)


def test_symmetry_threshold_must_fit_the_window() -> None:
    k = residue_field(_b())
    with pytest.raises(WindowError):
        check_symmetry(k, k, (-8, 8), threshold=8)
    with pytest.raises(WindowError):
        check_symmetry(k, k, (1, 8))


def test_certificate_needs_a_full_period_of_hypothesis() -> None:
    a = corpus_algebra("f3-x4")
    k = residue_field(a)
    found = detect_periodicity(k)
    assert found is not None and found.period == 2 and not found.zero
    assert certificate(-8, 8, k) == found
    assert certificate(-8, 8, k, hypotheses=[(7, 8)]) == found
    assert certificate(-8, 8, k, hypotheses=[(8, 8)]) is None
    assert certificate(-8, 8, k, hypotheses=[(-8, -1), (8, 8)]) is None
    # a stably zero argument certifies any range
    assert certificate(-8, 8, k, free_module(a, 1), hypotheses=[(8, 8)]) is not None


def test_symmetry_family_never_refutes() -> None:
    a = corpus_algebra("f3-x4")
    mods = corpus_modules(a)
    for m in mods:
        for n in mods:
            for t in (-2, 0, 2):
                assert check_symmetry(m, n, (-6, 6), threshold=t).verdict != REFUTED
            assert check_full_symmetry(m, n, (-6, 6)).verdict != REFUTED


def test_duality_suite_holds_on_every_pair() -> None:
    mods = corpus_modules(_b())
    pairs = [(m, n) for m in mods for n in mods]
    assert len(pairs) >= 25
    for m, n in pairs:
        for check in (check_duality_l2, check_balanced_l5, check_ar_duality, check_pr1):
            report = check(m, n, (-6, 6))
            assert report.verdict in HOLDS, report.line()


def test_betti_bass_checks() -> None:
    b = _b()
    for m in corpus_modules(b):
        assert check_betti_bass_c1(m, (-6, 6)).verdict in HOLDS
    for label in ("x", "y"):
        report = check_gorenstein_ideal_c6(ideal_from_labels(b, [label]), (-6, 6))
        assert report.verdict in HOLDS
    assert check_gorenstein_ideal_c6(b.maximal_ideal(), (-6, 6)).verdict in HOLDS
    with pytest.raises(NotGorensteinError):
        check_gorenstein_ideal_c6(ideal_from_labels(b, ["x*y"]), (-6, 6))


def test_reducing_cocycle_for_the_residue_field() -> None:
    k = residue_field(_b())
    search = find_reducing_eta(k, degrees=(2,))
    assert search.found and not search.trivial
    assert search.degree == 2
    assert search.module_complexity == "2"
    assert search.k_complexity == "1"
    assert len(set(search.k_betti[-3:])) == 1
    assert 1 <= search.candidates_tried <= 7


def test_reducing_cocycle_is_trivial_for_free_modules() -> None:
    search = find_reducing_eta(free_module(_b(), 1))
    assert search.found and search.trivial


def test_reducible_complexity_agreement() -> None:
    mx, my = _cyclic("f2-x2y2", "x"), _cyclic("f2-x2y2", "y")
    assert check_reducible_complexity_l4(mx, my, (-6, 6)).verdict == CERTIFIED

    k = residue_field(corpus_algebra("f2-x2"))
    report = check_reducible_complexity_l4(k, k, (-6, 6))
    assert report.verdict == CONSISTENT
    assert report.notes == (DEGENERATE,)
    assert report.evidence["eta"]["found"] is True


def test_sup_inf_formula() -> None:
    mx, my = _cyclic("f2-x2y2", "x"), _cyclic("f2-x2y2", "y")
    report = check_sup_inf_t3(mx, my)
    assert report.verdict == CERTIFIED
    assert report.evidence["sup_tor"] == 0 and report.evidence["inf_ext"] == 0

    k = residue_field(_b())
    assert check_sup_inf_t3(k, k, 6).notes == (VACUOUS,)
    with pytest.raises(WindowError):
        check_sup_inf_t3(k, k, 0)


def test_depth_formula() -> None:
    mx, my = _cyclic("f2-x2y2", "x"), _cyclic("f2-x2y2", "y")
    report = check_depth_formula(mx, my, (-6, 6))
    assert report.verdict == CERTIFIED
    assert report.evidence["ext"][0] == 1
    k = residue_field(_b())
    assert check_depth_formula(k, k, (-6, 6)).notes == (VACUOUS,)


def test_gorenstein_ideal_pairs_and_quotients() -> None:
    b = _b()
    ix, iy = ideal_from_labels(b, ["x"]), ideal_from_labels(b, ["y"])
    assert check_gorenstein_pair_c2(ix, iy, (-6, 6)).verdict in HOLDS
    assert check_gorenstein_pair_c2(ix, ix, (-6, 6)).verdict != REFUTED
    for m in corpus_modules(b):
        assert check_quotient_ext_tor(m, ix, (-6, 6)).verdict != REFUTED


def test_free_modules_have_vanishing_tate_groups() -> None:
    for m in corpus_modules(_b()):
        assert check_free_vanishing(m, (-4, 4)).verdict == CERTIFIED


def test_ideal_and_dagger_linkage_checks() -> None:
    a = corpus_algebra("f3-x4")
    for label in ("x", "x^2", "x^3"):
        assert check_ideal_linkage(ideal_from_labels(a, [label])).verdict == VERIFIED
    for m in corpus_modules(a):
        report = check_dagger_duality(m)
        assert report.verdict == VERIFIED, report.evidence
        assert report.window is None


def test_linkage_identities_over_a_truncated_polynomial_ring() -> None:
    a = corpus_algebra("f3-x4")
    mods = corpus_modules(a)
    stable = [m for m in mods if m.label() != "A"]
    for m in stable:
        assert check_even_linkage_t2(m, (-6, 6)).verdict in HOLDS
        for x in stable:
            assert check_linked_ext_t6(m, x, (-6, 6)).verdict in HOLDS
    for lm in mods:
        for m in stable:
            assert check_linked_vanishing(lm, m, (-6, 6)).verdict in HOLDS
            assert check_dagger_linkage(m, lm, (-6, 6)).verdict in HOLDS


def test_even_linkage_records_the_isomorphism() -> None:
    m = _cyclic("f3-x4", "x")
    report = check_even_linkage_t2(m, (-8, 8))
    assert report.verdict in HOLDS
    assert report.evidence["L~=M"]["status"] == "iso"


def test_linkage_checks_refuse_free_summands() -> None:
    a = corpus_algebra("f3-x4")
    with pytest.raises(UnstableModuleError):
        check_linked_ext_t6(free_module(a, 1), residue_field(a), (-4, 4))
    with pytest.raises(UnstableModuleError):
        check_even_linkage_t2(free_module(a, 1), (-4, 4))


def test_negative_control_rejects_every_gorenstein_only_operation() -> None:
    a = corpus_algebra("f2-x2xyy2")
    report = check_negative_control(a, (-4, 4))
    assert report.verdict == VERIFIED
    assert set(report.evidence["attempts"].values()) == {"rejected"}
    assert report.evidence["socle_dim"] == 2
    with pytest.raises(InputError):
        check_negative_control(_b())
    with pytest.raises(NotGorensteinError):
        check_symmetry(residue_field(a), residue_field(a))


def test_budget_note_is_a_stable_identifier() -> None:
    assert BUDGET == "search-budget-exhausted"
