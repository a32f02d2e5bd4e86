from __future__ import annotations

import pytest

from tatekit.algebra import ideal, ideal_from_labels
from tatekit.corpus import corpus_algebra, corpus_modules
from tatekit.errors import AnnihilatorError, ImproperIdealError, NotGorensteinError, UnstableModuleError
from tatekit.homalg import free_rank
from tatekit.linkage import (
    dagger,
    even_link_chain,
    ideal_linkage_check,
    inflate,
    is_linked,
    is_self_linked,
    link_operator,
    linkage_datum,
    restrict,
)
from tatekit.modrep import annihilator, cyclic_module, free_module, is_iso, residue_field


def test_cyclic_modules_linked_by_the_zero_ideal() -> None:
    a = corpus_algebra("f3-x4")
    mx = cyclic_module(a, ideal_from_labels(a, ["x"]))
    mx3 = cyclic_module(a, ideal_from_labels(a, ["x^3"]))
    d = linkage_datum(a)
    result = is_linked(mx, mx3, d)
    assert result
    assert result.forward is not None and result.forward.witness is not None
    assert result.to_dict()["linked"] is True
    assert not is_linked(mx, mx, d)


def test_linkage_operator_on_cyclic_modules_uses_the_annihilator() -> None:
    a = corpus_algebra("f2-x2y2")
    mxy = cyclic_module(a, ideal_from_labels(a, ["x*y"]))
    linked = link_operator(mxy)
    assert linked.kdim == 1
    assert is_iso(linked, residue_field(a))
    assert annihilator(link_operator(residue_field(a))) == ideal_from_labels(a, ["x*y"])


@pytest.mark.parametrize("corpus_id", ["f2-x2", "f3-x4", "f2-x2y2"])
def test_linking_twice_returns_every_stable_module(corpus_id: str) -> None:
    a = corpus_algebra(corpus_id)
    stable = [m for m in corpus_modules(a) if free_rank(m) == 0]
    assert stable
    for m in stable:
        assert is_iso(link_operator(link_operator(m)), m), m.label()


def test_self_linked_module() -> None:
    a = corpus_algebra("f3-x4")
    mx2 = cyclic_module(a, ideal_from_labels(a, ["x^2"]))
    d = linkage_datum(a)
    assert is_self_linked(mx2, d)
    assert not is_self_linked(residue_field(a), d)


def test_even_link_chain_returns_to_the_start() -> None:
    a = corpus_algebra("f3-x4")
    m = cyclic_module(a, ideal_from_labels(a, ["x"]))
    d = linkage_datum(a)
    chain = even_link_chain(m, [d, d])
    assert [x.kdim for x in chain] == [1, 3, 1]
    assert is_iso(chain[2], m)


def test_linkage_through_a_nonzero_ideal() -> None:
    a = corpus_algebra("f3-x4")
    c = ideal_from_labels(a, ["x^2"])
    d = linkage_datum(a, c)
    assert d.quotient.dim == 2
    assert d.gorenstein
    k = residue_field(a)
    kb = restrict(k, d)
    assert kb.algebra is d.quotient and kb.kdim == 1
    assert is_iso(inflate(kb, d), k)
    # over B = k[x]/(x^2) the residue field is linked to itself
    assert is_linked(k, k, d)


def test_restrict_requires_the_ideal_to_annihilate() -> None:
    a = corpus_algebra("f3-x4")
    d = linkage_datum(a, ideal_from_labels(a, ["x^2"]))
    with pytest.raises(AnnihilatorError):
        restrict(free_module(a, 1), d)


def test_unstable_modules_are_refused() -> None:
    a = corpus_algebra("f3-x4")
    with pytest.raises(UnstableModuleError):
        link_operator(free_module(a, 1))
    result = is_linked(free_module(a, 1), residue_field(a), linkage_datum(a))
    assert not result and result.reason == "unstable"


def test_ideal_linkage() -> None:
    a = corpus_algebra("f3-x4")
    assert ideal_linkage_check(a, ideal_from_labels(a, ["x"]))
    assert ideal_linkage_check(a, ideal_from_labels(a, ["x^2"]))
    with pytest.raises(ImproperIdealError):
        ideal_linkage_check(a, ideal(a, []))


def test_dagger_is_the_algebra_dual() -> None:
    a = corpus_algebra("f3-x4")
    m = cyclic_module(a, ideal_from_labels(a, ["x"]))
    assert dagger(m).kdim == 1
    assert is_iso(dagger(dagger(m)), m)
    with pytest.raises(NotGorensteinError):
        dagger(residue_field(corpus_algebra("f2-x2xyy2")))
    with pytest.raises(NotGorensteinError):
        ideal_linkage_check(corpus_algebra("f2-x2xyy2"), corpus_algebra("f2-x2xyy2").maximal_ideal())
