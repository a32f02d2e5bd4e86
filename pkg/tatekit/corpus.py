"""Built-in algebras and their module families.

Four Gorenstein algebras cover periodic (complexity 1) and polynomial-growth
(complexity 2) behaviour; k[x,y]/(x^2, xy, y^2) has a two-dimensional socle
and serves as the negative control.
"""

from __future__ import annotations

import threading
import weakref
from dataclasses import dataclass

from .algebra import Algebra, Ideal, ideal
from .errors import InputError
from .formats import FieldSpec, MonomialCISpec, MonomialSpec, StructureConstantsSpec
from .modrep import Module, cyclic_module, free_module, residue_field

CORPUS_SPECS: dict[str, StructureConstantsSpec | MonomialCISpec | MonomialSpec] = {
    "f2-x2": MonomialCISpec(field=FieldSpec(char=2), vars=["x"], powers=[2]),
    "f3-x4": MonomialCISpec(field=FieldSpec(char=3), vars=["x"], powers=[4]),
    "f2-x2y2": MonomialCISpec(field=FieldSpec(char=2), vars=["x", "y"], powers=[2, 2]),
    "f5-x3y3": MonomialCISpec(field=FieldSpec(char=5), vars=["x", "y"], powers=[3, 3]),
    "f2-x2xyy2": MonomialSpec(field=FieldSpec(char=2), vars=["x", "y"], generators=[[2, 0], [1, 1], [0, 2]]),
}

_ALGEBRAS: dict[str, Algebra] = {}
_FAMILIES: "weakref.WeakKeyDictionary[Algebra, tuple[CorpusModule, ...]]" = weakref.WeakKeyDictionary()
_LOCK = threading.Lock()


@dataclass(frozen=True, eq=False)
class CorpusModule:
    module: Module
    ideal: Ideal  # annihilator; the zero ideal for A itself

    @property
    def cyclic_quotient(self) -> bool:
        return 0 < self.ideal.dim < self.ideal.algebra.dim


def corpus_ids() -> list[str]:
    return list(CORPUS_SPECS)


def corpus_algebra(corpus_id: str) -> Algebra:
    """One shared instance per id, so module caches survive across calls."""

    with _LOCK:
        a = _ALGEBRAS.get(corpus_id)
        if a is None:
            try:
                spec = CORPUS_SPECS[corpus_id]
            except KeyError:
                raise InputError(f"unknown corpus algebra {corpus_id!r}; known: {', '.join(CORPUS_SPECS)}") from None
            a = spec.build(name=corpus_id)
            _ALGEBRAS[corpus_id] = a
    return a


def corpus_family(a: Algebra) -> tuple[CorpusModule, ...]:
    """k, then A/(g) for each standard monomial g of positive degree, then A.

    Modules with the same annihilator are listed once.
    """

    with _LOCK:
        cached = _FAMILIES.get(a)
        if cached is not None:
            return cached
        m = a.maximal_ideal()
        family: list[CorpusModule] = [CorpusModule(residue_field(a), m)]
        for idx in range(1, a.dim):
            i = ideal(a, [a.basis_vector(idx)])
            if any(entry.ideal == i for entry in family):
                continue
            family.append(CorpusModule(cyclic_module(a, i, name=f"A/({a.labels[idx]})"), i))
        family.append(CorpusModule(free_module(a, 1), ideal(a, [])))
        out = tuple(family)
        _FAMILIES[a] = out
    return out


def corpus_modules(a: Algebra) -> list[Module]:
    return [entry.module for entry in corpus_family(a)]
