"""The linkage operator lambda = Omega Tr over quotient algebras.

Linkage always goes through an explicitly supplied ideal c of the ambient
algebra A; modules killed by c are restricted to B = A/c, linked there, and
inflated back.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Any

import numpy as np

from .algebra import Algebra, Ideal, annihilator_ideal, ideal, is_gorenstein, quotient_algebra
from .errors import AlgebraMismatchError, AnnihilatorError, ImproperIdealError, NotGorensteinError, UnstableModuleError
from .exactla import Mat, quotient_projection
from .homalg import free_rank
from .modrep import (
    IsoResult,
    Module,
    _module_from_stack,
    a_dual,
    cyclic_module,
    element_actions,
    free_module,
    hom_module,
    is_iso,
    quotient_module,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class LinkageDatum:
    ambient: Algebra
    ideal: Ideal
    quotient: Algebra
    projection: Mat  # dim B x dim A
    lift: tuple[int, ...]  # A-basis index of each B-basis element
    gorenstein: bool

    def to_dict(self) -> dict[str, Any]:
        return {
            "ambient": self.ambient.name,
            "ideal": self.ideal.describe(),
            "quotient_dim": self.quotient.dim,
            "gorenstein": self.gorenstein,
        }


def linkage_datum(a: Algebra, c: Ideal | None = None) -> LinkageDatum:
    c = ideal(a, []) if c is None else c
    b, q = quotient_algebra(a, c)
    if c.dim == 0:
        lift: tuple[int, ...] = tuple(range(a.dim))
    else:
        lift = tuple(quotient_projection(c.basis)[1])
    return LinkageDatum(a, c, b, q, lift, is_gorenstein(b))


def _check_annihilates(m: Module, d: LinkageDatum) -> None:
    if m.algebra is not d.ambient:
        raise AlgebraMismatchError("module is not over the ambient algebra of the linkage datum")
    if d.ideal.dim == 0 or m.kdim == 0:
        return
    acts = element_actions(m, d.ideal.basis.array.T)
    if np.any(acts):
        raise AnnihilatorError(f"the linking ideal does not annihilate {m.label()}")


def restrict(m: Module, d: LinkageDatum) -> Module:
    """M viewed as a module over B = A/c."""

    _check_annihilates(m, d)
    if d.quotient is d.ambient:
        return m
    stack = m.stack[list(d.lift)]
    return _module_from_stack(d.quotient, stack, name=m.name)


def inflate(m: Module, d: LinkageDatum) -> Module:
    """A B-module viewed as an A-module through A -> B."""

    if m.algebra is not d.quotient:
        raise AlgebraMismatchError("module is not over the quotient algebra of the linkage datum")
    if d.quotient is d.ambient:
        return m
    stack = element_actions(m, np.ascontiguousarray(d.projection.array.T))
    return _module_from_stack(d.ambient, stack, name=m.name)


def link_operator(m: Module) -> Module:
    """lambda M = coker(M* -> P_0*), for M without free summands."""

    if free_rank(m) > 0:
        raise UnstableModuleError(f"{m.label()} has a free summand; apply strip_free first")
    b = m.algebra
    dual = hom_module(m, free_module(b, 1))
    ambient = free_module(b, dual.ambient.kdim // b.dim)
    return quotient_module(ambient, dual.basis, name=f"lambda({m.label()})", check=False).module


@dataclass(frozen=True)
class LinkResult:
    linked: bool
    forward: IsoResult | None = None
    backward: IsoResult | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.linked

    def to_dict(self) -> dict[str, Any]:
        return {
            "linked": self.linked,
            "reason": self.reason,
            "forward": None if self.forward is None else self.forward.to_dict(),
            "backward": None if self.backward is None else self.backward.to_dict(),
        }


def is_linked(m: Module, n: Module, d: LinkageDatum) -> LinkResult:
    """M ~= lambda_B N and N ~= lambda_B M, both restricted to B."""

    mb, nb = restrict(m, d), restrict(n, d)
    if free_rank(mb) > 0 or free_rank(nb) > 0:
        return LinkResult(False, reason="unstable")
    forward = is_iso(mb, link_operator(nb))
    backward = is_iso(nb, link_operator(mb))
    linked = bool(forward) and bool(backward)
    logger.debug("linkage.is_linked m=%s n=%s linked=%s", m.label(), n.label(), linked)
    return LinkResult(linked, forward, backward, "" if linked else "not-isomorphic")


def is_self_linked(m: Module, d: LinkageDatum) -> IsoResult:
    mb = restrict(m, d)
    if free_rank(mb) > 0:
        return IsoResult("not-iso", reason="unstable")
    return is_iso(mb, link_operator(mb))


def dagger(m: Module) -> Module:
    """M^dagger = Hom_B(M, B) over a Gorenstein B."""

    if not is_gorenstein(m.algebra):
        raise NotGorensteinError("dagger needs a Gorenstein algebra")
    return a_dual(m)


def even_link_chain(m: Module, data: Sequence[LinkageDatum]) -> list[Module]:
    """M, lambda M, lambda lambda M, ... through the given quotients (as A-modules)."""

    chain = [m]
    current = m
    for d in data:
        current = inflate(link_operator(restrict(current, d)), d)
        chain.append(current)
    return chain


def ideal_linkage_check(a: Algebra, i: Ideal) -> IsoResult:
    """A/i ~= lambda(A/(0 : i)) over a Gorenstein A (linkage of ideals by 0)."""

    if not is_gorenstein(a):
        raise NotGorensteinError("ideal linkage needs a Gorenstein algebra")
    if i.dim == 0 or i.dim == a.dim:
        raise ImproperIdealError("ideal linkage needs a nonzero proper ideal")
    partner = annihilator_ideal(i)
    return is_iso(cyclic_module(a, i), link_operator(cyclic_module(a, partner)))
