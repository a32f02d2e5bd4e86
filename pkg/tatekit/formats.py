"""JSON file formats for algebras and modules.

Algebras::

    {"field":{"char":2},"kind":"structure_constants","labels":["1","x"],"unit":[1,0],"mul":[...]}
    {"field":{"char":2},"kind":"monomial_ci","vars":["x","y"],"powers":[2,2]}
    {"field":{"char":2},"kind":"monomial","vars":["x","y"],"generators":[[2,0],[1,1],[0,2]]}

Modules::

    {"algebra":"B.json","kdim":2,"action":[[[1,0],[0,1]],[[0,0],[1,0]]]}
    {"kind":"cyclic","ideal":[[0,1],...]}      (generators as coordinates or basis labels)
    {"kind":"residue"}
    {"kind":"free","rank":2}

Field order is the model definition order, so `model_dump_json` writes the
layout above back out.
"""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Annotated, Any, Literal, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, TypeAdapter, ValidationError, field_validator

from .algebra import (
    Algebra,
    Ideal,
    from_structure_constants,
    ideal,
    monomial_algebra,
    monomial_complete_intersection,
)
from .errors import AlgebraMismatchError, FileFormatError
from .exactla import Mat, PrimeField
from .modrep import Module, cyclic_module, free_module, residue_field

logger = logging.getLogger(__name__)


class _Spec(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class FieldSpec(_Spec):
    char: int

    @field_validator("char")
    @classmethod
    def _validate_char(cls, value: int) -> int:
        if value < 2:
            raise ValueError("char must be a prime >= 2")
        return value

    def build(self) -> PrimeField:
        return PrimeField(self.char)


class StructureConstantsSpec(_Spec):
    field: FieldSpec
    kind: Literal["structure_constants"] = "structure_constants"
    labels: list[str]
    unit: list[int]
    mul: list[list[list[int]]]

    def build(self, name: str = "") -> Algebra:
        return from_structure_constants(self.field.build(), self.labels, self.mul, self.unit, name=name)


class MonomialCISpec(_Spec):
    field: FieldSpec
    kind: Literal["monomial_ci"] = "monomial_ci"
    vars: list[str]
    powers: list[int]

    def build(self, name: str = "") -> Algebra:
        return monomial_complete_intersection(self.field.build(), self.powers, self.vars, name=name)


class MonomialSpec(_Spec):
    field: FieldSpec
    kind: Literal["monomial"] = "monomial"
    vars: list[str]
    generators: list[list[int]]

    def build(self, name: str = "") -> Algebra:
        return monomial_algebra(self.field.build(), self.vars, self.generators, name=name)


AlgebraSpec = Annotated[Union[StructureConstantsSpec, MonomialCISpec, MonomialSpec], Field(discriminator="kind")]
_ALGEBRA = TypeAdapter(AlgebraSpec)


class ActionModuleSpec(_Spec):
    algebra: str | AlgebraSpec | None = None
    kdim: int = Field(..., ge=0)
    action: list[list[list[int]]]


class CyclicModuleSpec(_Spec):
    kind: Literal["cyclic"]
    algebra: str | AlgebraSpec | None = None
    ideal: list[list[int] | str]


class ResidueModuleSpec(_Spec):
    kind: Literal["residue"]
    algebra: str | AlgebraSpec | None = None


class FreeModuleSpec(_Spec):
    kind: Literal["free"]
    algebra: str | AlgebraSpec | None = None
    rank: int = Field(1, ge=0)


ShorthandModuleSpec = Annotated[
    Union[CyclicModuleSpec, ResidueModuleSpec, FreeModuleSpec], Field(discriminator="kind")
]
ModuleSpec = Union[ActionModuleSpec, CyclicModuleSpec, ResidueModuleSpec, FreeModuleSpec]
_SHORTHAND = TypeAdapter(ShorthandModuleSpec)


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------


def _format_validation(source: str, exc: ValidationError) -> FileFormatError:
    first = exc.errors()[0]
    loc = ".".join(str(x) for x in first.get("loc", ())) or "<root>"
    return FileFormatError(f"{source}:{loc}: {first.get('msg', 'invalid value')}")


def _read_json(path: Path) -> Any:
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise FileFormatError(f"{path}: cannot read file ({e.strerror or e})") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise FileFormatError(f"{path}:{e.lineno}: {e.msg}") from None


def parse_algebra_spec(data: Any, *, source: str = "<inline>") -> StructureConstantsSpec | MonomialCISpec | MonomialSpec:
    try:
        return _ALGEBRA.validate_python(data)
    except ValidationError as e:
        raise _format_validation(source, e) from None


def parse_module_spec(data: Any, *, source: str = "<inline>") -> ModuleSpec:
    try:
        if isinstance(data, dict) and "kind" in data:
            return _SHORTHAND.validate_python(data)
        return ActionModuleSpec.model_validate(data)
    except ValidationError as e:
        raise _format_validation(source, e) from None


def load_algebra_spec(path: str | Path) -> StructureConstantsSpec | MonomialCISpec | MonomialSpec:
    p = Path(path)
    return parse_algebra_spec(_read_json(p), source=str(p))


def load_algebra(path: str | Path, *, name: str | None = None) -> Algebra:
    p = Path(path)
    a = load_algebra_spec(p).build(name=p.stem if name is None else name)
    logger.debug("formats.algebra path=%s dim=%d", p, a.dim)
    return a


def _algebra_of(spec: ModuleSpec, base: Path, source: str) -> Algebra | None:
    ref = spec.algebra
    if ref is None:
        return None
    if isinstance(ref, str):
        target = Path(ref)
        if not target.is_absolute():
            target = base / target
        return load_algebra(target)
    return ref.build(name=f"{Path(source).stem}-algebra")


def build_module(spec: ModuleSpec, algebra: Algebra, *, name: str = "") -> Module:
    if isinstance(spec, ResidueModuleSpec):
        return residue_field(algebra)
    if isinstance(spec, FreeModuleSpec):
        return free_module(algebra, spec.rank)
    if isinstance(spec, CyclicModuleSpec):
        return cyclic_module(algebra, _ideal_of(algebra, spec.ideal), name=name)
    f = algebra.field
    if len(spec.action) != algebra.dim:
        raise FileFormatError(f"action: expected {algebra.dim} matrices (one per basis element), got {len(spec.action)}")
    mats = []
    for i, rows in enumerate(spec.action):
        try:
            arr = np.asarray(rows, dtype=np.int64) if spec.kdim else np.zeros((0, 0), dtype=np.int64)
        except ValueError:
            arr = np.zeros((0,), dtype=np.int64)
        if arr.shape != (spec.kdim, spec.kdim):
            raise FileFormatError(f"action.{i}: expected a {spec.kdim}x{spec.kdim} matrix")
        mats.append(Mat(f, arr))
    return Module(algebra, spec.kdim, tuple(mats), name=name)


def _ideal_of(a: Algebra, generators: list[list[int] | str]) -> Ideal:
    vectors = [list(a.element(g)) if isinstance(g, str) else g for g in generators]
    return ideal(a, vectors)


def load_module(path: str | Path, algebra: Algebra | None = None) -> Module:
    """Read a module file. A module that names its own algebra must agree with `algebra` when both are given."""

    p = Path(path)
    spec = parse_module_spec(_read_json(p), source=str(p))
    own = _algebra_of(spec, p.parent, str(p))
    if algebra is None:
        if own is None:
            raise FileFormatError(f"{p}:algebra: no algebra given in the file or on the command line")
        algebra = own
    elif own is not None and not own.same_structure(algebra):
        raise AlgebraMismatchError(f"{p}: the module's algebra differs from the one supplied")
    return build_module(spec, algebra, name=p.stem)


# ---------------------------------------------------------------------------
# Writing
# ---------------------------------------------------------------------------


def algebra_spec_of(a: Algebra) -> StructureConstantsSpec:
    return StructureConstantsSpec(
        field=FieldSpec(char=a.p),
        labels=list(a.labels),
        unit=list(a.unit),
        mul=a.constants.tolist(),
    )


def module_spec_of(m: Module, algebra_ref: str | None = None) -> ActionModuleSpec:
    return ActionModuleSpec(
        algebra=algebra_ref if algebra_ref is not None else algebra_spec_of(m.algebra),
        kdim=m.kdim,
        action=[s.tolist() for s in m.stack],
    )


def dump_algebra_spec(spec: StructureConstantsSpec | MonomialCISpec | MonomialSpec, path: str | Path) -> Path:
    p = Path(path)
    p.write_text(spec.model_dump_json(exclude_none=True) + "\n", encoding="utf-8")
    return p


def dump_module_spec(spec: ModuleSpec, path: str | Path) -> Path:
    p = Path(path)
    p.write_text(spec.model_dump_json(exclude_none=True) + "\n", encoding="utf-8")
    return p
