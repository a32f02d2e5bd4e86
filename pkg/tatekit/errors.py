from __future__ import annotations


class TatekitError(ValueError):
    """Base error. `code` is a stable, machine-readable category."""

    code = "tatekit-error"

    def __init__(self, message: str, *, code: str | None = None) -> None:
        super().__init__(message)
        if code is not None:
            self.code = code

    def to_dict(self) -> dict[str, str]:
        return {"code": self.code, "message": str(self)}


class InputError(TatekitError):
    """Malformed or inconsistent input (CLI exit code 2)."""

    code = "bad-input"


class NotPrimeError(InputError):
    code = "not-prime"


class ShapeError(InputError):
    code = "bad-shape"


class NonCommutativeError(InputError):
    code = "non-commutative"


class NonAssociativeError(InputError):
    code = "non-associative"


class NonLocalError(InputError):
    code = "non-local"


class BadUnitError(InputError):
    code = "bad-unit"


class BadPowerError(InputError):
    code = "bad-power"


class ImproperIdealError(InputError):
    code = "improper-ideal"


class NotInvariantError(InputError):
    code = "not-invariant"


class AlgebraMismatchError(InputError):
    code = "algebra-mismatch"


class BadActionError(InputError):
    code = "bad-action"


class NotEquivariantError(InputError):
    code = "not-equivariant"


class AnnihilatorError(InputError):
    code = "annihilator-violation"


class DegreeError(InputError):
    code = "bad-degree"


class WindowError(InputError):
    code = "bad-window"


class FileFormatError(InputError):
    """A JSON file that does not match its pydantic model; the message names file and field."""

    code = "bad-file"


class NoSolutionError(TatekitError):
    code = "no-solution"


class NotGorensteinError(TatekitError):
    code = "not-gorenstein"


class UnstableModuleError(TatekitError):
    """Raised where an operator is only defined on modules without free summands."""

    code = "unstable-module"


class BudgetExhaustedError(TatekitError):
    code = "budget-exhausted"


def exit_code_for(exc: BaseException) -> int:
    """3 for an exhausted search, 2 for any other tatekit error, 4 for anything else.

    Exit code 1 is reserved for a REFUTED check or a failed window verification.
    """

    if isinstance(exc, BudgetExhaustedError):
        return 3
    if isinstance(exc, TatekitError):
        return 2
    return 4
