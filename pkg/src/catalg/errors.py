from __future__ import annotations


class CatalgError(Exception):
    """Base class for every error raised by this package."""


class PreconditionError(CatalgError):
    """An operation was called on inputs outside its domain."""


class WellDefinednessError(CatalgError):
    """A construction produced something that contradicts the theory it implements."""

    def __init__(self, axiom: str, witness: tuple = (), detail: str = ""):
        self.axiom = axiom
        self.witness = tuple(witness)
        self.detail = detail
        w = ", ".join(str(x) for x in self.witness)
        super().__init__(f"{axiom} [{w}]" + (f": {detail}" if detail else ""))


class TwistingAxiomError(WellDefinednessError):
    pass


class SpecError(CatalgError):
    """Malformed or unresolvable workbench document."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)
