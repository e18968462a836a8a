"""Exception hierarchy shared by the algebra and solver layers."""


class ResiduumError(Exception):
    """Base class for every error raised by this package."""


class DomainError(ResiduumError, ValueError):
    """A value is not an element of the algebra's carrier (or a variable is unknown)."""


class UnsupportedOperation(ResiduumError):
    """The instance does not provide the requested operation."""


class ConstructionError(ResiduumError, ValueError):
    """An algebra specification is ill-formed or violates a construction precondition."""


class InvalidLexTuple(ResiduumError, ValueError):
    def __init__(self, index, message=None):
        self.index = index
        super().__init__(message or f"invalid lexicographic tuple at index {index}")


class ArityMismatch(ResiduumError, ValueError):
    pass


class ProblemError(ResiduumError, ValueError):
    """Raised when a problem document fails validation; carries every diagnostic."""

    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(self.diagnostics))


class MissingAssignment(ResiduumError, KeyError):
    pass


class InfeasibleZ(ResiduumError, ValueError):
    pass


class ResourceLimit(ResiduumError):
    pass
