"""Error hierarchy shared by every asmgrid package and service."""

from typing import Any, Optional


class AsmGridError(Exception):
    """Base class for all asmgrid errors."""


class StructuralInputError(AsmGridError):
    """Input has the wrong shape: non-square, non-integer, empty or mixed orders."""

    def __init__(self, message: str, value: Any = None):
        super().__init__(message)
        self.value = value


class ResourceGuardError(AsmGridError):
    """A size parameter exceeds its configured limit."""

    def __init__(self, what: str, requested: int, limit: int):
        super().__init__(f"{what}={requested} exceeds configured limit {limit}")
        self.what = what
        self.requested = requested
        self.limit = limit


class InvalidFlowGridError(AsmGridError):
    """A flow grid violates the six-configuration rule or is not canonical."""

    def __init__(self, message: str, vertex: Optional[tuple] = None):
        super().__init__(message)
        self.vertex = vertex


class InvariantViolationError(AsmGridError):
    """An internal invariant failed; signals a corrupted value or a bug."""


class DomainError(AsmGridError):
    """An operation's mathematical precondition does not hold."""


class UnsupportedDimensionError(DomainError):
    """Requested analysis is not supported at this face dimension."""

    def __init__(self, dimension: int, limit: int):
        super().__init__(f"dimension {dimension} is above the supported limit {limit}")
        self.dimension = dimension
        self.limit = limit


class CrossCheckError(AsmGridError):
    """The oracle disagrees with the flow-grid computation."""

    def __init__(self, discrepancy: Any):
        super().__init__(f"cross-check failed: {discrepancy}")
        self.discrepancy = discrepancy
