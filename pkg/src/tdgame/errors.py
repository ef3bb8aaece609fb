"""Exception types shared across the package."""


class TdgameError(Exception):
    """Base class for all package errors."""


class GraphInputError(TdgameError):
    """Malformed graph file content."""

    def __init__(self, message: str, line_no: int | None = None):
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)
        self.line_no = line_no


class PreconditionError(TdgameError):
    """Input violates a documented precondition."""


class CapabilityError(TdgameError):
    """Instance exceeds a configured exhaustive-search limit."""


class IllegalMoveError(TdgameError):
    """A move that covers no new edge (or dominates no new vertex)."""


class PolicyError(TdgameError):
    """A player policy returned an illegal move."""


class InternalConsistencyError(TdgameError):
    """State that the model guarantees cannot occur."""


class GenerationError(TdgameError):
    """Random-instance generation cannot satisfy its constraints."""
