"""Exception types raised across the package."""


class ParityStatesError(Exception):
    """Base class for all package errors."""


class DomainError(ParityStatesError, ValueError):
    """An input lies outside the physically meaningful domain."""


class CapacityError(ParityStatesError, IndexError):
    """A precomputed table or truncation is too small for the request."""


class ConvergenceError(ParityStatesError, RuntimeError):
    """A series or truncation search did not converge within its budget."""


class UndefinedBoundError(ParityStatesError, ValueError):
    """A Cramer-Rao bound was requested for a state with zero Fisher information."""


class ConsistencyError(ParityStatesError, ArithmeticError):
    """A computed quantity violated an internal consistency check beyond rounding."""


class NoSupportError(ParityStatesError, ValueError):
    """A projection selected a slice with zero norm."""
