"""Exception types shared by the package."""


class DoubleJCError(Exception):
    """Base class for all package errors."""


class InvalidArgument(DoubleJCError, ValueError):
    """A parameter is outside its allowed domain."""


class InvalidState(DoubleJCError, ValueError):
    """A state or density matrix violates its invariants."""


class UnsupportedConfiguration(DoubleJCError):
    """The requested operation does not cover these parameters (e.g. detuning)."""


class NumericalFailure(DoubleJCError, ArithmeticError):
    """A numerical consistency check failed (norm drift, negative eigenvalues)."""
