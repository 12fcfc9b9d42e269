"""Exception hierarchy."""


class THFactorError(Exception):
    """Base class for all package errors."""


class OnJumpError(THFactorError, ValueError):
    """A symbol was evaluated exactly at one of its jump locations."""


class NotFredholmError(THFactorError):
    """An operation needs a Fredholm M(phi) but the conditions fail."""

    def __init__(self, message, boundary=False):
        super().__init__(message)
        self.boundary = boundary


class TruncationError(THFactorError):
    """A Fourier truncation is too short for the requested accuracy."""


class NumericFailure(THFactorError, ArithmeticError):
    """An iterative numerical procedure did not converge."""


class ProbeUnsupportedError(THFactorError):
    """Finite-section probes are only meaningful for p = 2."""


class InternalConsistencyError(THFactorError, AssertionError):
    """Two routes that must agree disagree."""
