from __future__ import annotations


class UQPError(Exception):
    """Base class for every error raised by uqpkit."""


class ValidationError(UQPError, ValueError):
    """Input rejected before any computation ran."""


class NotHermitian(ValidationError):
    pass


class NonFinite(ValidationError):
    pass


class EmptyMatrix(ValidationError):
    pass


class DimensionMismatch(ValidationError):
    pass


class IndexOutOfRange(ValidationError):
    pass


class SingularCovariance(ValidationError):
    pass


class PrefixTooLong(ValidationError):
    pass


class InstanceTooLarge(ValidationError):
    pass


class WrongDimension(ValidationError):
    pass


class NotApplicable(ValidationError):
    pass


class NoMatchingRecords(ValidationError):
    pass


class ConfigError(ValidationError):
    pass


class MatrixFormatError(ValidationError):
    pass


class ConvergenceFailure(UQPError, RuntimeError):
    """An iterative eigen method hit its cap without meeting its residual contract."""

    def __init__(self, message: str, *, residual: float, iterations: int) -> None:
        super().__init__(f"{message} (residual={residual:.3e}, iterations={iterations})")
        self.residual = residual
        self.iterations = iterations
