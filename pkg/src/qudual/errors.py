"""Exception types shared across the package."""


class QudualError(Exception):
    """Base class for every error raised by this library."""


class ContractViolationError(QudualError):
    """A matrix input or an internal identity violates a structural contract.

    Raised when an input fails a hermiticity, unitarity or normalization
    check, and when two redundant computation routes that must agree
    (closed form versus explicit projection) do not.
    """


class ParameterError(QudualError, ValueError):
    """A scalar parameter is outside its allowed range.

    The message always names the violated bound.
    """


class SingularConfigurationError(QudualError):
    """The requested quantity diverges or is undefined at this configuration.

    Typical sources are the entanglement overlap endpoints c = 0 and c = 1,
    where one of the rescaled estimators loses meaning.
    """
