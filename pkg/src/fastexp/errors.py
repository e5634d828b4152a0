"""Exception hierarchy shared by the series kernel."""


class SeriesError(ValueError):
    """Base class for contract violations in the series kernel."""


class InvalidLengthError(SeriesError):
    """Transform length is not a supported power of two."""


class NumericInputError(SeriesError):
    """Input coefficients contain NaN or infinity."""


class NonFiniteError(SeriesError, ArithmeticError):
    """A computation produced NaN or infinity."""


class MissingTransformError(SeriesError):
    """A block product needs a transform that was never cached."""


class CacheError(SeriesError):
    """Block index out of range, or a transform cached twice."""


class NonIntegrableConstantError(SeriesError, ZeroDivisionError):
    """delta_0 cannot be inverted on a block with nonzero constant term."""


class DomainError(SeriesError):
    """Series outside the domain of the requested function."""


class NonInvertibleError(SeriesError, ZeroDivisionError):
    """Series with (near) zero constant term has no reciprocal."""


class InvalidOrderError(SeriesError):
    """Requested truncation order is not positive."""


class ContractError(SeriesError):
    """Preconditions of the exponential kernel do not hold."""
