"""Exception types shared across the package."""


class ChoiOptError(Exception):
    """Base class for all errors raised by choiopt."""


class NonSquareError(ChoiOptError):
    """A square matrix was required."""


class NotHermitianError(ChoiOptError):
    """Hermiticity deviation exceeded the allowed tolerance."""


class NegativeEigenvalueError(ChoiOptError):
    """An eigenvalue lies below the negativity tolerance of a PSD operation."""


class AllZeroError(ChoiOptError):
    """The operand has no positive spectrum, so the operation is undefined."""


class DimensionMismatchError(ChoiOptError):
    """Operand dimensions are inconsistent."""


class InvalidChoiError(ChoiOptError):
    """A process or target operator violates positivity or its trace constraint."""


class InvalidDensityError(ChoiOptError):
    """A density matrix violates Hermiticity, positivity or unit trace."""


class TraceConditionError(ChoiOptError):
    """A Kraus set does not resolve the identity on the input space."""


class NormViolationError(ChoiOptError):
    """A state-family evaluator returned a vector that is not unit-norm."""


class InvalidSpecError(ChoiOptError):
    """A model specification is malformed."""


class OutOfRangeError(ChoiOptError):
    """A scalar parameter lies outside its documented range."""


class SingularLambdaError(ChoiOptError):
    """The trace-constraint multiplier vanished identically during iteration."""
