"""Exception types shared across the package."""


class IvoptError(Exception):
    """Base class for package-specific errors."""


class DimensionError(IvoptError, ValueError):
    """Operands or arguments have mismatched or invalid dimensions."""


class DivisionByIntervalContainingZero(IvoptError, ZeroDivisionError):
    """Interval division where the divisor contains zero."""


class NotComparableError(IvoptError):
    """Neither interval dominates the other where an order was required."""

    def __init__(self, a, b, context=""):
        self.a = a
        self.b = b
        msg = f"intervals {a} and {b} are not comparable"
        if context:
            msg += f" ({context})"
        super().__init__(msg)


class DomainError(IvoptError, ValueError):
    """A probe point fell outside the function's domain."""


class InvalidIVF(IvoptError, ValueError):
    """Endpoint functions produced lower > upper (beyond tolerance) or non-finite values."""


class PreconditionFailed(IvoptError):
    """A hypothesis the check relies on could not be certified numerically."""

    def __init__(self, message, detail=None):
        self.detail = detail
        super().__init__(message)


class NotLinearCandidate(IvoptError):
    """Candidate derivative map failed the interval-linearity check."""


class NotComparableFamily(IvoptError):
    """Members of a pointwise-max family are not comparable at a probed point."""


class InfeasiblePoint(IvoptError):
    """Queried point violates the feasible region."""


class ZeroDirection(IvoptError, ValueError):
    """A direction vector was numerically zero where a nonzero one is required."""


class LinearIndependenceViolated(IvoptError):
    """Active-constraint derivative intervals are linearly dependent."""

    def __init__(self, message, witness=None, direction=None):
        self.witness = witness
        self.direction = direction
        super().__init__(message)


class SlacknessViolated(IvoptError):
    """Complementary slackness fails for the supplied multipliers."""


class NotSeparable(IvoptError):
    """Hard-margin training found no separating hyperplane."""

    def __init__(self, message, witness_pair=None):
        self.witness_pair = witness_pair
        super().__init__(message)


class ScaleExceeded(IvoptError):
    """Problem size is beyond the desk-scale solver's enumeration guard."""


class EmptyBiasSet(IvoptError):
    """Support constraints admit no common bias value."""


class UnknownCaseId(IvoptError):
    """Gallery filter matched no registered case."""


class ParseError(IvoptError, ValueError):
    """Malformed input file or command-line value."""
