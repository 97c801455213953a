"""Exception types shared across the package."""


class LCError(Exception):
    """Base class for errors raised by lcpower."""


class DomainError(LCError, ValueError):
    """Input lies outside an operation's mathematical domain."""


class PrecisionError(LCError, ArithmeticError):
    """The validity window is too narrow to represent the requested result."""


class WindowExceededError(PrecisionError):
    """A comparison window reaches beyond what the stored terms certify."""


class DegenerateInputError(LCError, ValueError):
    """Zero vector / matrix, or a vanishing quantity the operation must divide by."""


class DominanceUncertainError(LCError):
    """The constant-part matrix could not be certified to have a strictly
    dominant eigenvalue.  Carries the last estimate and the modulus ratio."""

    def __init__(self, message, estimate=None, ratio=None):
        super().__init__(message)
        self.estimate = estimate
        self.ratio = ratio


class LostDominanceError(LCError):
    """Normalization lost its constant part mid-iteration; the start vector
    had (numerically) no component along the dominant eigenvector."""


class ParseError(LCError, ValueError):
    """Malformed text input, with source position."""

    def __init__(self, message, line=1, col=1):
        super().__init__(f"{message} (line {line}, column {col})")
        self.line = line
        self.col = col
