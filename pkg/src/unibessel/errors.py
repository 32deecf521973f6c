"""Exception types shared across the package."""


class UnibesselError(Exception):
    """Base class for all package errors."""


class DomainError(UnibesselError, ValueError):
    """An argument lies outside the region where the function is defined."""


class PoleError(DomainError):
    """The Gamma function was asked for its value at a pole."""


class QuadratureFailure(UnibesselError, ArithmeticError):
    """A quadrature did not reach its error target within the budget."""


class NotConverged(UnibesselError, ArithmeticError):
    """A series or integral could not be brought to the requested tolerance.

    ``partial`` holds the best unconverged result when one exists.
    """

    def __init__(self, message: str, partial=None):
        self.partial = partial
        super().__init__(message)


class ParseError(UnibesselError, ValueError):
    """A catalogue file could not be parsed.

    Parameters
    ----------
    message : str
        What went wrong.
    line : int
        One-based line number of the offending line, 0 if not line specific.
    """

    def __init__(self, message: str, line: int = 0):
        self.line = line
        prefix = f"line {line}: " if line else ""
        super().__init__(prefix + message)
