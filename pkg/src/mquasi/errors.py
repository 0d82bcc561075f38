"""Exception hierarchy shared by every module of the package."""


class AlgebraError(Exception):
    """Base class for all errors raised by mquasi."""


class LengthMismatch(AlgebraError, ValueError):
    pass


class SymbolOutOfRange(AlgebraError, ValueError):
    pass


class ArityMismatch(AlgebraError, ValueError):
    pass


class OrderMismatch(AlgebraError, ValueError):
    pass


class IndexOutOfRange(AlgebraError, ValueError):
    pass


class PositionOutOfRange(AlgebraError, ValueError):
    pass


class CapacityExceeded(AlgebraError):
    """A size guard refused to materialize or enumerate something."""


class NotAMonoid(AlgebraError):
    pass


class NotAQuasigroup(AlgebraError):
    pass


class NotAPermutation(AlgebraError, ValueError):
    pass


class ConjugateUndefined(AlgebraError):
    """The permuted graph relation is not the graph of an operation.

    ``certificate`` holds the offending tuple (0-based), when known.
    """

    def __init__(self, message, certificate=None):
        super().__init__(message)
        self.certificate = certificate


class NotFunctional(ConjugateUndefined):
    pass


class NotTotal(ConjugateUndefined):
    pass


class TermSyntaxError(AlgebraError, ValueError):
    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class UnboundVariable(AlgebraError, KeyError):
    pass


class NotOrthogonalBase(AlgebraError):
    pass


class PreconditionFailed(AlgebraError):
    pass


class UnknownFixture(AlgebraError, KeyError):
    pass


class ParseError(AlgebraError, ValueError):
    """Malformed operation file; carries a 1-based line/column location."""

    def __init__(self, message, line=None, column=None):
        loc = ""
        if line is not None:
            loc = f"line {line}" + (f", column {column}" if column is not None else "")
            message = f"{loc}: {message}"
        super().__init__(message)
        self.line = line
        self.column = column
