"""Exception types shared across the package."""


class NlsmtError(Exception):
    """Base class for all package-specific errors."""


class EmptyInterval(NlsmtError):
    pass


class ReciprocalOfZeroSpanningInterval(NlsmtError):
    pass


class DomainViolation(NlsmtError):
    pass


class UnknownFunctionSymbol(NlsmtError):
    pass


class NonVariableNestedArgument(NlsmtError):
    pass


class SmtSyntaxError(NlsmtError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{message} at line {line}, column {col}")
        self.line = line
        self.col = col


class UnsupportedCommand(NlsmtError):
    pass


class SortError(NlsmtError):
    pass


class CnfBlowup(NlsmtError):
    pass


class DivisionByZeroConstant(NlsmtError):
    pass


class NotResolvable(NlsmtError):
    pass


class EmptyFeasibleSet(NlsmtError):
    pass


class PreconditionViolated(NlsmtError):
    """Internal assertion: a transition rule was invoked outside its guard."""


class NonPlanarTrace(NlsmtError):
    pass
