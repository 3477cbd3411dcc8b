"""Exception hierarchy shared by every module."""


class EvoError(Exception):
    """Base class for library errors."""


class DomainMismatch(EvoError):
    pass


class NotDivisible(EvoError, ArithmeticError):
    pass


class DivisionByZero(EvoError, ZeroDivisionError):
    pass


class NotAUnit(EvoError, ArithmeticError):
    pass


class Unsupported(EvoError):
    """The domain lacks a complete procedure for the requested operation."""


class ParseError(EvoError, ValueError):
    def __init__(self, message, position=None, expected=None):
        self.message = message
        self.position = position
        self.expected = expected
        text = message
        if position is not None:
            text += f" at position {position}"
        if expected:
            text += f" (expected {expected})"
        super().__init__(text)


class NotQuasiperfect(EvoError):
    pass


class NotPerfect(EvoError):
    pass


class ArityMismatch(EvoError, ValueError):
    pass
