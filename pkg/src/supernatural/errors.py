"""Exception hierarchy shared by the library and the CLI.

Every class carries an ``exit_code`` so the CLI can map failures onto
distinct, documented process exit statuses.
"""


class NaturalError(Exception):
    exit_code = 1


class ExprSyntaxError(NaturalError, ValueError):
    """Malformed expression text."""

    exit_code = 3

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at offset {position})"
        super().__init__(message)
        self.position = position


class DomainError(NaturalError, ValueError):
    """A literal or argument outside the positive integers."""

    exit_code = 4


class BudgetExceeded(NaturalError, ArithmeticError):
    """An intermediate value would exceed the evaluation bit budget."""

    exit_code = 5

    def __init__(self, message, subexpr=None, index=None):
        super().__init__(message)
        self.subexpr = subexpr
        self.index = index


class NotIncreasing(NaturalError, ValueError):
    exit_code = 6


class NotPolynomial(NaturalError, ValueError):
    exit_code = 7


class SizeLimitExceeded(NaturalError):
    """Exact length search refused; ``upper_bound`` is still meaningful."""

    exit_code = 8

    def __init__(self, message, upper_bound):
        super().__init__(message)
        self.upper_bound = upper_bound


class UnitInput(NaturalError, ValueError):
    """1 is neither prime nor composite."""

    exit_code = 4


class SearchExhausted(NaturalError):
    """A bounded search stopped before reaching its goal.

    ``partial`` holds whatever was found before the bound was hit.
    """

    exit_code = 9

    def __init__(self, message, partial=()):
        super().__init__(message)
        self.partial = list(partial)
