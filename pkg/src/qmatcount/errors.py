"""Exception types shared across the package."""


class QMatError(Exception):
    """Base class for all errors raised by qmatcount."""


class NotAPrimePower(QMatError, ValueError):
    pass


class DivisionByZero(QMatError, ZeroDivisionError):
    pass


class EvenCharacteristic(QMatError, ValueError):
    """A quadratic-character operation was requested over a field of characteristic 2."""


class OddCharacteristic(QMatError, ValueError):
    pass


class ZeroArgument(QMatError, ValueError):
    pass


class Singular(QMatError, ValueError):
    pass


class OutOfRange(QMatError, ValueError):
    pass


class NotNested(QMatError, ValueError):
    pass


class ApexMissing(QMatError, ValueError):
    pass


class OddRank(QMatError, ValueError):
    pass


class DuplicateAbscissa(QMatError, ValueError):
    pass


class InvalidQuery(QMatError, ValueError):
    pass


class BudgetExceeded(QMatError):
    """Estimated enumeration work exceeds the configured budget."""

    def __init__(self, estimate, budget, partial=None):
        self.estimate = estimate
        self.budget = budget
        self.partial = partial
        super().__init__(f"estimated work {estimate} exceeds budget {budget}")


class ParseError(QMatError, ValueError):
    """Shape DSL parse failure, annotated with a byte offset."""

    def __init__(self, text, offset, expected):
        self.text = text
        self.offset = offset
        self.expected = tuple(expected)
        super().__init__(
            f"at offset {offset} in {text!r}: expected one of {', '.join(self.expected)}"
        )


class NonIntegralCount(QMatError, ArithmeticError):
    """A formula that should produce a matrix count produced a non-integer."""


class NegativeArgument(QMatError, ValueError):
    pass
