"""Exception types raised across the package."""


class PadicError(ValueError):
    """Base class for all errors raised by this package."""


class NotPrime(PadicError):
    pass


class DigitOutOfRange(PadicError):
    pass


class DenominatorDivisibleByP(PadicError):
    pass


class PrecisionMismatch(PadicError):
    pass


class PrimeMismatch(PadicError):
    pass


class ZeroAtPrecision(PadicError):
    pass


class NotContractive(PadicError):
    pass


class CoverageError(PadicError):
    """The index family does not route onto every base map."""


class ValueOutOfRange(PadicError):
    pass


class EntryOutOfRange(PadicError):
    pass


class WordTooShort(PadicError):
    pass


class AlphabetMismatch(PadicError):
    pass


class BudgetExceeded(PadicError):
    def __init__(self, count: int, budget: int):
        super().__init__(f"enumeration needs {count} words, budget is {budget}")
        self.count = count
        self.budget = budget


class TooFewPoints(PadicError):
    pass


class IncomparableLength(PadicError):
    pass


class EmptySample(PadicError):
    pass


class ConfigError(PadicError):
    pass


class ParseError(ConfigError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class ValidationError(ConfigError):
    def __init__(self, invariant: str, message: str, line: int | None = None):
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}{invariant}: {message}")
        self.invariant = invariant
        self.line = line
