"""Exception types raised across bettilab."""


class BettiLabError(Exception):
    """Base class for all library errors."""


class ZeroPolynomial(BettiLabError, ValueError):
    pass


class NotPlusMinusOnePoles(BettiLabError, ValueError):
    """The denominator has roots other than z = 1 and z = -1."""


class DenominatorVanishes(BettiLabError, ValueError):
    pass


class NumeratorNotDivisibleByZ(BettiLabError, ValueError):
    pass


class NotPolynomial(BettiLabError, ValueError):
    pass


class NegativePowersRemain(BettiLabError, ValueError):
    pass


class FitMismatch(BettiLabError, ArithmeticError):
    """A fitted quasi-polynomial disagrees with the expansion it came from."""


class CapExceeded(BettiLabError, RuntimeError):
    pass


class NotASubideal(BettiLabError, ValueError):
    pass


class TruncationTooTight(BettiLabError, RuntimeError):
    pass


class BadParameters(BettiLabError, ValueError):
    pass


class NotPrime(BettiLabError, ValueError):
    pass


class NonHomogeneous(BettiLabError, ValueError):
    def __init__(self, message, term=None):
        super().__init__(message)
        self.term = term


class RingSpecSyntaxError(BettiLabError, SyntaxError):
    def __init__(self, message, line, column):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column
