"""Exception types shared across the package."""


class DrinfeldError(Exception):
    pass


class PrecisionExhausted(DrinfeldError):
    pass


class DivisionByZeroToPrecision(DrinfeldError):
    pass


class WeightMismatch(DrinfeldError):
    pass


class ZeroInput(DrinfeldError):
    pass


class NotMonic(DrinfeldError):
    pass


class NotIrreducible(DrinfeldError):
    pass


class InsufficientAlphas(DrinfeldError):
    pass


class NonUnitConstantTerm(DrinfeldError):
    pass


class TruncationUnderflow(DrinfeldError):
    pass


class IndexOutOfRange(DrinfeldError):
    pass


class TooLarge(DrinfeldError):
    pass


class InsufficientInputOrder(DrinfeldError):
    pass


class RankUnsupported(DrinfeldError):
    pass


class ZeroDivisionPoint(DrinfeldError):
    pass
