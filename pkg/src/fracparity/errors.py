"""Exception hierarchy shared by all modules."""


class FracparityError(Exception):
    pass


class DivisionByZero(FracparityError, ZeroDivisionError):
    pass


class NotPrime(FracparityError):
    pass


class PrimeTooSmall(FracparityError):
    pass


class Singular(FracparityError):
    pass


class NotSkewSymmetric(FracparityError):
    pass


class DimensionMismatch(FracparityError):
    pass


class DegenerateLine(FracparityError):
    def __init__(self, index):
        self.index = index
        super().__init__(f"line {index} is degenerate (rank < 2)")


class AmbientTooLarge(FracparityError):
    pass


class LoopEdge(FracparityError):
    pass


class ParseError(FracparityError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ValueOutOfField(ParseError):
    pass


class TooLarge(FracparityError):
    pass


class NoParityBase(FracparityError):
    pass


class MonteCarloFailure(FracparityError):
    pass


class MaxRankNotAttained(MonteCarloFailure):
    pass


class IterationCap(FracparityError):
    pass
