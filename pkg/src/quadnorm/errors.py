"""Exception hierarchy shared by every module."""


class QuadNormError(Exception):
    """Base class for all library errors."""


class MixedRings(QuadNormError, ValueError):
    pass


class NotAUnit(QuadNormError, ArithmeticError):
    pass


class UnknownVariable(QuadNormError, KeyError):
    pass


class NotDivisible(QuadNormError, ArithmeticError):
    pass


class LocalizationUnsupported(QuadNormError, NotImplementedError):
    pass


class InfiniteRing(QuadNormError, ValueError):
    pass


class DimensionMismatch(QuadNormError, ValueError):
    pass


class NotSquare(DimensionMismatch):
    pass


class InvalidAlgebra(QuadNormError, ValueError):
    pass


class MixedAlgebras(QuadNormError, ValueError):
    pass


class PartitionMismatch(QuadNormError, ValueError):
    pass


class HomMismatch(QuadNormError, ValueError):
    pass


class TowerMismatch(QuadNormError, ValueError):
    pass


class NotNormPreserving(QuadNormError, ValueError):
    def __init__(self, message, equation=None):
        super().__init__(message)
        self.equation = equation


class ChainMismatch(QuadNormError, ValueError):
    pass


class NotFound(QuadNormError, LookupError):
    pass


class BaseMismatch(QuadNormError, ValueError):
    pass


class InternalContradiction(QuadNormError, AssertionError):
    """A computed object violates an identity that must hold; indicates a bug."""


class CoverError(QuadNormError, ValueError):
    pass


class CocycleViolation(QuadNormError, ValueError):
    pass


class NotGlobalizable(QuadNormError, LookupError):
    pass


class UnsupportedBase(QuadNormError, ValueError):
    pass


class GenerationExhausted(QuadNormError, RuntimeError):
    pass


class ParseError(QuadNormError, ValueError):
    pass
