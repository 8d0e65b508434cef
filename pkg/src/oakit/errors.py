"""Exception hierarchy shared by every oakit module."""


class OAError(Exception):
    """Base class for all oakit failures."""


class InvalidParams(OAError, ValueError):
    pass


# galois
class NotPrimePower(InvalidParams):
    pass


class Unsupported(InvalidParams):
    pass


class DivideByZero(OAError, ZeroDivisionError):
    pass


class EvenCharacteristic(InvalidParams):
    pass


# array model and file format
class FormatError(OAError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class RangeError(FormatError):
    pass


class EmptySelection(InvalidParams):
    pass


class IndexOutOfRange(OAError, IndexError):
    pass


class MapMismatch(InvalidParams):
    pass


# metrics
class EmptySubset(InvalidParams):
    pass


class AllZeroJ(OAError):
    pass


class TooManyColumns(InvalidParams):
    pass


class NotTwoLevel(InvalidParams):
    pass


# bounds
class SolverScaleExceeded(InvalidParams):
    pass


class SolverError(OAError, RuntimeError):
    """The LP reported infeasible or unbounded, which cannot happen for valid input."""


# constructions
class InvalidScheme(InvalidParams):
    pass


class GroupMismatch(InvalidParams):
    pass


class BadResidueClass(InvalidParams):
    pass


class ConstructionInvalid(OAError, RuntimeError):
    pass


class NotHadamard(InvalidParams):
    pass


class PartitionMismatch(InvalidParams):
    pass


class PreconditionViolated(InvalidParams):
    pass


class NotMOLS(InvalidParams):
    pass


class NotConvertible(InvalidParams):
    pass


class NotSBIBD(InvalidParams):
    pass


class BlockIndexOutOfRange(OAError, IndexError):
    pass


# codes
class RankDeficient(InvalidParams):
    pass


class ScaleExceeded(InvalidParams):
    pass


class TooFewWords(InvalidParams):
    pass


# space-filling and sampling
class MixedLevelsUnsupported(InvalidParams):
    pass


class ShapeMismatch(InvalidParams):
    pass


class NotFromGamma(InvalidParams):
    pass


class LevelCountMismatch(InvalidParams):
    pass


class PlanInvalid(InvalidParams):
    pass
