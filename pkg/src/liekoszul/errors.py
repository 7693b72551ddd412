"""Exception types raised across the package."""


class LieKoszulError(Exception):
    """Base class for every error raised by liekoszul."""


# scalar domains
class EvenCharacteristic(LieKoszulError, ValueError):
    pass


class NotPrime(LieKoszulError, ValueError):
    pass


class NonCommutative(LieKoszulError, ValueError):
    pass


class NonAssociative(LieKoszulError, ValueError):
    pass


class NoUnit(LieKoszulError, ValueError):
    pass


class NotAField(LieKoszulError, ValueError):
    pass


class DomainIsField(LieKoszulError, ValueError):
    pass


# linear algebra
class DimensionMismatch(LieKoszulError, ValueError):
    pass


class TooLarge(LieKoszulError, MemoryError):
    pass


# Lie algebras
class IndexOutOfRange(LieKoszulError, IndexError):
    pass


class JacobiFails(LieKoszulError, ValueError):
    def __init__(self, triple, defect):
        self.triple = triple
        self.defect = defect
        super().__init__(f"Jacobi identity fails on basis triple {triple}: defect {defect}")


class GradingIncompatible(LieKoszulError, ValueError):
    def __init__(self, pair, message=""):
        self.pair = pair
        super().__init__(message or f"bracket of basis pair {pair} is not homogeneous of the expected weight")


class GradingGroupMismatch(LieKoszulError, ValueError):
    pass


class DomainMismatch(LieKoszulError, ValueError):
    pass


class BaseFieldMismatch(LieKoszulError, ValueError):
    pass


class NotAnIdeal(LieKoszulError, ValueError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"subspace is not an ideal: bracket of basis vector {witness[0]} "
                         f"with generator {witness[1]} leaves it")


class NotADerivation(LieKoszulError, ValueError):
    pass


class NotSkew(LieKoszulError, ValueError):
    pass


class FormDegenerate(LieKoszulError, ValueError):
    pass


class FormNotInvariant(LieKoszulError, ValueError):
    pass


# chains
class DegreeMismatch(LieKoszulError, ValueError):
    pass


class NotGraded(LieKoszulError, ValueError):
    pass


class NotACycle(LieKoszulError, ValueError):
    pass


# catalog
class UnknownName(LieKoszulError, KeyError):
    pass


class BadPartition(LieKoszulError, ValueError):
    pass


class CharacteristicMismatch(LieKoszulError, ValueError):
    pass


# .lie files
class LieSyntaxError(LieKoszulError, ValueError):
    def __init__(self, line, message):
        self.line = line
        super().__init__(f"line {line}: {message}")


class LieSemanticError(LieKoszulError, ValueError):
    def __init__(self, line, message):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)
