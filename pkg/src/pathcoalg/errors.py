"""Exception hierarchy.

Three families map onto the CLI exit codes: ``InputError`` (2),
``CapExceeded`` (3) and ``VerificationFailed`` (4).
"""


class PathCoalgError(Exception):
    pass


class InputError(PathCoalgError, ValueError):
    pass


class CapExceeded(PathCoalgError):
    pass


class VerificationFailed(PathCoalgError):
    def __init__(self, message, payload=None):
        super().__init__(message)
        self.payload = payload


# field
class NonPrime(InputError):
    pass


class DegreeOutOfRange(InputError):
    pass


class SizeCapExceeded(CapExceeded):
    pass


class DivisionByZero(PathCoalgError, ZeroDivisionError):
    pass


class FieldMismatch(InputError):
    pass


# group
class DegreeMismatch(InputError):
    pass


class GroupTooLarge(CapExceeded):
    pass


class UnknownElement(InputError):
    pass


# graph
class UnknownVertex(InputError):
    pass


class SearchCapExceeded(CapExceeded):
    def __init__(self, message, cell_sizes=()):
        super().__init__(message)
        self.cell_sizes = tuple(cell_sizes)


# coalgebra
class ShapeMismatch(InputError):
    pass


class EnumerationCapExceeded(CapExceeded):
    pass


class OracleCapExceeded(CapExceeded):
    pass


# graph_coalgebra
class InvalidSigma(InputError):
    pass


class ZeroMu(InputError):
    pass


class GraphMismatch(InputError):
    pass


class NotAMorphism(InputError):
    pass


class NotInvertible(InputError):
    pass


class MalformedImage(InputError):
    pass


# realization
class NotGenerating(InputError):
    pass


class IdentityGenerator(InputError):
    pass


class RepNotWellDefined(InputError):
    pass
