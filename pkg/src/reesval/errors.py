"""Exception types raised across the package."""


class ReesvalError(Exception):
    """Base class for all package errors."""


# exact fields and polynomials
class ReducibleMinimalPolynomial(ReesvalError):
    pass


class UntrustedMinimalPolynomial(ReesvalError):
    pass


class TowerTooDeep(ReesvalError):
    pass


class UnknownSymbol(ReesvalError):
    pass


class ParseError(ReesvalError):
    pass


class FieldMismatch(ReesvalError):
    pass


class InexactDivision(ReesvalError):
    pass


class ZeroInput(ReesvalError):
    pass


# hypersurface family
class BadDegrees(ReesvalError):
    pass


class NotCoprime(ReesvalError):
    pass


class BadExtraTerm(ReesvalError):
    pass


class NotEisenstein(ReesvalError):
    pass


class DegreeBoundExceeded(ReesvalError):
    pass


class DividesTangentCone(ReesvalError):
    pass


class NotIndependent(ReesvalError):
    pass


# plane valuations, pencils, contact
class NotAnInfinitelyNearPoint(ReesvalError):
    pass


class DegenerateConstant(ReesvalError):
    pass


class NotPrimary(ReesvalError):
    pass


class RootOutsideField(ReesvalError):
    def __init__(self, msg, factor=None):
        super().__init__(msg)
        self.factor = factor


class SingularContactMatrix(ReesvalError):
    pass


class NonIntegralExponent(ReesvalError):
    pass


class IncompatibleFields(FieldMismatch):
    pass


class NotYGeneral(ReesvalError):
    pass


class TruncationExhausted(ReesvalError):
    pass


class UnsupportedConjugation(ReesvalError):
    pass


class IndexOutOfRange(ReesvalError):
    pass


class NotUnitOrder(ReesvalError):
    pass


class ConstantOutsideField(ReesvalError):
    pass
