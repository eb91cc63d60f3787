"""Exception types raised by specrep."""


class SpecrepError(ValueError):
    """Base class for all specrep errors."""


class NotHermitian(SpecrepError):
    pass


class NotSquare(SpecrepError):
    pass


class DomainError(SpecrepError):
    """A function was evaluated outside its domain (e.g. 1/x at an atom 0)."""


class SingularFit(SpecrepError):
    """The least-squares design matrix is numerically rank deficient."""


class ZeroVector(SpecrepError):
    pass


class SingularOperator(SpecrepError):
    pass


class NotCyclic(SpecrepError):
    """The vector does not generate the whole space under the algebra of P."""


class AtomAtZero(SpecrepError):
    pass


class NotAbsolutelyContinuous(SpecrepError):
    pass


class ParseError(SpecrepError):
    pass
