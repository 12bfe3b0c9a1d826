"""Exception hierarchy shared by every ratknot module."""


class RatKnotError(Exception):
    """Base class for all errors raised by ratknot."""


class DomainError(RatKnotError, ValueError):
    """An argument lies outside the domain of an operation."""


class NoEvenExpansion(DomainError):
    """The fraction has both numerator and denominator odd."""


class NotCoprime(DomainError):
    """A fraction was given with gcd(p, q) != 1."""


class InvalidCF(DomainError):
    """A continued fraction violates the preconditions of an operation."""


class ResourceLimit(RatKnotError):
    """An enumeration would exceed its configured cap."""


class DivisionByZero(RatKnotError, ZeroDivisionError):
    pass


class SubstitutionSingularity(RatKnotError):
    """A substituted rational function kept a non-unit denominator."""


class InternalError(RatKnotError, RuntimeError):
    pass
