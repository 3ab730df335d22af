"""Exception hierarchy.

Everything the library raises on purpose derives from DomainError, which the
CLI maps to exit code 1. Parse problems are ParseError (exit code 2).
"""


class DomainError(Exception):
    pass


class ParseError(ValueError):
    pass


class NotPrime(DomainError, ValueError):
    pass


class NotInvertible(DomainError, ArithmeticError):
    pass


class DivisionByZero(DomainError, ZeroDivisionError):
    pass


class NotAMonomial(DomainError):
    pass


class NotInNormalizer(DomainError):
    pass


class NotSymplectic(DomainError):
    pass


class NotInGroup(DomainError):
    pass


class NotInSL2(DomainError):
    pass


class ZeroMatrix(DomainError):
    pass


class Unsupported(DomainError):
    pass
