"""Exception hierarchy shared by all modules.

The CLI reports ``type(exc).__name__`` so the class names are part of the
user-facing surface.
"""


class CodeError(Exception):
    """Base class for every operation-level error raised by mpucodes."""


class ParseError(CodeError, ValueError):
    pass


class FieldMismatch(CodeError, ValueError):
    """Operands live in different rings or fields."""


class NotAUnit(CodeError, ValueError):
    pass


class GcdNotOne(CodeError, ValueError):
    """gcd(m, q) != 1, so x^m - 1 is not squarefree."""


class NotADivisor(CodeError, ValueError):
    pass


class CapExceeded(CodeError):
    """Exhaustive enumeration refused because the dimension exceeds the cap."""


class BudgetExceeded(CodeError):
    pass


class DimensionMismatch(CodeError, ValueError):
    pass


class RankDefect(CodeError):
    """Full-rank certificate held but the generator matrix lost rank."""


class Unsupported(CodeError):
    pass


class MissingWordCache(CodeError):
    pass
