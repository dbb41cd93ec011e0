"""Exception types raised by the numerical routines."""


class ZetaCritError(Exception):
    """Base class for all errors raised by :mod:`zetacrit`."""


class DomainError(ZetaCritError, ValueError):
    """An argument lies outside the domain of the function."""


class StepError(DomainError):
    """A finite-difference step is not strictly positive."""


class PoleError(ZetaCritError, ZeroDivisionError):
    """The function has a pole at the requested point."""


class ExclusionError(ZetaCritError, ValueError):
    """The point is explicitly excluded from the zero criterion (z = -4n)."""


class AccuracyError(ZetaCritError, ArithmeticError):
    """The requested tolerance cannot be certified."""


class ConvergenceError(AccuracyError):
    """An iterative algorithm failed to converge within its iteration budget."""


class ConsistencyError(ZetaCritError, RuntimeError):
    """An internal consistency check failed; indicates an implementation bug."""
