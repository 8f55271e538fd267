"""Exception hierarchy shared by all modules."""


class QPError(Exception):
    """Base class for every error raised by this package."""


class ArgumentError(QPError, ValueError):
    """An argument is malformed (wrong sign, empty grid, bad size)."""


class ExcludedPairError(ArgumentError):
    """The level pair E_0 = E_1 was requested; it never degenerates."""


class DomainError(QPError, ValueError):
    """A value lies outside the admissible deformation domain."""


class NotApplicableError(QPError):
    """The operation is not defined for this kind of input."""


class FitError(QPError):
    pass


class DegenerateFitError(FitError):
    """The fit system is singular (a fit point sits at q=1 or p0=1)."""


class FitInfeasibleError(FitError):
    """The fit system has no real solution with the required geometry."""
