"""Exception hierarchy shared by the solver, the variational algebra and the CLI."""


class KirchhoffError(Exception):
    """Base class for every error raised by this package."""


class InvalidInputError(KirchhoffError, ValueError):
    """A parameter lies outside its admissible range."""


class InvalidExponentError(InvalidInputError):
    """p is outside the open subcritical window (2, 2N/(N-2))."""


class ExponentOutOfRangeError(InvalidExponentError):
    """The amplitude fibering analysis only covers 2 < p <= 4."""


class InvalidLambdaError(InvalidInputError):
    pass


class InvalidSError(InvalidInputError):
    pass


class NonpositiveTError(InvalidInputError):
    pass


class DimensionTooLowError(InvalidInputError):
    """The quantity is only defined for N >= 5."""


class NotInCError(InvalidInputError):
    """B_u/p - lambda*C_u/2 <= 0, so no dilation reaches the Pohozaev manifold."""


class NotInBMinusError(InvalidInputError):
    pass


class ZeroBError(InvalidInputError):
    pass


class EmptyGridError(InvalidInputError):
    pass


class GridTooCoarseError(InvalidInputError):
    pass


class NoSolutionError(KirchhoffError):
    """The scalar dilation equation has no positive root for these parameters."""


class SolverError(KirchhoffError):
    """Numerical failure inside the shooting solver."""


class NoBracketError(SolverError):
    pass


class NonConvergenceError(SolverError):
    pass


class ProfileFormatError(KirchhoffError, ValueError):
    """A profile file could not be parsed."""
