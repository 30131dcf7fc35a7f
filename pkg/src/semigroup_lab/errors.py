"""Exception hierarchy shared by all numerical modules.

Errors split into two families: configuration/usage errors (bad shapes,
out-of-range parameters) and numerical failures (branch cuts, singular
matrices, instability). The CLI maps them to distinct exit codes.
"""


class SemigroupLabError(Exception):
    """Base class for all package errors."""


class ConfigError(SemigroupLabError):
    """Invalid or inconsistent configuration (unknown key, bad value)."""


class ShapeError(SemigroupLabError):
    """Array shapes or grids do not match."""


class DomainError(SemigroupLabError):
    """Coordinate outside the domain of an evolution family."""


class PreconditionError(SemigroupLabError):
    """An operation precondition is violated (e.g. Re lambda <= 0)."""


class NumericalError(SemigroupLabError):
    """Base class for failures of a numerical computation."""


class BranchCutError(NumericalError):
    """An eigenvalue is too close to the negative real axis for the
    principal logarithm."""


class SingularError(NumericalError):
    """Matrix is singular to working precision."""


class ConvergenceError(NumericalError):
    """An iterative solver failed to converge."""


class QuadratureError(NumericalError):
    """Numerical integration did not reach the requested tolerance."""


class StabilityError(NumericalError):
    """A time-stepping scheme produced non-finite values."""


class PositivityError(NumericalError):
    """A field that must be strictly positive is not."""


class CFLError(NumericalError):
    """Explicit time step violates the stability restriction."""


class InterpolationError(NumericalError):
    """Band-limited interpolation could not be evaluated."""


class DivisionWindowError(NumericalError):
    """A denominator field vanishes somewhere on the evaluation window."""
