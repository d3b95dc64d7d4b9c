"""Exception types shared across the package."""


class DimensionMismatch(ValueError):
    """Operators living on different truncated Fock spaces were combined."""


class InvalidDensityMatrix(ValueError):
    """A matrix failed the Hermiticity, trace or positivity checks."""


class SolverError(RuntimeError):
    """Base class for numerical failures (CLI exit code 3)."""


class DegenerateKernel(SolverError):
    """The Liouvillian kernel is not one-dimensional to working precision."""


class NonPositive(SolverError):
    """A stationary state has an eigenvalue below the positivity tolerance."""


class StepTooLarge(SolverError):
    """Time step violates the stability guard, or the integration blew up."""


class SingularSystem(SolverError):
    """The truncated population recurrence has no unique normalized solution."""


class NonConvergence(SolverError):
    """A series or an adaptive loop did not converge within its budget."""
