"""Exception hierarchy.

Two families matter for the CLI: ``InputError`` maps to exit code 2
(malformed problems, bad dimensions), ``SolverError`` maps to exit code 1
(a well-posed problem the solver could not or refused to handle).
"""


class CarekitError(Exception):
    """Base class for all carekit errors."""


class InputError(CarekitError):
    """Invalid user input: files, dimensions, parameter ranges."""


class ParseError(InputError):
    """Problem file is not valid JSON or not an object."""


class MissingField(InputError):
    """A required problem-file field is absent. Message names the field."""


class DimensionMismatch(InputError):
    """Array shapes are inconsistent with each other or with declared sizes."""


class InvalidProblem(InputError):
    """Entries or parameters violate a precondition (non-finite, p < 1, ...)."""


class SolverError(CarekitError):
    """Numerical failure or refused problem."""


class AsymmetricInput(SolverError):
    """Matrix expected to be symmetric deviates beyond the symmetry tolerance."""


class EigensolverFailure(SolverError):
    """A symmetric eigensolve or SVD did not converge."""


class SpectrumDegenerate(SolverError):
    """Lyapunov spectrum condition failed: some eigenvalue sum is (near) zero."""


class ResidualViolation(SolverError):
    """A solver produced a solution whose residual exceeds its contract."""


class ExponentialOverflow(SolverError):
    """exp(tA) overflowed double precision."""


class NotStabilizable(SolverError):
    """The pair (A, B) fails the stabilizability rank test."""


class NotDetectable(SolverError):
    """The pair (C, A) fails the detectability rank test."""


class StabilizationFailed(SolverError):
    """Both gain constructions produced an unstable closed loop."""


class InitialGuessNotStabilizing(SolverError):
    """The starting operator does not make the closed loop stable."""


class IterateNotStabilizing(SolverError):
    """A Newton iterate lost closed-loop stability: numerical breakdown."""


class MonotonicityViolated(SolverError):
    """Newton iterates stopped decreasing in the semidefinite order."""


class MaxIterExceeded(SolverError):
    """Iteration cap reached before meeting the stopping tolerances."""


class LinearizationUnstable(SolverError):
    """The derivative map at the current point is not a stable generator."""


class ConeViolation(SolverError):
    """A quantity required to be positive semidefinite is not."""


class RangeConditionFailed(SolverError):
    """The anti-stable block is not contained in the range of B."""


class NonPositiveA(SolverError):
    """The regularization parameter must be strictly positive."""


class OracleFailure(SolverError):
    """The invariant-subspace solve broke down (singular basis block)."""
