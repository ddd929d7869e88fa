"""Solver configuration and iteration-trace records shared by the solvers."""

from dataclasses import dataclass, field, asdict

import numpy as np

from .errors import InvalidProblem

TRACE_COLUMNS = ("step", "residual", "stepGap", "abscissa", "errorToOracle")


@dataclass(frozen=True)
class SolverConfig:
    """Tolerances and switches for the Newton solvers.

    rel_tol   stopping tolerance on the equation residual, relative to
              1 + ||Q||_F of the constant term
    step_tol  stopping tolerance on the iterate increment, relative to ||P_n||_F
    mon_tol   allowed (relative) violation of the monotone decrease of iterates
    max_iter  iteration cap
    method    Lyapunov backend: "schur" (default) or "kron" (dense oracle)
    oracle    also compute the invariant-subspace solution and record
              per-step errors against it
    seed      RNG seed echoed into results for reproducibility
    """

    rel_tol: float = 1e-10
    step_tol: float = 1e-12
    mon_tol: float = 1e-8
    max_iter: int = 60
    method: str = "schur"
    oracle: bool = False
    seed: int = 0

    def __post_init__(self):
        for name in ("rel_tol", "step_tol", "mon_tol"):
            if getattr(self, name) <= 0.0:
                raise InvalidProblem(f"{name} must be positive")
        if self.max_iter < 1:
            raise InvalidProblem("max_iter must be at least 1")
        if self.method not in ("schur", "kron"):
            raise InvalidProblem(f"method must be 'schur' or 'kron', got {self.method!r}")

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class TraceStep:
    """One Newton step: residual at P_n, gap lambda_min(P_n - P_{n+1}),
    closed-loop abscissa at P_n, and Frobenius distance to the oracle
    solution when one was supplied. ``step_gap`` and ``error_to_oracle``
    are NaN when not available (final row, no oracle)."""

    step: int
    residual: float
    step_gap: float
    abscissa: float
    error_to_oracle: float


@dataclass
class IterationTrace:
    steps: list[TraceStep] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)

    def add(self, step: TraceStep) -> None:
        self.steps.append(step)

    def residuals(self) -> np.ndarray:
        return np.array([s.residual for s in self.steps])

    def step_gaps(self) -> np.ndarray:
        return np.array([s.step_gap for s in self.steps])

    def abscissas(self) -> np.ndarray:
        return np.array([s.abscissa for s in self.steps])

    def oracle_errors(self) -> np.ndarray:
        return np.array([s.error_to_oracle for s in self.steps])

    def rows(self) -> list[tuple]:
        return [
            (s.step, s.residual, s.step_gap, s.abscissa, s.error_to_oracle)
            for s in self.steps
        ]
