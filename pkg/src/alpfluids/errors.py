"""Error types with the process exit codes the command line maps them to."""
from __future__ import annotations

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_CONFIG = 2
EXIT_NONFINITE = 3
EXIT_SOLVER = 4


class AlpFluidsError(Exception):
    exit_code = EXIT_SOLVER
    code = "error"


class ConfigError(AlpFluidsError, ValueError):
    exit_code = EXIT_CONFIG
    code = "config_invalid"

    def __init__(self, key: str, message: str):
        super().__init__(f"{key}: {message}")
        self.key = key


class NonFiniteStateError(AlpFluidsError, FloatingPointError):
    exit_code = EXIT_NONFINITE
    code = "non_finite_state"

    def __init__(self, step: int, field: str = ""):
        where = f" in field {field!r}" if field else ""
        super().__init__(f"non-finite value at step {step}{where}")
        self.step = step
        self.field = field


class ModelDomainError(AlpFluidsError, ValueError):
    """A state left the domain of a model (non-positive density, vanishing charge density)."""

    code = "model_domain"


class SolverError(AlpFluidsError, RuntimeError):
    code = "solver_failed"

    def __init__(self, message: str, residual_history=()):
        super().__init__(message)
        self.residual_history = list(residual_history)


class BijectivityError(SolverError):
    code = "closure_not_invertible"
