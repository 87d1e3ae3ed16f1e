"""
Exception hierarchy shared by the numerical modules and the runner.

Library code raises these; the scanner records them per step and the CLI
maps them to exit codes through runner.failure_classifier.
"""
from typing import Optional


class ResonanceError(Exception):
    """Root of every error raised by this package"""
    pass


class DomainError(ResonanceError, ValueError):
    """Input outside the mathematical domain (NaN, W = 0, ...)"""
    pass


class PreconditionError(ResonanceError, ValueError):
    """Caller violated an operation precondition"""
    pass


class DimensionMismatchError(PreconditionError):
    """Column length does not match the matrix dimension"""
    pass


class SingularShiftError(ResonanceError):
    """A pivot fell below the floor: E is numerically an eigenvalue"""

    def __init__(self, shift: complex, pivot_index: int, pivot: complex):
        self.shift = shift
        self.pivot_index = pivot_index
        self.pivot = pivot
        super().__init__(
            f"Singular shift E={shift}: |pivot {pivot_index}| = {abs(pivot):.3e}; perturb E and retry"
        )


class ReferenceRowDegenerateError(ResonanceError):
    """The eigencolumn has (numerically) no weight on the reference row"""

    def __init__(self, row: int, magnitude: float):
        self.row = row
        self.magnitude = magnitude
        super().__init__(
            f"Reference row {row} is degenerate (relative weight {magnitude:.3e}); choose another row"
        )


class ConvergenceError(ResonanceError):
    """Inverse iteration did not reach the requested tolerance"""
    pass


class BranchJumpError(ResonanceError):
    """Two perturbed runs converged onto different eigenvalues"""
    pass


class ConfigError(ResonanceError):
    """Problem configuration is unreadable or invalid"""

    def __init__(self, message: str, key: Optional[str] = None):
        self.key = key
        super().__init__(message if key is None else f"{key}: {message}")


class UnknownPresetError(ConfigError):
    pass
