"""
Configuration and result types for inverse iteration and E-range scans.
"""
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np

from config.settings import settings
from core.errors import PreconditionError


@dataclass(frozen=True)
class IterationConfig:
    """
    e0:              initial shift (usually real, complex allowed)
    tol:             converged once successive estimates differ by less than tol
    reference_row:   1-based row whose entry is scaled to 1 and whose row of
                     H X gives the eigenvalue estimate
    rayleigh_update: refactor with the latest complex estimate each step
    auto_reference:  on a degenerate reference row switch to the largest
                     entry instead of raising
    """
    e0: complex = 0j
    max_iters: int = field(default_factory=lambda: settings.DEFAULT_MAX_ITERS)
    tol: float = field(default_factory=lambda: settings.DEFAULT_TOL)
    reference_row: int = 1
    rayleigh_update: bool = False
    auto_reference: bool = True

    def __post_init__(self):
        object.__setattr__(self, "e0", complex(self.e0))
        if self.max_iters < 1:
            raise PreconditionError(f"max_iters must be >= 1, got {self.max_iters}")
        if not self.tol > 0:
            raise PreconditionError(f"tol must be > 0, got {self.tol}")
        if self.reference_row < 1:
            raise PreconditionError(f"reference_row must be >= 1, got {self.reference_row}")

    def validate_for(self, dim: int) -> None:
        if self.reference_row > dim:
            raise PreconditionError(f"reference_row {self.reference_row} exceeds dimension {dim}")


@dataclass
class EigenResult:
    energy: complex
    iterations: int
    residual: float
    eigencolumn: np.ndarray      # eigencolumn[reference_row - 1] == 1
    reference_row: int
    converged: bool
    shift: complex = 0j          # E actually used for the (first) factorization

    @property
    def er(self) -> float:
        return self.energy.real

    @property
    def ei(self) -> float:
        return self.energy.imag


@dataclass(frozen=True)
class ScanConfig:
    e_min: float
    e_max: float
    de: float
    iteration: IterationConfig = field(default_factory=IterationConfig)
    dedupe_tol: float = field(default_factory=lambda: settings.DEDUPE_TOL)
    min_persistence: int = field(default_factory=lambda: settings.MIN_PERSISTENCE)
    workers: int = field(default_factory=lambda: settings.SCAN_WORKERS)

    def __post_init__(self):
        if not self.e_min < self.e_max:
            raise PreconditionError(f"e_min {self.e_min} must be below e_max {self.e_max}")
        if not 0 < self.de <= self.e_max - self.e_min:
            raise PreconditionError(f"de {self.de} must lie in (0, e_max - e_min]")
        if self.min_persistence < 1:
            raise PreconditionError("min_persistence must be >= 1")

    def grid(self) -> np.ndarray:
        steps = int(np.floor((self.e_max - self.e_min) / self.de + 1e-9))
        return self.e_min + self.de * np.arange(steps + 1)


@dataclass
class StepFailure:
    step: int
    e0: float
    error_type: str
    message: str


@dataclass
class ScanRecord:
    """One retained eigenvalue: its best result plus how often it emerged."""
    result: EigenResult
    persistence: int
    hits: int
    first_step: int

    @property
    def energy(self) -> complex:
        return self.result.energy


@dataclass
class ScanReport:
    dim: int
    halfwidth: int
    grid: List[float]
    records: List[ScanRecord] = field(default_factory=list)
    failures: List[StepFailure] = field(default_factory=list)
    unconverged_steps: List[int] = field(default_factory=list)

    @property
    def energies(self) -> List[complex]:
        return [r.energy for r in self.records]

    @property
    def exhausted(self) -> bool:
        """Nothing retained and every grid step failed or stopped unconverged."""
        stalled = len(self.failures) + len(self.unconverged_steps)
        return not self.records and bool(self.grid) and stalled >= len(self.grid)

    def nearest(self, target: complex) -> Optional[ScanRecord]:
        if not self.records:
            return None
        return min(self.records, key=lambda r: abs(r.energy - target))


@dataclass
class RowCheck:
    row: int
    result: Optional[EigenResult] = None
    error: Optional[str] = None


@dataclass
class WSensitivity:
    """Rescans at several W values; spread[i] is the worst shift of reports[first].records[i]."""
    reports: Dict[complex, ScanReport]
    spread: List[float]
