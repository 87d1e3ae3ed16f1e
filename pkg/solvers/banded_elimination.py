"""
Complex Gaussian elimination without pivoting, inside the band.

(H - E) is reduced on a private copy of the compact band, so the assembled
matrix is never touched. Elimination of a symmetric band keeps both the band
and the symmetry of the trailing block, so only the reduced upper rows are
kept; the multipliers follow from them as U[j, i] / U[j, 0].

A BandFactorization is read-only after construction and solve() allocates
its own column, so one factorization may serve concurrent solves.
"""
from dataclasses import dataclass

import numpy as np
from loguru import logger

from config.settings import settings
from core.errors import DimensionMismatchError, PreconditionError, SingularShiftError
from hamiltonian.banded import BandedComplexSymmetric


@dataclass(frozen=True)
class BandFactorization:
    dim: int
    halfwidth: int
    factors: np.ndarray       # reduced upper band, same layout as the matrix data
    multipliers: np.ndarray   # (dim, b): multipliers[j, i-1] = U[j, i] / U[j, 0]
    shift: complex

    @property
    def rows(self) -> np.ndarray:
        return self.factors.reshape(self.dim, self.halfwidth + 1)

    @property
    def pivots(self) -> np.ndarray:
        return self.rows[:, 0]


def factor_shifted(m: BandedComplexSymmetric, e: complex) -> BandFactorization:
    """Eliminate H - E I in place on a copy of the band; no row interchanges."""
    e = complex(e)
    b, n = m.halfwidth, m.dim
    work = m.rows.copy()
    work[:, 0] -= e
    mult = np.zeros((n, b), dtype=np.complex128)
    floor = settings.PIVOT_FLOOR

    for j in range(n):
        pivot = work[j, 0]
        if not np.isfinite(pivot) or abs(pivot) <= floor:
            raise SingularShiftError(e, j + 1, complex(pivot))
        reach = min(b, n - 1 - j)
        if reach == 0:
            continue
        ratios = work[j, 1:reach + 1] / pivot
        mult[j, :reach] = ratios
        for i in range(1, reach + 1):
            # row j+i loses ratios[i-1] times row j, from its diagonal onward
            work[j + i, :reach - i + 1] -= ratios[i - 1] * work[j, i:reach + 1]

    factors = work.ravel()
    factors.flags.writeable = False
    mult.flags.writeable = False
    return BandFactorization(n, b, factors, mult, e)


def solve(f: BandFactorization, y: np.ndarray) -> np.ndarray:
    """x with (H - E) x = y, by forward elimination and back substitution."""
    y = np.asarray(y)
    if y.shape != (f.dim,):
        raise DimensionMismatchError(f"Right-hand side of shape {y.shape} for dimension {f.dim}")
    x = y.astype(np.complex128, copy=True)
    n, b = f.dim, f.halfwidth
    rows, mult = f.rows, f.multipliers

    for j in range(n - 1):
        reach = min(b, n - 1 - j)
        x[j + 1:j + 1 + reach] -= mult[j, :reach] * x[j]

    for j in range(n - 1, -1, -1):
        reach = min(b, n - 1 - j)
        if reach:
            x[j] = (x[j] - rows[j, 1:reach + 1] @ x[j + 1:j + 1 + reach]) / rows[j, 0]
        else:
            x[j] = x[j] / rows[j, 0]
    return x


def residual_norm(m: BandedComplexSymmetric, e: complex, x: np.ndarray) -> float:
    """||(H - E) x||inf / ||x||inf"""
    x = np.asarray(x, dtype=np.complex128)
    scale = np.max(np.abs(x)) if x.size else 0.0
    if scale == 0:
        raise PreconditionError("Residual of a zero column is undefined")
    r = m.matvec(x) - complex(e) * x
    return float(np.max(np.abs(r)) / scale)


def factor_with_nudge(m: BandedComplexSymmetric, e: complex, step: float, attempts: int = 3):
    """
    factor_shifted, moving E by step / SHIFT_NUDGE_DIVISOR whenever it lands
    on a singular pivot. Returns (factorization, shift actually used).
    """
    nudge = step / settings.SHIFT_NUDGE_DIVISOR
    shift = complex(e)
    for attempt in range(attempts + 1):
        try:
            return factor_shifted(m, shift), shift
        except SingularShiftError as exc:
            if attempt == attempts:
                raise
            logger.warning(f"{exc}; retrying at E={shift + nudge}")
            shift += nudge
