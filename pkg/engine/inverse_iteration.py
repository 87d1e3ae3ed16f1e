"""
Inverse iteration X(n+1) = (H - E)^-1 X(n) on the compact band.

X(0) is all ones. After every solve the column is scaled so the reference
row entry is exactly 1, and the eigenvalue estimate is that row of H X.
With a fixed shift the factorization is computed once; rayleigh_update
refactors at the latest complex estimate instead.
"""
from dataclasses import replace

import numpy as np
from loguru import logger

from config.settings import settings
from core.errors import ConvergenceError, ReferenceRowDegenerateError, SingularShiftError
from engine.models import EigenResult, IterationConfig
from hamiltonian.banded import BandedComplexSymmetric
from solvers.banded_elimination import factor_shifted, factor_with_nudge, residual_norm, solve


def iterate(m: BandedComplexSymmetric, cfg: IterationConfig) -> EigenResult:
    """Converge on the eigenvalue nearest cfg.e0. Raises SingularShiftError if e0 is one."""
    cfg.validate_for(m.dim)
    return _run(m, cfg, factor_shifted(m, cfg.e0))


def iterate_with_retry(
    m: BandedComplexSymmetric, cfg: IterationConfig, step: float, attempts: int = 3
) -> EigenResult:
    """iterate, nudging e0 by step / SHIFT_NUDGE_DIVISOR whenever it is numerically singular."""
    cfg.validate_for(m.dim)
    fact, shift = factor_with_nudge(m, cfg.e0, step, attempts)
    if shift != cfg.e0:
        cfg = replace(cfg, e0=shift)
    return _run(m, cfg, fact)


def _run(m: BandedComplexSymmetric, cfg: IterationConfig, fact) -> EigenResult:
    row = cfg.reference_row - 1
    limit = settings.RESIDUAL_FACTOR * m.norm_inf()
    x = np.ones(m.dim, dtype=np.complex128)
    energy = None
    residual = None
    converged = False
    iterations = 0

    for iterations in range(1, cfg.max_iters + 1):
        y = solve(fact, x)
        peak = float(np.max(np.abs(y)))
        if not np.isfinite(peak) or peak == 0:
            raise ConvergenceError(f"Iteration {iterations} produced a degenerate column (peak={peak})")

        weight = abs(y[row]) / peak
        if weight <= settings.REFERENCE_DEGENERACY:
            if not cfg.auto_reference:
                raise ReferenceRowDegenerateError(row + 1, weight)
            new_row = int(np.argmax(np.abs(y)))
            logger.debug(f"Reference row {row + 1} degenerate ({weight:.2e}); switching to row {new_row + 1}")
            row = new_row
            energy = None

        x = y / y[row]
        x[row] = 1.0
        estimate = m.row_dot(row, x)

        if energy is not None and abs(estimate - energy) < cfg.tol:
            residual = residual_norm(m, estimate, x)
            if residual <= limit:
                energy = estimate
                converged = True
                break
        energy = estimate

        if cfg.rayleigh_update:
            try:
                fact = factor_shifted(m, energy)
            except SingularShiftError:
                # estimate is an eigenvalue to working precision; keep the last factorization
                logger.debug(f"Rayleigh shift {energy} is singular; holding the previous factorization")

    residual = residual_norm(m, energy, x)
    if not converged:
        logger.debug(
            f"No convergence from e0={cfg.e0} after {iterations} iterations "
            f"(last estimate {energy}, residual {residual:.2e})"
        )
    return EigenResult(
        energy=complex(energy),
        iterations=iterations,
        residual=residual,
        eigencolumn=x,
        reference_row=row + 1,
        converged=converged,
        shift=cfg.e0,
    )
