"""
E-range scans and the stability checks built on them.

A scan restarts inverse iteration from X(0) at every grid point
e_min, e_min + de, ..., e_max. Converged energies are clustered; a cluster
is kept only if it emerged at min_persistence consecutive grid points and
its real part falls inside the scanned window (one step of slack on each
side). The dimension sweep, the reference-row check and the W check are the
three ways of confirming that a retained eigenvalue is stable.
"""
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import Dict, List, Optional, Sequence

from loguru import logger

from basis.oscillator import BasisSpec
from core.errors import PreconditionError, ReferenceRowDegenerateError, ResonanceError
from engine.inverse_iteration import iterate, iterate_with_retry
from engine.models import (
    EigenResult,
    IterationConfig,
    RowCheck,
    ScanConfig,
    ScanRecord,
    ScanReport,
    StepFailure,
    WSensitivity,
)
from hamiltonian.banded import BandedComplexSymmetric
from hamiltonian.builder import assemble
from hamiltonian.potential import PolynomialPotential


@dataclass
class _StepOutcome:
    step: int
    e0: float
    result: Optional[EigenResult] = None
    failure: Optional[StepFailure] = None


def _run_step(m: BandedComplexSymmetric, cfg: ScanConfig, step: int, e0: float) -> _StepOutcome:
    it_cfg = replace(cfg.iteration, e0=complex(e0))
    try:
        result = iterate_with_retry(m, it_cfg, cfg.de)
        return _StepOutcome(step, e0, result=result)
    except ResonanceError as exc:
        logger.warning(f"Scan step {step} (E={e0:.6g}) failed: {exc}")
        return _StepOutcome(step, e0, failure=StepFailure(step, e0, type(exc).__name__, str(exc)))


def _longest_run(steps: List[int]) -> int:
    best = run = 1
    for prev, cur in zip(steps, steps[1:]):
        run = run + 1 if cur == prev + 1 else 1
        best = max(best, run)
    return best


def _cluster(outcomes: List[_StepOutcome], cfg: ScanConfig) -> List[ScanRecord]:
    clusters: List[List[_StepOutcome]] = []
    for outcome in outcomes:
        if outcome.result is None or not outcome.result.converged:
            continue
        energy = outcome.result.energy
        for members in clusters:
            anchor = members[0].result.energy
            if abs(energy - anchor) <= cfg.dedupe_tol * max(1.0, abs(anchor)):
                members.append(outcome)
                break
        else:
            clusters.append([outcome])

    records = []
    lo, hi = cfg.e_min - cfg.de, cfg.e_max + cfg.de
    for members in clusters:
        steps = [o.step for o in members]
        persistence = _longest_run(steps)
        best = min(members, key=lambda o: (o.result.residual, o.step))
        if persistence < cfg.min_persistence:
            logger.debug(f"Dropping {best.result.energy}: persistence {persistence}")
            continue
        if not lo <= best.result.energy.real <= hi:
            logger.debug(f"Dropping {best.result.energy}: outside the scanned window")
            continue
        records.append(ScanRecord(best.result, persistence, len(members), steps[0]))

    records.sort(key=lambda r: (r.energy.real, r.energy.imag))
    return records


def scan(m: BandedComplexSymmetric, cfg: ScanConfig) -> ScanReport:
    """Inverse iteration from every grid point, deduplicated into retained eigenvalues."""
    cfg.iteration.validate_for(m.dim)
    grid = cfg.grid()
    logger.info(
        f"Scanning [{cfg.e_min}, {cfg.e_max}] in {len(grid)} steps of {cfg.de} "
        f"(dim={m.dim}, halfwidth={m.halfwidth})"
    )

    if cfg.workers > 1:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            outcomes = list(pool.map(lambda se: _run_step(m, cfg, se[0], se[1]), enumerate(grid)))
    else:
        outcomes = [_run_step(m, cfg, step, e0) for step, e0 in enumerate(grid)]

    report = ScanReport(
        dim=m.dim,
        halfwidth=m.halfwidth,
        grid=[float(e) for e in grid],
        records=_cluster(outcomes, cfg),
        failures=[o.failure for o in outcomes if o.failure is not None],
        unconverged_steps=[o.step for o in outcomes if o.result is not None and not o.result.converged],
    )
    logger.info(
        f"Scan retained {len(report.records)} eigenvalue(s); "
        f"{len(report.unconverged_steps)} unconverged step(s), {len(report.failures)} failure(s)"
    )
    return report


def dimension_sweep(
    spec: BasisSpec, pot: PolynomialPotential, dims: Sequence[int], cfg: ScanConfig
) -> Dict[int, ScanReport]:
    """Reassemble and rescan at each dimension so convergence (or semi-convergence) shows."""
    dims = list(dims)
    if not dims or any(b <= a for a, b in zip(dims, dims[1:])):
        raise PreconditionError(f"Dimensions must be non-empty and ascending, got {dims}")
    sweep = {}
    for dim in dims:
        report = scan(assemble(replace(spec, dim=dim), pot), cfg)
        logger.info(f"ND={dim}: {[f'{e:.13g}' for e in report.energies]}")
        sweep[dim] = report
    return sweep


def reference_row_check(
    m: BandedComplexSymmetric, cfg: IterationConfig, rows: Sequence[int]
) -> List[RowCheck]:
    """Repeat the iteration with each reference row; a degenerate row is recorded, not raised."""
    checks = []
    for row in rows:
        row_cfg = replace(cfg, reference_row=row, auto_reference=False)
        try:
            checks.append(RowCheck(row, result=iterate(m, row_cfg)))
        except ReferenceRowDegenerateError as exc:
            logger.warning(f"Reference row {row}: {exc}")
            checks.append(RowCheck(row, error=str(exc)))
    return checks


def row_spread(checks: Sequence[RowCheck]) -> float:
    """Largest pairwise distance between the energies of the successful row checks."""
    energies = [c.result.energy for c in checks if c.result is not None]
    return max((abs(a - b) for a in energies for b in energies), default=0.0)


def w_sensitivity(
    spec: BasisSpec, pot: PolynomialPotential, ws: Sequence[complex], cfg: ScanConfig
) -> WSensitivity:
    """Rescan at several W; a stable eigenvalue barely moves with W."""
    if not ws:
        raise PreconditionError("At least one W value is required")
    reports = {complex(w): scan(assemble(replace(spec, w=complex(w)), pot), cfg) for w in ws}
    first, *others = reports.values()
    spread = []
    for record in first.records:
        shifts = [
            abs(o.nearest(record.energy).energy - record.energy) if o.records else math.inf
            for o in others
        ]
        spread.append(max(shifts, default=0.0))
    return WSensitivity(reports=reports, spread=spread)
