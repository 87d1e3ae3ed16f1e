"""
Expectation values by the energy-shift method.

Adding delta * x^m to the potential moves an isolated eigenvalue by
delta <x^m> to first order, so the central difference
[E(+delta) - E(-delta)] / (2 delta) estimates <x^m> without ever
normalizing an eigencolumn. Both perturbed runs start from the unperturbed
energy; the branch-jump guard catches the case where they land on
different eigenvalues.
"""
from dataclasses import dataclass, field, replace
from typing import Dict, Sequence, Tuple

import numpy as np
from loguru import logger

from basis.oscillator import BasisSpec
from config.settings import settings
from core.errors import BranchJumpError, ConvergenceError, PreconditionError
from engine.inverse_iteration import iterate_with_retry
from engine.models import EigenResult, IterationConfig
from hamiltonian.builder import assemble
from hamiltonian.potential import PolynomialPotential, check_degree


@dataclass(frozen=True)
class ShiftProbe:
    power: int
    delta: float = field(default_factory=lambda: settings.PROBE_DELTA)

    def __post_init__(self):
        if self.power < 1:
            raise PreconditionError(f"Probe power must be >= 1, got {self.power}")
        if not self.delta > 0:
            raise PreconditionError(f"Probe delta must be > 0, got {self.delta}")


@dataclass
class ResponseFit:
    """Polynomial fit of E(beta) for V + beta x^power."""
    betas: Tuple[float, ...]
    energies: Tuple[complex, ...]
    coefficients: Tuple[complex, ...]   # E0, E1, E2, ... in powers of beta

    @property
    def quadratic(self) -> complex:
        return self.coefficients[2]


@dataclass
class ExpectationProfile:
    energy: complex
    x: complex
    x2: complex

    @property
    def variance(self) -> complex:
        return self.x2 - self.x ** 2


def _nudge(energy: complex) -> float:
    return 1e-9 * max(1.0, abs(energy))


def _converged_energy(spec: BasisSpec, pot: PolynomialPotential, cfg: IterationConfig) -> EigenResult:
    result = iterate_with_retry(assemble(spec, pot), cfg, _nudge(cfg.e0))
    if not result.converged:
        raise ConvergenceError(
            f"No convergence near E={cfg.e0} after {result.iterations} iterations "
            f"(residual {result.residual:.2e})"
        )
    return result


def expectation_by_shift(
    spec: BasisSpec, pot: PolynomialPotential, probe: ShiftProbe, cfg: IterationConfig
) -> complex:
    """<x^power> from the central difference of the eigenvalue nearest cfg.e0."""
    check_degree(pot.add_term(probe.power, probe.delta))
    base = _converged_energy(spec, pot, cfg)
    tracked = replace(cfg, e0=base.energy)

    plus = _converged_energy(spec, pot.add_term(probe.power, probe.delta), tracked).energy
    minus = _converged_energy(spec, pot.add_term(probe.power, -probe.delta), tracked).energy

    bound = 10 * probe.delta * spec.dim
    if abs(plus - minus) > bound:
        raise BranchJumpError(
            f"E(+delta)={plus} and E(-delta)={minus} differ by {abs(plus - minus):.3e} > {bound:.3e}"
        )
    value = (plus - minus) / (2 * probe.delta)
    logger.info(f"<x^{probe.power}> = {value:.10g} at E = {base.energy:.13g} (delta={probe.delta})")
    return value


def quadratic_response(
    spec: BasisSpec,
    pot: PolynomialPotential,
    cfg: IterationConfig,
    power: int = 2,
    betas: Sequence[float] = (0.001, 0.002),
) -> ResponseFit:
    """
    Fit E(beta) for V + beta x^power through the unperturbed energy and the
    runs at +-beta. A quartic in beta is fitted, so odd-order terms do not
    leak into the beta^2 coefficient.
    """
    base = _converged_energy(spec, pot, cfg)
    tracked = replace(cfg, e0=base.energy)

    samples = [0.0]
    energies = [base.energy]
    for beta in betas:
        for signed in (beta, -beta):
            samples.append(signed)
            energies.append(_converged_energy(spec, pot.add_term(power, signed), tracked).energy)

    degree = min(4, len(samples) - 1)
    vander = np.vander(np.asarray(samples), degree + 1, increasing=True)
    coeffs, *_ = np.linalg.lstsq(vander, np.asarray(energies, dtype=np.complex128), rcond=None)
    logger.info(f"E(beta) fit for x^{power}: beta^2 coefficient {coeffs[2]:.10g}")
    return ResponseFit(tuple(samples), tuple(energies), tuple(complex(c) for c in coeffs))


def expectation_profile(
    spec: BasisSpec, pot: PolynomialPotential, cfg: IterationConfig, delta: float = None
) -> ExpectationProfile:
    """<x>, <x^2> and the variance of the state nearest cfg.e0."""
    delta = settings.PROBE_DELTA if delta is None else delta
    base = _converged_energy(spec, pot, cfg)
    tracked = replace(cfg, e0=base.energy)
    values: Dict[int, complex] = {}
    for power in (1, 2):
        values[power] = expectation_by_shift(spec, pot, ShiftProbe(power, delta), tracked)
    return ExpectationProfile(energy=base.energy, x=values[1], x2=values[2])
