"""
Assembly of H = -alpha D^2 + V(x) in the complex oscillator basis.

The kinetic term is never formed: -alpha D^2 + W x^2 is diagonal with the
level energies, so the perturbation carries V(x) - W x^2. Everything is
built in the full basis at a padded size and then restricted to the parity
subset, which keeps every retained element exact.
"""
import numpy as np
from loguru import logger

from basis.oscillator import BasisSpec, Parity, basis_indices, build_power_matrices, level_energy
from core.errors import PreconditionError
from hamiltonian.banded import BandedComplexSymmetric
from hamiltonian.potential import PolynomialPotential, check_degree


def halfwidth_for(parity: Parity, pot: PolynomialPotential) -> int:
    # the -W x^2 term is always present
    full = max(pot.degree, 2)
    return full if Parity(parity) is Parity.FULL else full // 2


def assemble_dense(spec: BasisSpec, pot: PolynomialPotential) -> np.ndarray:
    """Dense matrix of H in the retained basis (parity already applied)."""
    check_degree(pot)
    if spec.parity is not Parity.FULL and not pot.is_even():
        raise PreconditionError(
            f"{spec.parity.value} parity basis requires an even potential; "
            f"odd powers present in {pot.coeffs}"
        )

    indices = basis_indices(spec.parity, spec.dim)
    size = int(indices[-1]) + 1
    p_max = max(pot.degree, 2)
    powers = build_power_matrices(spec, p_max, size)

    h = np.zeros((size, size), dtype=np.complex128)
    levels = np.array([level_energy(spec, n) for n in range(size)])
    h[np.diag_indices(size)] = levels + pot.coefficient(0)
    for k in range(1, p_max + 1):
        coeff = pot.coefficient(k)
        if k == 2:
            coeff = coeff - spec.w
        if coeff != 0:
            h += coeff * powers[k - 1]
    return h[np.ix_(indices, indices)]


def assemble(spec: BasisSpec, pot: PolynomialPotential) -> BandedComplexSymmetric:
    """Banded matrix of H for the basis spec, halfwidth p_max (p_max / 2 with parity)."""
    b = halfwidth_for(spec.parity, pot)
    matrix = BandedComplexSymmetric.from_dense(assemble_dense(spec, pot), b)
    logger.debug(
        f"Assembled H: dim={spec.dim}, parity={spec.parity.value}, halfwidth={b}, "
        f"W={spec.w}, alpha={spec.alpha}, degree={pot.degree}"
    )
    return matrix
