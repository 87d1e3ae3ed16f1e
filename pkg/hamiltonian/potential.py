"""
Polynomial potentials sum_k c_k x^k with complex coefficients.

The factory helpers at the bottom build the perturbed-oscillator systems the
presets run: triple well, PT-symmetric cubic, cubic oscillator with a
complex coupling, x^M - lambda x^N, and the quartic double well.
"""
import cmath
import math
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np
from numpy.polynomial import Polynomial
from numpy.polynomial import polynomial as P

from config.settings import settings
from core.errors import DomainError, PreconditionError


@dataclass(frozen=True)
class PolynomialPotential:
    """
    coeffs[k] multiplies x^k. `origin` records where the local coordinate
    x = 0 sits in the original coordinate after shift_origin.
    """
    coeffs: Tuple[complex, ...]
    origin: float = 0.0

    def __post_init__(self):
        coeffs = tuple(complex(c) for c in self.coeffs)
        if not all(cmath.isfinite(c) for c in coeffs) or not math.isfinite(self.origin):
            raise DomainError(f"Non-finite potential coefficients: {coeffs}")
        object.__setattr__(self, "coeffs", coeffs)
        if self.degree < 1:
            raise PreconditionError("Potential must contain at least one non-constant term")

    @property
    def degree(self) -> int:
        for k in range(len(self.coeffs) - 1, -1, -1):
            if self.coeffs[k] != 0:
                return k
        return 0

    def coefficient(self, k: int) -> complex:
        return self.coeffs[k] if k < len(self.coeffs) else 0j

    def is_even(self) -> bool:
        return all(c == 0 for c in self.coeffs[1::2])

    def evaluate(self, x):
        return P.polyval(x, np.asarray(self.coeffs, dtype=np.complex128))

    def add_term(self, power: int, coeff: complex) -> "PolynomialPotential":
        """New potential with coeff * x^power added."""
        if power < 0:
            raise PreconditionError(f"Power must be >= 0, got {power}")
        coeffs = list(self.coeffs) + [0j] * max(0, power + 1 - len(self.coeffs))
        coeffs[power] += complex(coeff)
        return PolynomialPotential(tuple(coeffs), self.origin)


def shift_origin(pot: PolynomialPotential, a: float) -> PolynomialPotential:
    """
    Exact re-expansion about x = a: the result evaluated at t equals the
    original evaluated at a + t.
    """
    if a == 0:
        return pot
    composed = Polynomial(np.asarray(pot.coeffs, dtype=np.complex128))(Polynomial([a, 1.0]))
    coeffs = np.zeros(len(pot.coeffs), dtype=np.complex128)
    coeffs[:len(composed.coef)] = composed.coef
    return PolynomialPotential(tuple(coeffs), pot.origin + a)


def check_degree(pot: PolynomialPotential) -> None:
    if pot.degree > settings.MAX_DEGREE:
        raise PreconditionError(
            f"Potential degree {pot.degree} exceeds the supported maximum {settings.MAX_DEGREE}"
        )


def from_terms(terms: Sequence[Tuple[int, complex]], origin: float = 0.0) -> PolynomialPotential:
    """Build a potential from (power, coefficient) pairs; repeated powers add."""
    top = max(p for p, _ in terms)
    coeffs = [0j] * (top + 1)
    for power, coeff in terms:
        if power < 0:
            raise PreconditionError(f"Power must be >= 0, got {power}")
        coeffs[power] += complex(coeff)
    return PolynomialPotential(tuple(coeffs), origin)


def triple_well(g: float) -> PolynomialPotential:
    """x^2 - 2 g^2 x^4 + g^4 x^6"""
    return from_terms([(2, 1.0), (4, -2.0 * g ** 2), (6, g ** 4)])


def pt_cubic(a: float, b: float) -> PolynomialPotential:
    """i A x^3 + i B x"""
    return from_terms([(1, 1j * b), (3, 1j * a)])


def cubic_oscillator(g: float, phi: float) -> PolynomialPotential:
    """x^2 / 2 + g e^(i phi) x^3, used with alpha = 1/2"""
    return from_terms([(2, 0.5), (3, g * cmath.exp(1j * phi))])


def power_pair(m: int, n: int, lam: float) -> PolynomialPotential:
    """x^M - lambda x^N"""
    return from_terms([(m, 1.0), (n, -lam)])


def double_well(lam: float) -> PolynomialPotential:
    """-x^2 + lambda^2 x^4 / 2, origin at the symmetry centre"""
    return from_terms([(2, -1.0), (4, 0.5 * lam ** 2)])
