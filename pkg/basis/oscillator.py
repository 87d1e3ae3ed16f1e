"""
Complex-parameter harmonic oscillator basis.

The basis functions are the eigenfunctions of the reference Hamiltonian
-alpha D^2 + W x^2. With W complex the same closed-form level energies and
coordinate matrix elements hold once the square and fourth roots are taken
on the principal branch.
"""
import cmath
import math
from dataclasses import dataclass
from enum import Enum
from typing import List

import numpy as np
from loguru import logger

from core.errors import DomainError, PreconditionError


class Parity(str, Enum):
    EVEN = "even"
    ODD = "odd"
    FULL = "full"


@dataclass(frozen=True)
class BasisSpec:
    """Oscillator reference parameters: kinetic coefficient, W, parity and size."""
    alpha: float
    w: complex
    parity: Parity = Parity.FULL
    dim: int = 1

    def __post_init__(self):
        object.__setattr__(self, "w", complex(self.w))
        object.__setattr__(self, "parity", Parity(self.parity))
        if not math.isfinite(self.alpha) or not cmath.isfinite(self.w):
            raise DomainError(f"Non-finite basis parameters: alpha={self.alpha}, W={self.w}")
        if self.alpha <= 0:
            raise PreconditionError(f"alpha must be > 0, got {self.alpha}")
        if self.dim < 1:
            raise PreconditionError(f"dim must be >= 1, got {self.dim}")


def principal_root(z: complex, k: int) -> complex:
    """
    Principal k-th root (k = 2 or 4), argument in (-pi/k, pi/k].

    z = 0 returns 0. The fourth root is taken as the square root of the
    principal square root, which keeps the argument on the principal branch.
    """
    if k not in (2, 4):
        raise PreconditionError(f"Only square and fourth roots are supported, got k={k}")
    z = complex(z)
    if not cmath.isfinite(z):
        raise DomainError(f"Cannot take a root of non-finite value {z}")
    if z == 0:
        return 0j
    # -0.0 imaginary parts would select the branch at -pi
    if z.imag == 0.0:
        z = complex(z.real, 0.0)
    root = complex(np.sqrt(np.complex128(z)))
    if k == 4:
        root = complex(np.sqrt(np.complex128(root)))
    return root


def level_energy(spec: BasisSpec, n: int) -> complex:
    """E_n = (2n+1) (W alpha)^(1/2)"""
    if n < 0:
        raise PreconditionError(f"Level index must be >= 0, got {n}")
    return (2 * n + 1) * principal_root(spec.w * spec.alpha, 2)


def x_matrix_element(spec: BasisSpec, n: int) -> complex:
    """<n|x|n+1> = (alpha / 4W)^(1/4) (n+1)^(1/2)"""
    if n < 0:
        raise PreconditionError(f"Level index must be >= 0, got {n}")
    if spec.w == 0:
        raise DomainError("W = 0 has no oscillator length scale")
    return principal_root(spec.alpha / (4 * spec.w), 4) * math.sqrt(n + 1)


def basis_indices(parity: Parity, dim: int) -> np.ndarray:
    """Full-basis level indices retained by a parity choice."""
    parity = Parity(parity)
    if parity is Parity.EVEN:
        return np.arange(0, 2 * dim, 2)
    if parity is Parity.ODD:
        return np.arange(1, 2 * dim, 2)
    return np.arange(dim)


def reference_spectrum(spec: BasisSpec) -> np.ndarray:
    """Level energies of the retained basis functions, in basis order."""
    root = principal_root(spec.w * spec.alpha, 2)
    return (2 * basis_indices(spec.parity, spec.dim) + 1) * root


def build_x_matrix(spec: BasisSpec, size: int) -> np.ndarray:
    """size x size coordinate matrix; complex symmetric, not Hermitian."""
    if size < 1:
        raise PreconditionError(f"size must be >= 1, got {size}")
    if spec.w == 0:
        raise DomainError("W = 0 has no oscillator length scale")
    scale = principal_root(spec.alpha / (4 * spec.w), 4)
    off = scale * np.sqrt(np.arange(1, size, dtype=float))
    x = np.zeros((size, size), dtype=np.complex128)
    idx = np.arange(size - 1)
    x[idx, idx + 1] = off
    x[idx + 1, idx] = off
    return x


def _symmetrize(m: np.ndarray) -> np.ndarray:
    upper = np.triu(m)
    return upper + np.triu(m, 1).T


def build_power_matrices(spec: BasisSpec, p_max: int, size: int) -> List[np.ndarray]:
    """
    Exact size x size matrices of x^1 .. x^p_max.

    The x matrix is formed at dimension size + p_max and each multiplication
    shrinks the working dimension by one, so truncation never reaches the
    retained block.
    """
    if p_max < 1:
        raise PreconditionError(f"Power must be >= 1, got {p_max}")
    if size < 1:
        raise PreconditionError(f"size must be >= 1, got {size}")

    d = size + p_max
    x = build_x_matrix(spec, d)
    current = x
    powers = [_symmetrize(x[:size, :size])]
    for p in range(2, p_max + 1):
        d -= 1
        # (x^p)[i, j] needs (x^(p-1))[i, l] for l <= j + 1 <= d
        current = current[:d, :d + 1] @ x[:d + 1, :d]
        block = _symmetrize(current[:size, :size])
        powers.append(np.triu(np.tril(block, p), -p))

    logger.debug(f"Built x^1..x^{p_max} at size {size} (W={spec.w}, alpha={spec.alpha})")
    return powers


def build_power_matrix(spec: BasisSpec, p: int, size: int) -> np.ndarray:
    """Exact size x size matrix of x^p (bandwidth p)."""
    return build_power_matrices(spec, p, size)[-1]
