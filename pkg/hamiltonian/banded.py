"""
Compact upper-band storage for complex symmetric matrices.

Row J (1-based) of the band holds H(J,K) for K = J..J+b contiguously, so
H(J,K) lives at the 1-based linear position b*J + K - b. For b = 3 this is
the HC(3J+K-3) layout. Entries below the diagonal are served through
symmetry; no conjugation is involved anywhere.
"""
from dataclasses import dataclass

import numpy as np

from config.settings import settings
from core.errors import DimensionMismatchError, PreconditionError


def band_index(j: int, k: int, b: int) -> int:
    """1-based linear slot of H(J,K) for J <= K <= J+b."""
    if not j <= k <= j + b:
        raise PreconditionError(f"H({j},{k}) is outside the stored band of halfwidth {b}")
    return b * j + k - b


@dataclass(frozen=True)
class BandedComplexSymmetric:
    dim: int
    halfwidth: int
    data: np.ndarray

    def __post_init__(self):
        data = np.array(self.data, dtype=np.complex128).ravel()
        if data.size != self.dim * (self.halfwidth + 1):
            raise PreconditionError(
                f"Band data has {data.size} slots, expected {self.dim * (self.halfwidth + 1)}"
            )
        data.flags.writeable = False
        object.__setattr__(self, "data", data)

    @property
    def rows(self) -> np.ndarray:
        """(dim, b+1) view: rows[j, t] = H(j, j+t), 0-based."""
        return self.data.reshape(self.dim, self.halfwidth + 1)

    @classmethod
    def from_dense(cls, dense: np.ndarray, halfwidth: int) -> "BandedComplexSymmetric":
        """Pack the upper band of a symmetric matrix; anything outside the band must be zero."""
        dense = np.asarray(dense, dtype=np.complex128)
        n = dense.shape[0]
        if dense.shape != (n, n):
            raise PreconditionError(f"Expected a square matrix, got shape {dense.shape}")
        outside = np.triu(dense, halfwidth + 1)
        if np.any(outside != 0) or np.any(np.tril(dense, -halfwidth - 1) != 0):
            raise PreconditionError(f"Matrix has entries beyond halfwidth {halfwidth}")
        rows = np.zeros((n, halfwidth + 1), dtype=np.complex128)
        for t in range(min(halfwidth, n - 1) + 1):
            rows[:n - t, t] = np.diagonal(dense, t)
        return cls(n, halfwidth, rows.ravel())

    def get(self, j: int, k: int) -> complex:
        """H(J,K), 1-based; zero outside the band."""
        if not (1 <= j <= self.dim and 1 <= k <= self.dim):
            raise PreconditionError(f"H({j},{k}) is outside a {self.dim}x{self.dim} matrix")
        if j > k:
            j, k = k, j
        if k - j > self.halfwidth:
            return 0j
        return complex(self.data[band_index(j, k, self.halfwidth) - 1])

    def matvec(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=np.complex128)
        if x.shape != (self.dim,):
            raise DimensionMismatchError(f"Column of length {x.shape} for dimension {self.dim}")
        rows = self.rows
        y = rows[:, 0] * x
        for t in range(1, min(self.halfwidth, self.dim - 1) + 1):
            band = rows[:-t, t]
            y[:-t] += band * x[t:]
            y[t:] += band * x[:-t]
        return y

    def row_dot(self, i: int, x: np.ndarray) -> complex:
        """(H x)[i] for a 0-based row i."""
        rows = self.rows
        upper = min(self.halfwidth, self.dim - 1 - i)
        value = rows[i, :upper + 1] @ x[i:i + upper + 1]
        lower = np.arange(1, min(self.halfwidth, i) + 1)
        if lower.size:
            value += rows[i - lower, lower] @ x[i - lower]
        return complex(value)

    def norm_inf(self) -> float:
        """Maximum absolute row sum."""
        mags = np.abs(self.rows)
        sums = mags[:, 0].copy()
        for t in range(1, min(self.halfwidth, self.dim - 1) + 1):
            sums[:-t] += mags[:-t, t]
            sums[t:] += mags[:-t, t]
        return float(sums.max())

    def shifted_copy(self, c: complex) -> "BandedComplexSymmetric":
        """H + c I"""
        rows = self.rows.copy()
        rows[:, 0] += c
        return BandedComplexSymmetric(self.dim, self.halfwidth, rows.ravel())


def to_dense(m: BandedComplexSymmetric) -> np.ndarray:
    """Full symmetric expansion, guarded against accidental huge matrices."""
    if m.dim > settings.MAX_DENSE_DIM:
        raise PreconditionError(
            f"Refusing to densify dimension {m.dim} (limit {settings.MAX_DENSE_DIM})"
        )
    dense = np.zeros((m.dim, m.dim), dtype=np.complex128)
    rows = m.rows
    for t in range(min(m.halfwidth, m.dim - 1) + 1):
        idx = np.arange(m.dim - t)
        dense[idx, idx + t] = rows[:m.dim - t, t]
        dense[idx + t, idx] = rows[:m.dim - t, t]
    return dense
