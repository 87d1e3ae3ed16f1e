import sys
import os
sys.path.append(os.getcwd())

import cmath
import math

import numpy as np
import pytest

from basis.oscillator import (
    BasisSpec,
    Parity,
    basis_indices,
    build_power_matrices,
    build_power_matrix,
    build_x_matrix,
    level_energy,
    principal_root,
    reference_spectrum,
    x_matrix_element,
)
from core.errors import DomainError, PreconditionError


@pytest.mark.parametrize("z, k, expected", [
    (4, 2, 2),
    (1, 4, 1),
    (16, 4, 2),
    (-1, 2, 1j),
    (complex(1, 15), 2, complex(2.8313686, 2.6488957)),
])
def test_principal_root_examples(z, k, expected):
    assert principal_root(z, k) == pytest.approx(expected, abs=1e-6)


def test_principal_root_of_zero():
    assert principal_root(0, 2) == 0
    assert principal_root(0j, 4) == 0


def test_principal_root_rejects_bad_input():
    with pytest.raises(DomainError):
        principal_root(complex(float("nan"), 0), 2)
    with pytest.raises(PreconditionError):
        principal_root(2.0, 3)


def test_principal_root_negative_zero_imaginary_part_stays_on_branch():
    # -1 - 0j must land at +i, not -i
    assert principal_root(complex(-1.0, -0.0), 2) == pytest.approx(1j)


@pytest.mark.parametrize("k", [2, 4])
def test_principal_root_round_trip_and_branch(k):
    rng = np.random.default_rng(20240601)
    moduli = 10 ** rng.uniform(-6, 6, size=10_000)
    angles = rng.uniform(-math.pi, math.pi, size=10_000)
    for r, theta in zip(moduli, angles):
        z = cmath.rect(r, theta)
        root = principal_root(z, k)
        assert abs(root ** k - z) <= 1e-14 * abs(z)
        arg = cmath.phase(root)
        assert -math.pi / k < arg <= math.pi / k + 1e-15


def test_basis_spec_validation():
    with pytest.raises(PreconditionError):
        BasisSpec(alpha=0.0, w=1.0)
    with pytest.raises(PreconditionError):
        BasisSpec(alpha=1.0, w=1.0, dim=0)
    with pytest.raises(DomainError):
        BasisSpec(alpha=float("nan"), w=1.0)
    spec = BasisSpec(alpha=1.0, w=2, parity="even", dim=3)
    assert spec.w == complex(2, 0)
    assert spec.parity is Parity.EVEN


def test_level_energy():
    assert level_energy(BasisSpec(1.0, 1.0), 0) == pytest.approx(1.0)
    assert level_energy(BasisSpec(1.0, 4.0), 2) == pytest.approx(10.0)
    assert level_energy(BasisSpec(1.0, complex(1, 15)), 0) == pytest.approx(
        complex(2.8313686, 2.6488957), abs=1e-6
    )
    with pytest.raises(PreconditionError):
        level_energy(BasisSpec(1.0, 1.0), -1)


def test_x_matrix_element():
    assert x_matrix_element(BasisSpec(1.0, 0.25), 0) == pytest.approx(1.0)
    assert x_matrix_element(BasisSpec(1.0, 1.0), 0) == pytest.approx(math.sqrt(0.5))
    assert x_matrix_element(BasisSpec(1.0, 1.0), 3) == pytest.approx(math.sqrt(2.0))
    with pytest.raises(DomainError):
        x_matrix_element(BasisSpec(1.0, 0.0), 0)


def test_basis_indices_and_reference_spectrum():
    assert basis_indices(Parity.EVEN, 3).tolist() == [0, 2, 4]
    assert basis_indices(Parity.ODD, 3).tolist() == [1, 3, 5]
    assert basis_indices(Parity.FULL, 3).tolist() == [0, 1, 2]
    spectrum = reference_spectrum(BasisSpec(1.0, 1.0, Parity.ODD, 3))
    assert spectrum == pytest.approx([3.0, 7.0, 11.0])


def test_x_matrix_shapes_and_symmetry():
    spec = BasisSpec(1.0, complex(1, 15))
    assert build_x_matrix(spec, 1).tolist() == [[0j]]
    x = build_x_matrix(spec, 5)
    assert np.array_equal(x, x.T)
    assert not np.allclose(x, x.conj().T)
    scale = principal_root(1.0 / (4 * complex(1, 15)), 4)
    assert x[1, 2] == pytest.approx(scale * math.sqrt(2))


def test_real_w_gives_real_matrices():
    powers = build_power_matrices(BasisSpec(1.0, 0.25), 4, 6)
    assert all(np.all(p.imag == 0) for p in powers)


def test_first_power_is_the_x_matrix():
    spec = BasisSpec(1.0, complex(1, 15))
    assert np.array_equal(build_power_matrix(spec, 1, 7), build_x_matrix(spec, 7))


def test_x_squared_diagonal():
    x2 = build_power_matrix(BasisSpec(1.0, 1.0), 2, 6)
    assert np.diag(x2).real == pytest.approx([(2 * n + 1) / 2 for n in range(6)])


@pytest.mark.parametrize("w", [1.0, complex(1, 15), complex(0.5, 0.5)])
@pytest.mark.parametrize("size", [1, 2, 5, 9])
def test_power_matrices_match_truncated_dense_products(w, size):
    spec = BasisSpec(1.0, w)
    p_max = 6
    powers = build_power_matrices(spec, p_max, size)
    big = build_x_matrix(spec, size + p_max)
    dense = np.eye(size + p_max, dtype=np.complex128)
    for p in range(1, p_max + 1):
        dense = dense @ big
        expected = dense[:size, :size]
        scale = max(1.0, float(np.max(np.abs(expected))))
        assert np.allclose(powers[p - 1], expected, rtol=1e-13, atol=1e-13 * scale)
        assert np.array_equal(powers[p - 1], powers[p - 1].T)


def test_power_matrix_bandwidth():
    x5 = build_power_matrix(BasisSpec(1.0, 1.0), 5, 12)
    rows, cols = np.nonzero(x5)
    assert np.max(np.abs(rows - cols)) == 5
    # odd powers only couple levels of opposite parity
    assert np.all((rows - cols) % 2 == 1)


def test_power_matrix_preconditions():
    spec = BasisSpec(1.0, 1.0)
    with pytest.raises(PreconditionError):
        build_power_matrices(spec, 0, 4)
    with pytest.raises(PreconditionError):
        build_x_matrix(spec, 0)
