import numpy as np
import pytest

from qx.su_algebra import (
    adjoint_generator,
    adjoint_group_element,
    gell_mann_basis,
    invariant_residuals,
    random_special_unitary,
    structure_constants,
)

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.diag([1.0, -1.0]).astype(complex)


def test_d2_is_half_pauli_basis():
    basis = gell_mann_basis(2)
    assert basis.size == 3
    for got, want in zip(basis.generators, [SX, SY, SZ]):
        assert np.abs(got - want / 2).max() == 0.0


def test_d2_orthonormality_entries():
    basis = gell_mann_basis(2)
    t = basis.generators
    assert abs(np.trace(t[0] @ t[1])) < 1e-15
    assert abs(np.trace(t[0] @ t[0]) - 0.5) < 1e-15


def test_d3_standard_values():
    basis = gell_mann_basis(3)
    assert basis.size == 8
    assert abs(basis.f[0, 1, 2] - 1.0) < 1e-14
    assert abs(basis.d_sym[0, 0, 7] - 1 / np.sqrt(3)) < 1e-14
    last = basis.generators[7] * 2 * np.sqrt(3)
    assert np.abs(last - np.diag([1.0, 1.0, -2.0])).max() < 1e-14


def test_invalid_dimension():
    with pytest.raises(ValueError):
        gell_mann_basis(1)


def test_d2_structure_constants():
    basis = gell_mann_basis(2)
    eps = np.zeros((3, 3, 3))
    for i, j, k in [(0, 1, 2), (1, 2, 0), (2, 0, 1)]:
        eps[i, j, k] = 1.0
        eps[j, i, k] = -1.0
    assert np.abs(basis.f - eps).max() < 1e-14
    assert np.abs(basis.d_sym).max() < 1e-14


@pytest.mark.parametrize("d", [2, 3, 4])
def test_f_vanishes_on_repeated_indices(d):
    basis = gell_mann_basis(d)
    idx = np.arange(basis.size)
    assert np.abs(basis.f[idx, idx, :]).max() < 1e-14


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_invariant_battery(d):
    residuals = invariant_residuals(gell_mann_basis(d))
    assert max(residuals.values()) < 1e-12


def test_structure_constants_recompute():
    basis = gell_mann_basis(3)
    f, d_sym = structure_constants(basis.generators)
    assert np.abs(f - basis.f).max() == 0.0
    assert np.abs(d_sym - basis.d_sym).max() == 0.0
    f2, _ = structure_constants(basis)
    assert np.abs(f2 - basis.f).max() == 0.0


def test_adjoint_generator_d2():
    basis = gell_mann_basis(2)
    t3 = adjoint_generator(basis, 2)
    assert t3.shape == (3, 3)
    assert abs(t3[0, 1] + 1j) < 1e-14 and abs(t3[1, 0] - 1j) < 1e-14
    assert np.abs(t3 + t3.T).max() < 1e-14
    assert abs(np.trace(t3)) < 1e-14
    eigs = np.sort(np.linalg.eigvalsh(t3))
    assert np.abs(eigs - np.array([-1.0, 0.0, 1.0])).max() < 1e-12


def test_adjoint_generator_index_error():
    basis = gell_mann_basis(2)
    with pytest.raises(ValueError):
        adjoint_generator(basis, 3)


def test_adjoint_group_identity():
    basis = gell_mann_basis(3)
    r = adjoint_group_element(basis, np.eye(3))
    assert np.abs(r - np.eye(8)).max() < 1e-12


def test_adjoint_group_z_rotation():
    basis = gell_mann_basis(2)
    theta = 0.7
    u = np.diag([np.exp(-1j * theta / 2), np.exp(1j * theta / 2)])
    r = adjoint_group_element(basis, u)
    want = np.array(
        [
            [np.cos(theta), -np.sin(theta), 0.0],
            [np.sin(theta), np.cos(theta), 0.0],
            [0.0, 0.0, 1.0],
        ]
    )
    assert np.abs(r - want).max() < 1e-12


@pytest.mark.parametrize("d", [2, 3])
def test_adjoint_group_is_special_orthogonal(d):
    basis = gell_mann_basis(d)
    rng = np.random.default_rng(11)
    for _ in range(5):
        r = adjoint_group_element(basis, random_special_unitary(basis, rng))
        assert np.abs(r.T @ r - np.eye(basis.size)).max() < 1e-10
        assert abs(np.linalg.det(r) - 1.0) < 1e-10


@pytest.mark.parametrize("d", [2, 3])
def test_adjoint_group_homomorphism(d):
    basis = gell_mann_basis(d)
    rng = np.random.default_rng(7)
    for _ in range(6):
        g1 = random_special_unitary(basis, rng)
        g2 = random_special_unitary(basis, rng)
        lhs = adjoint_group_element(basis, g1 @ g2)
        rhs = adjoint_group_element(basis, g1) @ adjoint_group_element(basis, g2)
        assert np.abs(lhs - rhs).max() < 1e-10


def test_adjoint_group_rejects_nonunitary():
    basis = gell_mann_basis(2)
    with pytest.raises(ValueError):
        adjoint_group_element(basis, np.array([[1.0, 0.1], [0.0, 1.0]]))


def test_random_special_unitary_properties():
    basis = gell_mann_basis(4)
    rng = np.random.default_rng(3)
    g = random_special_unitary(basis, rng)
    assert np.abs(g.conj().T @ g - np.eye(4)).max() < 1e-12
    assert abs(np.linalg.det(g) - 1.0) < 1e-12
