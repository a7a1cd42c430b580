import numpy as np
import pytest
import scipy.linalg

from dnaqpu.errors import NotHermitianError, ValidationError
from dnaqpu.qmath import (
    concurrence,
    dm,
    eigh,
    fidelity_up_to_phase,
    is_unitary,
    kron,
    partial_trace,
    propagator,
    purity,
)
from dnaqpu.spinops import PAULI

from conftest import random_hermitian, random_ket, random_unitary

X, Y, Z, I2 = PAULI["X"], PAULI["Y"], PAULI["Z"], PAULI["I"]


# kron

def test_kron_identity():
    assert np.array_equal(kron(I2, I2), np.eye(4))


def test_kron_xx_flips_00():
    assert np.allclose(kron(X, X) @ np.array([1, 0, 0, 0]), [0, 0, 0, 1])


def test_kron_zz_diagonal():
    assert np.allclose(kron(Z, Z), np.diag([1, -1, -1, 1]))


# propagator

def test_propagator_zero_hamiltonian():
    assert np.allclose(propagator(np.zeros((3, 3)), 1.7), np.eye(3), atol=1e-15)


def test_propagator_pauli_z_at_pi():
    u = propagator(Z, np.pi)
    assert np.allclose(u, np.diag([np.exp(-1j * np.pi), np.exp(1j * np.pi)]), atol=1e-14)


def test_propagator_matches_eigendecomposition_oracle(rng):
    h = random_hermitian(rng, 4)
    w, v = np.linalg.eigh(h)
    oracle = v @ np.diag(np.exp(-1j * w * 0.83)) @ v.conj().T
    assert np.max(np.abs(propagator(h, 0.83) - oracle)) < 1e-12


def test_propagator_matches_scipy_expm(rng):
    for n in (2, 3, 8, 16):
        h = random_hermitian(rng, n)
        assert np.max(np.abs(propagator(h, 0.4) - scipy.linalg.expm(-0.4j * h))) < 1e-11


def test_propagator_group_property(rng):
    h = random_hermitian(rng, 4)
    u = propagator(h, 0.3) @ propagator(h, 1.1)
    assert np.max(np.abs(u - propagator(h, 1.4))) < 1e-10
    assert is_unitary(u)


def test_propagator_rejects_non_hermitian():
    with pytest.raises(NotHermitianError):
        propagator(np.array([[0, 1], [0, 0]]), 1.0)


# eigh

def test_eigh_diagonal():
    w, _ = eigh(np.diag([3.0, 1.0, 2.0]))
    assert np.allclose(w, [1, 2, 3])


def test_eigh_pauli_x():
    w, v = eigh(X)
    assert np.allclose(w, [-1, 1])
    assert np.allclose(X @ v, v * w)


def test_eigh_reconstruction(rng):
    for n in range(2, 17):
        h = random_hermitian(rng, n)
        w, v = eigh(h)
        assert np.all(np.diff(w) >= 0)
        assert np.max(np.abs(v @ np.diag(w) @ v.conj().T - h)) < 1e-10
        assert is_unitary(v)


def test_eigh_degenerate_is_deterministic():
    h = np.diag([1.0, 1.0, 0.0, 1.0]).astype(complex)
    w1, v1 = eigh(h)
    w2, v2 = eigh(h.copy())
    assert np.array_equal(v1, v2)
    assert np.allclose(v1.conj().T @ v1, np.eye(4))


def test_eigh_rejects_non_hermitian():
    with pytest.raises(NotHermitianError):
        eigh(np.array([[1, 2], [0, 1]]))


def test_eigh_rejects_large():
    with pytest.raises(ValidationError):
        eigh(np.eye(32))


# concurrence

def test_concurrence_product():
    assert concurrence(np.array([1, 0, 0, 0])) == pytest.approx(0, abs=1e-15)


def test_concurrence_bell():
    bell = np.array([1, 0, 0, 1]) / np.sqrt(2)
    assert concurrence(bell) == pytest.approx(1, abs=1e-12)
    assert concurrence(dm(bell)) == pytest.approx(1, abs=1e-9)


def test_concurrence_general_triplet():
    s = 1 / np.sqrt(3)
    psi = np.array([s, s / np.sqrt(2), s / np.sqrt(2), s])
    assert concurrence(psi) == pytest.approx(1 / 3, abs=1e-12)


def test_concurrence_local_unitary_invariance(rng):
    for _ in range(50):
        psi = random_ket(rng, 4)
        u = kron(random_unitary(rng, 2), random_unitary(rng, 2))
        assert abs(concurrence(u @ psi) - concurrence(psi)) < 1e-9
        rho = dm(psi)
        assert abs(concurrence(u @ rho @ u.conj().T) - concurrence(psi)) < 1e-7


def test_concurrence_maximally_mixed_is_zero():
    assert concurrence(np.eye(4) / 4) == pytest.approx(0, abs=1e-12)


def test_concurrence_wrong_dim():
    with pytest.raises(ValidationError):
        concurrence(np.array([1, 0, 0]))


# fidelity

def test_fidelity_cases(rng):
    psi = random_ket(rng, 4)
    assert fidelity_up_to_phase(psi, psi) == pytest.approx(1, abs=1e-14)
    assert fidelity_up_to_phase([1, 0], [0, 1]) == 0
    assert fidelity_up_to_phase(psi, np.exp(0.77j) * psi) == pytest.approx(1, abs=1e-14)


def test_fidelity_dim_mismatch():
    with pytest.raises(ValidationError):
        fidelity_up_to_phase([1, 0], [1, 0, 0, 0])


# partial trace

def test_partial_trace_product(rng):
    ra, rb = dm(random_ket(rng, 2)), dm(random_ket(rng, 2))
    rho = np.kron(ra, rb)
    assert np.allclose(partial_trace(rho, keep=0), ra, atol=1e-14)
    assert np.allclose(partial_trace(rho, keep=1), rb, atol=1e-14)


def test_partial_trace_bell():
    bell = dm(np.array([1, 0, 0, 1]) / np.sqrt(2))
    for k in (0, 1):
        r = partial_trace(bell, keep=k)
        assert np.allclose(r, np.eye(2) / 2)
        assert np.trace(r) == pytest.approx(1)


def test_partial_trace_unequal_dims(rng):
    ra, rb = dm(random_ket(rng, 3)), dm(random_ket(rng, 2))
    assert np.allclose(partial_trace(np.kron(ra, rb), dims=(3, 2), keep=0), ra)


def test_partial_trace_non_factorable():
    with pytest.raises(ValidationError):
        partial_trace(np.eye(3) / 3)


def test_purity():
    assert purity(np.eye(4) / 4) == pytest.approx(0.25)
