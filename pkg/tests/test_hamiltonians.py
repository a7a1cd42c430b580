import numpy as np
import pytest

from dnaqpu import spinops as so
from dnaqpu.errors import ValidationError
from dnaqpu.hamiltonians import (
    PairGeometry,
    SpinSystemParams,
    ZfsParams,
    dipolar_constant,
    dipolar_pair_h,
    j_h,
    secular_dipolar_d,
    secular_dipolar_h,
    secular_h,
    secular_h_expanded,
    secular_parts,
    triplet_block,
    triplet_projection,
    zeeman_h,
    zfs_h,
)
from dnaqpu.qmath import commutator, eigh, fidelity_up_to_phase, is_hermitian
from dnaqpu.states import singlet, singlet_triplet_frame, zfs_frame_spin1, zfs_triplets

UU = np.array([1, 0, 0, 0], dtype=complex)


def test_params_invariants(rng):
    for _ in range(20):
        p = SpinSystemParams(*rng.normal(size=3))
        assert p.omega_a + p.omega_b == pytest.approx(2 * np.pi * p.j_hz, abs=1e-12)
        assert p.omega_a - p.omega_b == pytest.approx(2 * p.d, abs=1e-12)


def test_dipolar_constant_proton_pair():
    b = dipolar_constant(PairGeometry(2.86))
    assert b == pytest.approx(3.23e4, rel=0.01)
    assert b / (2 * np.pi) == pytest.approx(5.1e3, rel=0.02)


def test_dipolar_traceless_and_hermitian(rng):
    for th in rng.uniform(0, np.pi, 10):
        h = dipolar_pair_h(PairGeometry(2.86, th))
        assert abs(np.trace(h)) < 1e-9
        assert is_hermitian(h)


def test_dipolar_axial_commutes_with_sz():
    h = dipolar_pair_h(PairGeometry(2.86, 0.0))
    b = dipolar_constant(PairGeometry(2.86))
    assert np.max(np.abs(commutator(h, so.total("z")))) < 1e-12 * b
    assert np.max(np.abs(h + b * (3 * so.spin1("z") @ so.spin2("z") - so.dot12()))) < 1e-12 * b


def test_dipolar_bad_distance():
    with pytest.raises(ValidationError):
        PairGeometry(0.0)
    with pytest.raises(ValidationError):
        PairGeometry(-1.0)


def test_secular_dipolar_d():
    g = PairGeometry(2.86, 0.0)
    b = dipolar_constant(g)
    assert secular_dipolar_d(g) == pytest.approx(-b)
    assert secular_dipolar_d(PairGeometry(2.86, np.arccos(1 / np.sqrt(3)))) == pytest.approx(0, abs=1e-9)
    d90 = secular_dipolar_d(PairGeometry(2.86, np.pi / 2))
    assert d90 == pytest.approx(b / 2)
    assert d90 == pytest.approx(1.61e4, rel=0.01)


def test_secular_dipolar_is_secular_part(rng):
    # the secular part keeps the Sz-conserving terms of the full coupling
    for th in rng.uniform(0, np.pi, 5):
        g = PairGeometry(2.86, th)
        h = dipolar_pair_h(g)
        sec = secular_dipolar_h(secular_dipolar_d(g))
        mask = np.zeros((4, 4), bool)
        m = np.array([1, 0, 0, -1])
        mask[np.equal.outer(m, m)] = True
        assert np.max(np.abs(np.where(mask, h, 0) - sec)) < 1e-9


def test_zfs_zero():
    assert np.allclose(zfs_h(ZfsParams(0, 0)), 0)


def test_zfs_eigenvalues_and_vectors():
    D, E = 1.3, 0.2
    w, v = eigh(zfs_h(ZfsParams(D, E)))
    assert np.allclose(w, sorted([-2 * D / 3, D / 3 - E, D / 3 + E]), atol=1e-12)
    c = zfs_frame_spin1()
    # ascending order for D > 0, E > 0 is T_z, T_x, T_y
    for k, col in zip(range(3), (2, 0, 1)):
        assert fidelity_up_to_phase(v[:, k], c[:, col]) == pytest.approx(1, abs=1e-12)
    assert w[2] - w[1] == pytest.approx(2 * E)


def test_j_coupling():
    h = j_h(1.0)
    assert np.allclose(h @ singlet().vector, -1.5 * np.pi * singlet().vector)
    for t in zfs_triplets():
        assert np.allclose(h @ t.vector, 0.5 * np.pi * t.vector)
    assert np.allclose(j_h(0), 0)


def test_zeeman():
    h = zeeman_h(2.0)
    assert np.allclose(np.diag(h), [2, 0, 0, -2])
    assert np.allclose(h @ singlet().vector, 0)
    assert np.allclose(h @ zfs_triplets()[2].vector, 0)
    assert np.allclose(zeeman_h(0), 0)


def test_secular_parts():
    p = SpinSystemParams(1.1, 0.4, 0.3)
    h_a, h_b = secular_parts(p)
    assert np.allclose(h_a, np.diag(np.diag(h_a)))
    assert np.allclose(h_b @ UU, 0)
    tz = zfs_triplets()[2].vector
    s = singlet().vector
    assert np.allclose(h_b @ tz, p.omega_b / 2 * tz)
    assert np.allclose(h_b @ s, -p.omega_b / 2 * s)
    assert h_b[1, 2] == pytest.approx(p.omega_b / 2)
    assert np.allclose(secular_h(p), h_a + h_b)


def test_secular_commutes_and_blocks(rng):
    w = singlet_triplet_frame()
    for _ in range(50):
        h = secular_h(SpinSystemParams(*rng.normal(size=3)))
        assert np.max(np.abs(commutator(h, so.total("z")))) < 1e-12
        r = w.conj().T @ h @ w
        assert np.max(np.abs(r[:3, 3])) < 1e-12


def test_triplet_block_values():
    p = SpinSystemParams(1.0, 1 / np.pi, 0.5)
    assert np.allclose(triplet_block(p), np.diag([1.75, 0, -0.25]), atol=1e-15)
    assert np.allclose(triplet_block(SpinSystemParams()), 0)
    q = SpinSystemParams(0.0, 0.7, 0.4)
    diag = np.real(np.diag(triplet_block(q)))
    assert diag[0] == pytest.approx(diag[2])
    assert diag[0] - diag[1] == pytest.approx(1.5 * q.d)


def test_expanded_form_projects_onto_block(rng):
    for _ in range(20):
        p = SpinSystemParams(*rng.normal(size=3))
        assert np.max(np.abs(triplet_projection(secular_h_expanded(p)) - triplet_block(p))) < 1e-12


def test_partitioned_form_differs_from_block_on_t0():
    p = SpinSystemParams(0.5, 0.3, 0.2)
    diff = triplet_projection(secular_h(p)) - triplet_block(p)
    assert np.allclose(np.diag(diff), [0, -p.pi_j / 2, 0], atol=1e-14)


def test_partitioned_equals_expanded_when_j_zero(rng):
    p = SpinSystemParams(rng.normal(), 0.0, rng.normal())
    assert np.allclose(secular_h(p), secular_h_expanded(p), atol=1e-14)
