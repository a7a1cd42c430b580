import numpy as np
import pytest

from dnaqpu import spinops as so
from dnaqpu.errors import AntisymmetryError, ValidationError
from dnaqpu.kinetics import calibrate_gap
from dnaqpu.qmath import concurrence, purity
from dnaqpu.states import (
    Label,
    SpatialModel,
    SpinPairState,
    assemble_cqs,
    fission_singlet,
    general_triplet,
    singlet,
    spatial_two_proton,
    spin1_ops_cartesian,
    thermal_wcqs,
    triplet_pair,
    wcqs,
    zeeman_triplets,
    zfs_triplets,
)

R2 = np.sqrt(2)
S2 = so.total_squared()


def test_zeeman_components():
    tp, t0, tm = zeeman_triplets()
    assert t0.vector[1] == pytest.approx(1 / R2)
    assert np.array_equal(tp.vector, [1, 0, 0, 0])
    assert np.array_equal(tm.vector, [0, 0, 0, 1])
    assert t0.label is Label.T_ZERO


def test_zeeman_orthonormal():
    m = np.column_stack([s.vector for s in zeeman_triplets()])
    assert np.allclose(m.conj().T @ m, np.eye(3), atol=1e-15)


def test_zeeman_total_spin():
    for s in zeeman_triplets():
        assert np.allclose(S2 @ s.vector, 2 * s.vector, atol=1e-14)


def test_singlet():
    s = singlet().vector
    assert np.allclose(S2 @ s, 0, atol=1e-14)
    assert np.allclose(so.SWAP @ s, -s)
    assert concurrence(s) == pytest.approx(1, abs=1e-12)


def test_zfs_components():
    tx, ty, tz = (s.vector for s in zfs_triplets())
    assert tx[3] == pytest.approx(1 / R2)
    assert tx[0] == pytest.approx(-1 / R2)
    assert np.allclose(tz, [0, 1 / R2, 1 / R2, 0])
    uu = np.array([1, 0, 0, 0])
    assert np.allclose((-tx - 1j * ty) / R2, uu, atol=1e-15)


def test_zfs_no_moment_along_own_axis():
    for axis, s in zip("xyz", zfs_triplets()):
        assert np.max(np.abs(so.total(axis) @ s.vector)) < 1e-12


def test_st_basis_orthonormal():
    m = np.column_stack([s.vector for s in (*zfs_triplets(), singlet())])
    assert np.allclose(m.conj().T @ m, np.eye(4), atol=1e-15)


def test_general_triplet():
    c, t = general_triplet("canonical"), general_triplet("tautomeric")
    assert np.linalg.norm(c.vector) == pytest.approx(1, abs=1e-15)
    assert concurrence(c.vector) == pytest.approx(1 / 3, abs=1e-12)
    xx = np.kron(so.PAULI["X"], so.PAULI["X"])
    assert np.allclose(xx @ c.vector, c.vector)
    assert np.allclose(c.vector, t.vector)
    assert c.tag != t.tag
    with pytest.raises(ValidationError):
        general_triplet("other")


def test_spin_pair_state_validation():
    with pytest.raises(ValidationError):
        SpinPairState(np.array([1, 1, 0, 0]))
    s = singlet()
    with pytest.raises(ValueError):
        s.vector[0] = 1


def test_wcqs():
    c, t = general_triplet("canonical"), general_triplet("tautomeric")
    pure = wcqs(1, 0, c, t)
    assert pure.tautomer_probability == 0
    half = wcqs(1 / R2, 1 / R2, c, t)
    assert np.linalg.norm(half.vector) == pytest.approx(1, abs=1e-15)
    assert purity(half.density()) == pytest.approx(1, abs=1e-12)
    with pytest.raises(ValidationError):
        wcqs(1, 0.1, c, t)


def test_thermal_wcqs_300k():
    st = thermal_wcqs(300.0, calibrate_gap(1.73e-4, 300.0))
    assert st.tautomer_probability == pytest.approx(1.73e-4, rel=1e-12)
    assert abs(st.a) ** 2 + abs(st.b) ** 2 == pytest.approx(1, abs=1e-12)
    assert st.a.imag == 0 and st.b.imag == 0


def test_fission_singlet():
    s = fission_singlet().vector
    assert np.linalg.norm(s) == pytest.approx(1, abs=1e-15)
    assert np.vdot(triplet_pair("x", "x").vector, s) == pytest.approx(1 / np.sqrt(3))
    ops = spin1_ops_cartesian()
    i3 = np.eye(3)
    tot = [np.kron(ops[a], i3) + np.kron(i3, ops[a]) for a in "xyz"]
    s2 = sum(t @ t for t in tot)
    assert np.max(np.abs(s2 @ s)) < 1e-12


def test_spatial_fermi_hole():
    g = spatial_two_proton(SpatialModel(parity=-1))
    assert np.max(np.abs(np.diag(g.density))) <= 1e-14
    assert np.max(np.abs(g.psi + g.psi.T)) <= 1e-14
    assert g.norm() == pytest.approx(1, abs=1e-6)


def test_spatial_symmetric_heap():
    m = SpatialModel(parity=+1)
    g = spatial_two_proton(m)
    assert np.max(np.abs(g.psi - g.psi.T)) <= 1e-14
    k = int(np.argmin(np.abs(g.x - m.separation / 2)))
    i0 = int(np.argmin(np.abs(g.x - 0.0)))
    ic = int(np.argmin(np.abs(g.x - m.separation)))
    # psi_i psi_j vanishes where phi_G = phi_C, so the heap shows at the sites
    assert g.density[i0, i0] > 0 and g.density[ic, ic] > 0
    assert g.density[k, k] == pytest.approx(0, abs=1e-12)


def test_spatial_invalid():
    with pytest.raises(ValidationError):
        SpatialModel(width=0)
    with pytest.raises(ValidationError):
        SpatialModel(x_max=2.0)
    with pytest.raises(ValidationError):
        spatial_two_proton(SpatialModel(separation=0.0, x_min=-1, x_max=1))


def test_spatial_csv(tmp_path):
    g = spatial_two_proton(SpatialModel(points=5))
    p = tmp_path / "grid.csv"
    g.to_csv(p)
    lines = p.read_text().splitlines()
    assert lines[0] == "x1,x2,re,im,abs2"
    assert len(lines) == 26


def test_assemble_cqs():
    tz = zfs_triplets()[2]
    assert assemble_cqs(-1, tz).kind == "ground"
    assert assemble_cqs(+1, singlet()).kind == "excited"
    with pytest.raises(AntisymmetryError):
        assemble_cqs(+1, tz)
    with pytest.raises(AntisymmetryError):
        assemble_cqs(-1, singlet())
