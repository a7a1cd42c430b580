"""Spin Hamiltonians of the two-proton pair, in angular-frequency units (hbar = 1)."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import spinops as so
from .constants import ANGSTROM, GAMMA_PROTON, HBAR, MU0_OVER_4PI
from .errors import ValidationError
from .states import triplet_frame


@dataclass(frozen=True)
class SpinSystemParams:
    """Larmor frequency and couplings.

    omega0 and d are in rad/s; j_hz is the scalar coupling in Hz, so the
    J term enters as 2*pi*J.
    """

    omega0: float = 0.0
    j_hz: float = 0.0
    d: float = 0.0

    @property
    def pi_j(self) -> float:
        return np.pi * self.j_hz

    @property
    def omega_a(self) -> float:
        return self.pi_j + self.d

    @property
    def omega_b(self) -> float:
        return self.pi_j - self.d


@dataclass(frozen=True)
class ZfsParams:
    D: float = 0.0
    E: float = 0.0


@dataclass(frozen=True)
class PairGeometry:
    r: float                        # angstrom
    theta: float = 0.0              # angle between r-hat and z (rad)
    gamma: float = GAMMA_PROTON     # rad s^-1 T^-1

    def __post_init__(self):
        if not self.r > 0:
            raise ValidationError(f"inter-proton distance must be positive, got {self.r}")

    @property
    def unit_vector(self) -> np.ndarray:
        return np.array([np.sin(self.theta), 0.0, np.cos(self.theta)])


def dipolar_constant(geom: PairGeometry) -> float:
    """b = (mu0/4pi) gamma^2 hbar / r^3 in rad/s."""
    r = geom.r * ANGSTROM
    return MU0_OVER_4PI * geom.gamma ** 2 * HBAR / r ** 3


def dipolar_pair_h(geom: PairGeometry) -> np.ndarray:
    """Full point-dipole coupling b [S1.S2 - 3 (S1.n)(S2.n)]."""
    b = dipolar_constant(geom)
    n = geom.unit_vector
    s1n = sum(c * so.spin1(a) for c, a in zip(n, "xyz"))
    s2n = sum(c * so.spin2(a) for c, a in zip(n, "xyz"))
    return b * (so.dot12() - 3 * s1n @ s2n)


def secular_dipolar_d(geom: PairGeometry) -> float:
    """Constant d such that d (3 S1z S2z - S1.S2) is the secular dipolar part."""
    b = dipolar_constant(geom)
    return -0.5 * b * (3 * np.cos(geom.theta) ** 2 - 1)


def secular_dipolar_h(d: float) -> np.ndarray:
    return d * (3 * so.spin1("z") @ so.spin2("z") - so.dot12())


def zfs_h(z: ZfsParams) -> np.ndarray:
    """D (Sz^2 - S^2/3) + E (Sx^2 - Sy^2) on the spin-1 space (m = +1, 0, -1)."""
    sx, sy, sz = so.S1_X, so.S1_Y, so.S1_Z
    s2 = sx @ sx + sy @ sy + sz @ sz
    h = z.D * (sz @ sz - s2 / 3) + z.E * (sx @ sx - sy @ sy)
    return 0.5 * (h + h.conj().T)


def j_h(j_hz: float) -> np.ndarray:
    return 2 * np.pi * j_hz * so.dot12()


def zeeman_h(omega0: float) -> np.ndarray:
    return omega0 * so.total("z")


def secular_parts(p: SpinSystemParams) -> tuple[np.ndarray, np.ndarray]:
    """(H_A, H_B): diagonal Zeeman + Ising part and the flip-flop part."""
    s1z, s2z = so.spin1("z"), so.spin2("z")
    h_a = p.omega0 * (s1z + s2z) + 2 * p.omega_a * s1z @ s2z
    flipflop = so.spin1("+") @ so.spin2("-") + so.spin1("-") @ so.spin2("+")
    h_b = 0.5 * p.omega_b * flipflop
    return h_a, h_b


def secular_h(p: SpinSystemParams) -> np.ndarray:
    """H_A + H_B with omega_A = pi J + d and omega_B = pi J - d."""
    h_a, h_b = secular_parts(p)
    return h_a + h_b


def secular_h_expanded(p: SpinSystemParams) -> np.ndarray:
    """Zeeman + 2 pi J S1.S2 + d (3 S1z S2z - S1.S2), expanded directly.

    Its flip-flop coefficient is pi J - d/2, not (pi J - d)/2 as in
    :func:`secular_h`; the two agree only when J = 0.
    """
    return zeeman_h(p.omega0) + j_h(p.j_hz) + secular_dipolar_h(p.d)


def triplet_block(p: SpinSystemParams) -> np.ndarray:
    """Diagonal pseudo-qutrit Hamiltonian over (T+, T0, T-), as tabulated."""
    w0, pj, d = p.omega0, p.pi_j, p.d
    return 0.5 * np.diag([2 * w0 + pj + d, pj - 2 * d, -2 * w0 + pj + d]).astype(complex)


def triplet_projection(h: np.ndarray) -> np.ndarray:
    """Restriction of a two-spin operator to span(T+, T0, T-)."""
    t = triplet_frame()
    return t.conj().T @ h @ t
