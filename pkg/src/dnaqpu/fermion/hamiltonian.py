"""Second-quantized two-proton Hamiltonian on the occupation-number (Fock) space.

Spin-orbital ordering is (orb0 up, orb0 down, orb1 up, orb1 down, ...):
mode = 2 * orbital + spin.  Mode k is the k-th (leftmost-first) bit of the
Fock basis index.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from ..errors import ValidationError
from ..qmath import eigh
from .integrals import FermionIntegrals

# a term is (coefficient, ((mode, is_creation), ...)) read left to right
Term = tuple[float, tuple[tuple[int, bool], ...]]


def mode_index(orbital: int, spin: int) -> int:
    return 2 * orbital + spin


def _bits(index: int, n_modes: int) -> list[int]:
    return [(index >> (n_modes - 1 - k)) & 1 for k in range(n_modes)]


@lru_cache(maxsize=None)
def _annihilators(n_modes: int) -> tuple[np.ndarray, ...]:
    dim = 2 ** n_modes
    ops = []
    for j in range(n_modes):
        a = np.zeros((dim, dim))
        for col in range(dim):
            occ = _bits(col, n_modes)
            if occ[j]:
                sign = (-1) ** sum(occ[:j])
                row = col ^ (1 << (n_modes - 1 - j))
                a[row, col] = sign
        a.setflags(write=False)
        ops.append(a)
    return tuple(ops)


def annihilation_ops(n_modes: int) -> list[np.ndarray]:
    """Dense a_j with the sign (-1)^(number of occupied modes before j)."""
    return [a.astype(complex) for a in _annihilators(n_modes)]


def creation_ops(n_modes: int) -> list[np.ndarray]:
    return [a.T.astype(complex) for a in _annihilators(n_modes)]


def number_op(n_modes: int) -> np.ndarray:
    return np.diag([float(sum(_bits(i, n_modes))) for i in range(2 ** n_modes)]).astype(complex)


def sz_op(n_modes: int) -> np.ndarray:
    vals = []
    for i in range(2 ** n_modes):
        b = _bits(i, n_modes)
        vals.append(0.5 * (sum(b[0::2]) - sum(b[1::2])))
    return np.diag(vals).astype(complex)


def integral_terms(ints: FermionIntegrals, tol: float = 0.0) -> list[Term]:
    """Spin-conserving expansion of the one- and two-proton integrals.

    sum h_pq a+_{p s} a_{q s} + 1/2 sum <pq|rs> a+_{p s} a+_{q t} a_{s t} a_{r s}
    """
    terms: list[Term] = []
    M = ints.M
    for p in range(M):
        for q in range(M):
            if abs(ints.h[p, q]) > tol:
                for s in (0, 1):
                    terms.append((float(ints.h[p, q]),
                                  ((mode_index(p, s), True), (mode_index(q, s), False))))
    for p, q, r, s_, x in ints.v:
        if abs(x) <= tol:
            continue
        for sig in (0, 1):
            for tau in (0, 1):
                mp, mq = mode_index(p, sig), mode_index(q, tau)
                mr, ms = mode_index(r, sig), mode_index(s_, tau)
                if mp == mq or mr == ms:
                    continue
                terms.append((0.5 * x, ((mp, True), (mq, True), (ms, False), (mr, False))))
    return terms


def terms_to_matrix(terms: list[Term], n_modes: int) -> np.ndarray:
    ann = _annihilators(n_modes)
    dim = 2 ** n_modes
    out = np.zeros((dim, dim))
    for coef, ops in terms:
        m = np.eye(dim)
        for mode, dag in ops:
            m = m @ (ann[mode].T if dag else ann[mode])
        out += coef * m
    return out.astype(complex)


@dataclass(frozen=True)
class FermionHamiltonian:
    ints: FermionIntegrals

    @property
    def n_modes(self) -> int:
        return 2 * self.ints.M

    @cached_property
    def terms(self) -> list[Term]:
        return integral_terms(self.ints)

    @cached_property
    def matrix(self) -> np.ndarray:
        m = terms_to_matrix(self.terms, self.n_modes)
        m.setflags(write=False)
        return m


def build_fermion_h(ints: FermionIntegrals) -> FermionHamiltonian:
    return FermionHamiltonian(ints)


def sector_indices(n_modes: int, n_particles: int, sz: float) -> list[int]:
    out = []
    for i in range(2 ** n_modes):
        b = _bits(i, n_modes)
        if sum(b) == n_particles and abs(0.5 * (sum(b[0::2]) - sum(b[1::2])) - sz) < 1e-9:
            out.append(i)
    return out


def exact_ground(fh: FermionHamiltonian, n_particles: int, sz: float = 0.0) -> tuple[float, np.ndarray]:
    """Lowest eigenpair inside the (N, S_z) sector; the state lives in the full Fock space."""
    idx = sector_indices(fh.n_modes, n_particles, sz)
    if not idx:
        raise ValidationError(f"empty sector N={n_particles}, Sz={sz} for {fh.n_modes} modes")
    sub = fh.matrix[np.ix_(idx, idx)]
    w, v = eigh(sub)
    state = np.zeros(2 ** fh.n_modes, dtype=complex)
    state[idx] = v[:, 0]
    return float(w[0]), state
