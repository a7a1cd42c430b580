"""Jordan-Wigner and Bravyi-Kitaev encodings, and the two-qubit reduction."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from ..errors import StructureError, ValidationError
from .hamiltonian import (
    FermionHamiltonian,
    Term,
    build_fermion_h,
    creation_ops,
    mode_index,
)
from .integrals import FermionIntegrals
from .pauli import PauliSum, pauli_decompose

LadderMap = Callable[[int, bool], PauliSum]


def jw_ladder(n_modes: int) -> LadderMap:
    def op(j: int, dagger: bool) -> PauliSum:
        zs = {k: "Z" for k in range(j)}
        x = PauliSum.single(n_modes, {**zs, j: "X"}, 0.5)
        y = PauliSum.single(n_modes, {**zs, j: "Y"}, -0.5j if dagger else 0.5j)
        return x + y
    return op


def bk_matrix(n_modes: int) -> np.ndarray:
    """Fenwick-tree encoding matrix: qubit i stores the parity of modes
    (i + 1 - lowbit(i + 1)) .. i."""
    beta = np.zeros((n_modes, n_modes), dtype=int)
    for i in range(n_modes):
        low = (i + 1) & -(i + 1)
        beta[i, i + 1 - low: i + 1] = 1
    return beta


def _gf2_inverse(m: np.ndarray) -> np.ndarray:
    n = len(m)
    a = np.concatenate([m % 2, np.eye(n, dtype=int)], axis=1)
    row = 0
    for col in range(n):
        piv = next(r for r in range(row, n) if a[r, col])
        a[[row, piv]] = a[[piv, row]]
        for r in range(n):
            if r != row and a[r, col]:
                a[r] ^= a[row]
        row += 1
    return a[:, n:]


def bk_sets(n_modes: int) -> tuple[list[set], list[set], list[set]]:
    """Update, parity and flip sets for every mode."""
    beta = bk_matrix(n_modes)
    inv = _gf2_inverse(beta)
    update, parity, flip = [], [], []
    for j in range(n_modes):
        update.append({i for i in range(n_modes) if i != j and beta[i, j]})
        below = np.zeros(n_modes, dtype=int)
        below[:j] = 1
        parity.append(set(np.flatnonzero((below @ inv) % 2).tolist()))
        rest = beta[j].copy()
        rest[j] = 0
        flip.append(set(np.flatnonzero((rest @ inv) % 2).tolist()))
    return update, parity, flip


def bk_ladder(n_modes: int) -> LadderMap:
    update, parity, flip = bk_sets(n_modes)

    def op(j: int, dagger: bool) -> PauliSum:
        # n_j = b_j xor (parity of flip set); sign from parity of modes < j
        xs = PauliSum.single(n_modes, {k: "X" for k in update[j]})
        zp = PauliSum.single(n_modes, {k: "Z" for k in parity[j]})
        zf = PauliSum.single(n_modes, {k: "Z" for k in flip[j]})
        xj = PauliSum.single(n_modes, {j: "X"}, 0.5)
        yj = PauliSum.single(n_modes, {j: "Y"}, -0.5j if dagger else 0.5j)
        return xs * (xj + yj * zf) * zp
    return op


def _transform(terms: list[Term], n_modes: int, ladder: LadderMap) -> PauliSum:
    cache: dict[tuple[int, bool], PauliSum] = {}
    out = PauliSum(n_modes)
    for coef, ops in terms:
        prod = PauliSum.identity(n_modes, coef)
        for mode, dag in ops:
            if (mode, dag) not in cache:
                cache[(mode, dag)] = ladder(mode, dag)
            prod = prod * cache[(mode, dag)]
        out = out + prod
    return out.simplify(1e-14).real()


FermionInput = Union[FermionHamiltonian, FermionIntegrals]


def _as_fh(fh: FermionInput) -> FermionHamiltonian:
    return build_fermion_h(fh) if isinstance(fh, FermionIntegrals) else fh


def jordan_wigner(fh: FermionInput) -> PauliSum:
    fh = _as_fh(fh)
    return _transform(fh.terms, fh.n_modes, jw_ladder(fh.n_modes))


def bravyi_kitaev(fh: FermionInput) -> PauliSum:
    fh = _as_fh(fh)
    return _transform(fh.terms, fh.n_modes, bk_ladder(fh.n_modes))


def encode_basis(n_modes: int, encoding: str) -> np.ndarray:
    """Permutation matrix taking occupation vectors to encoded qubit vectors."""
    dim = 2 ** n_modes
    if encoding == "jw":
        return np.eye(dim, dtype=complex)
    if encoding != "bk":
        raise ValidationError(f"unknown encoding {encoding!r}")
    beta = bk_matrix(n_modes)
    w = np.zeros((dim, dim), dtype=complex)
    for i in range(dim):
        occ = np.array([(i >> (n_modes - 1 - k)) & 1 for k in range(n_modes)])
        b = (beta @ occ) % 2
        j = int("".join(map(str, b)), 2)
        w[j, i] = 1
    return w


# --- two-qubit reduction ---------------------------------------------------------

SIX_WORDS = ("II", "ZI", "IZ", "ZZ", "YY", "XX")


@dataclass(frozen=True)
class TaperedHamiltonian:
    """g0 I + g1 Z0 + g2 Z1 + g3 Z0Z1 + g4 Y0Y1 + g5 X0X1.

    Qubit 0 holds the orbital of the spin-up proton, qubit 1 that of the
    spin-down proton.
    """

    g: tuple[float, float, float, float, float, float]
    residual: float

    def pauli_sum(self) -> PauliSum:
        return PauliSum(2, dict(zip(SIX_WORDS, self.g)))

    def matrix(self) -> np.ndarray:
        return self.pauli_sum().to_matrix()


def sector_basis(n_modes: int = 4) -> np.ndarray:
    """Columns a+_{o_up, up} a+_{o_dn, down} |vac> ordered by 2 * o_up + o_dn."""
    cr = creation_ops(n_modes)
    vac = np.zeros(2 ** n_modes, dtype=complex)
    vac[0] = 1
    cols = []
    for o_up in (0, 1):
        for o_dn in (0, 1):
            cols.append(cr[mode_index(o_up, 0)] @ cr[mode_index(o_dn, 1)] @ vac)
    return np.column_stack(cols)


def taper_two_qubit(ints: FermionIntegrals, encoding: str = "jw",
                    tol: float = 1e-10) -> TaperedHamiltonian:
    """Project the encoded 4-qubit Hamiltonian on (N = 2, S_z = 0) and
    decompose the 4x4 block into two-qubit Pauli words."""
    if ints.M != 2:
        raise ValidationError("the two-qubit reduction needs M = 2")
    fh = build_fermion_h(ints)
    encoded = (jordan_wigner if encoding == "jw" else bravyi_kitaev)(fh).to_matrix()
    b = encode_basis(fh.n_modes, encoding) @ sector_basis(fh.n_modes)
    block = b.conj().T @ encoded @ b
    coeffs = pauli_decompose(block).terms
    residual = max((abs(c) for w, c in coeffs.items() if w not in SIX_WORDS), default=0.0)
    imag = max(abs(coeffs[w].imag) for w in SIX_WORDS)
    if residual > tol or imag > tol:
        raise StructureError(
            f"sector Hamiltonian has terms outside the six-word form (max residual {residual:.3e}); "
            "the integrals lack the orbital-parity symmetry"
        )
    g = tuple(float(coeffs[w].real) for w in SIX_WORDS)
    return TaperedHamiltonian(g=g, residual=float(max(residual, imag)))
