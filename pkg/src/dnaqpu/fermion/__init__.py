"""Fermion-to-qubit layer: integrals, Fock-space Hamiltonian, JW/BK, tapering, VQE."""

from .hamiltonian import (
    FermionHamiltonian,
    annihilation_ops,
    build_fermion_h,
    creation_ops,
    exact_ground,
    number_op,
    sector_indices,
    sz_op,
)
from .integrals import (
    FermionIntegrals,
    integrals_from_dict,
    integrals_to_dict,
    load_integrals,
    random_integrals,
    save_integrals,
)
from .mappings import (
    SIX_WORDS,
    TaperedHamiltonian,
    bk_matrix,
    bravyi_kitaev,
    encode_basis,
    jordan_wigner,
    taper_two_qubit,
)
from .pauli import PauliSum, pauli_decompose
from .vqe import VQEOptions, VQEResult, ansatz_state, vqe

__all__ = [
    "FermionHamiltonian", "FermionIntegrals", "PauliSum", "SIX_WORDS", "TaperedHamiltonian",
    "VQEOptions", "VQEResult", "annihilation_ops", "ansatz_state", "bk_matrix",
    "bravyi_kitaev", "build_fermion_h", "creation_ops", "encode_basis", "exact_ground",
    "integrals_from_dict", "integrals_to_dict", "jordan_wigner", "load_integrals",
    "number_op", "pauli_decompose", "random_integrals", "save_integrals", "sector_indices",
    "sz_op", "taper_two_qubit", "vqe",
]
