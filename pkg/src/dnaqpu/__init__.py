"""Two-proton spin qubits in DNA base pairs: states, Hamiltonians, dynamics,
gate circuits, fermion-to-qubit reduction and proton-transfer kinetics."""

__version__ = "0.1.0"

from .errors import (  # noqa: F401
    AntisymmetryError,
    ConvergenceError,
    DnaQpuError,
    FermionicLegalityError,
    IntegralsSchemaError,
    IntegralsSymmetryError,
    NotHermitianError,
    StructureError,
    ValidationError,
)
from .hamiltonians import PairGeometry, SpinSystemParams, ZfsParams, secular_h, triplet_block  # noqa: F401
from .qmath import concurrence, eigh, fidelity_up_to_phase, partial_trace, propagator  # noqa: F401
from .states import singlet, zeeman_triplets, zfs_triplets  # noqa: F401
