"""Exception hierarchy shared by all modules."""


class DnaQpuError(Exception):
    """Base class for all library errors."""


class ValidationError(DnaQpuError, ValueError):
    """An input violates a physical or mathematical precondition."""


class NotHermitianError(ValidationError):
    pass


class AntisymmetryError(ValidationError):
    """A spatial/spin pairing does not give an antisymmetric two-fermion state."""


class FermionicLegalityError(ValidationError):
    """Forbidden creation/annihilation action (Pauli exclusion or empty slot)."""


class IntegralsSchemaError(ValidationError):
    pass


class IntegralsSymmetryError(ValidationError):
    pass


class StructureError(ValidationError):
    """A tapered Hamiltonian has Pauli terms outside the six-term form."""


class ConvergenceError(DnaQpuError):
    """Optimizer gave up; ``best`` holds the best iterate seen."""

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best
