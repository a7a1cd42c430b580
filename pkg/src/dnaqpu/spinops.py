"""Spin-1/2 and spin-1 operator matrices (hbar = 1).

Basis ordering: spin-1/2 is (up, down) = (|0>, |1>); two spins use
(uu, ud, du, dd); spin-1 uses (m=+1, 0, -1).  Ladder operators follow
S+ = Sx + i Sy.
"""

import numpy as np

I2 = np.eye(2, dtype=complex)
SX = np.array([[0, 1], [1, 0]], dtype=complex) / 2
SY = np.array([[0, -1j], [1j, 0]], dtype=complex) / 2
SZ = np.array([[1, 0], [0, -1]], dtype=complex) / 2
SP = SX + 1j * SY
SM = SX - 1j * SY

PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": 2 * SX,
    "Y": 2 * SY,
    "Z": 2 * SZ,
}

_ONE = {"x": SX, "y": SY, "z": SZ, "+": SP, "-": SM}


def spin1(axis: str) -> np.ndarray:
    """Component ``axis`` of spin 1 (first particle of the pair)."""
    return np.kron(_ONE[axis], I2)


def spin2(axis: str) -> np.ndarray:
    return np.kron(I2, _ONE[axis])


def total(axis: str) -> np.ndarray:
    return spin1(axis) + spin2(axis)


def dot12() -> np.ndarray:
    """S1 . S2"""
    return sum(spin1(a) @ spin2(a) for a in "xyz")


def total_squared() -> np.ndarray:
    return sum(total(a) @ total(a) for a in "xyz")


SWAP = np.array(
    [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex
)

# spin 1, basis (+1, 0, -1)
_r2 = np.sqrt(2.0)
S1_X = np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]], dtype=complex) / _r2
S1_Y = np.array([[0, -1j, 0], [1j, 0, -1j], [0, 1j, 0]], dtype=complex) / _r2
S1_Z = np.diag([1.0, 0.0, -1.0]).astype(complex)
SPIN1 = {"x": S1_X, "y": S1_Y, "z": S1_Z}
