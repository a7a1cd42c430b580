"""Gate-level view of the base pair: qubit gates, Bell-preparation circuits,
the X(x)X tautomer map and the four-slot occupation register.

Qubit 0 is the leftmost tensor factor (proton in G), qubit 1 the proton in C.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable

import numpy as np

from .errors import FermionicLegalityError, ValidationError
from .qmath import kron
from .states import SQ2, zfs_triplets

_S2 = 1 / np.sqrt(2.0)

SINGLE_QUBIT = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
    "S": np.diag([1, 1j]).astype(complex),
    "T": np.diag([1, np.exp(1j * np.pi / 4)]).astype(complex),
    "H": _S2 * np.array([[1, 1], [1, -1]], dtype=complex),
}
ROTATIONS = ("RX", "RY", "RZ")


@dataclass(frozen=True)
class Gate:
    """``kind`` is one of I X Y Z S T H, CNOT, or RX/RY/RZ (angle in rad).

    For CNOT, ``targets = (target, control)``.
    """

    kind: str
    targets: tuple[int, ...]
    angle: float | None = None

    def __post_init__(self):
        k = self.kind.upper()
        object.__setattr__(self, "kind", k)
        object.__setattr__(self, "targets", tuple(int(t) for t in self.targets))
        if k in SINGLE_QUBIT or k in ROTATIONS:
            if len(self.targets) != 1:
                raise ValidationError(f"{k} acts on exactly one qubit")
        elif k == "CNOT":
            if len(self.targets) != 2 or self.targets[0] == self.targets[1]:
                raise ValidationError("CNOT needs distinct target and control")
        else:
            raise ValidationError(f"unknown gate {self.kind!r}")
        if (k in ROTATIONS) != (self.angle is not None):
            raise ValidationError(f"angle is required for rotations and only for rotations ({k})")

    def local_matrix(self) -> np.ndarray:
        if self.kind in SINGLE_QUBIT:
            return SINGLE_QUBIT[self.kind]
        if self.kind in ROTATIONS:
            p = SINGLE_QUBIT[self.kind[1]]
            return np.cos(self.angle / 2) * np.eye(2) - 1j * np.sin(self.angle / 2) * p
        raise ValidationError("CNOT has no single-qubit matrix")

    def matrix(self, n_qubits: int) -> np.ndarray:
        if any(t < 0 or t >= n_qubits for t in self.targets):
            raise ValidationError(f"gate {self} addresses a qubit outside 0..{n_qubits - 1}")
        if self.kind != "CNOT":
            ops = [np.eye(2, dtype=complex)] * n_qubits
            ops[self.targets[0]] = self.local_matrix()
            return kron(*ops)
        target, control = self.targets
        p0 = np.diag([1, 0]).astype(complex)
        p1 = np.diag([0, 1]).astype(complex)
        a = [np.eye(2, dtype=complex)] * n_qubits
        b = [np.eye(2, dtype=complex)] * n_qubits
        a[control] = p0
        b[control] = p1
        b[target] = SINGLE_QUBIT["X"]
        return kron(*a) + kron(*b)

    def to_line(self) -> str:
        parts = [self.kind, *map(str, self.targets)]
        if self.angle is not None:
            parts.append(repr(float(self.angle)))
        return " ".join(parts)


@dataclass(frozen=True)
class Circuit:
    n_qubits: int
    gates: tuple[Gate, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if not 1 <= self.n_qubits <= 4:
            raise ValidationError("circuits support 1 to 4 qubits")
        object.__setattr__(self, "gates", tuple(self.gates))
        for g in self.gates:
            if any(t < 0 or t >= self.n_qubits for t in g.targets):
                raise ValidationError(f"gate {g.to_line()!r} out of range for {self.n_qubits} qubits")

    def unitary(self) -> np.ndarray:
        u = np.eye(2 ** self.n_qubits, dtype=complex)
        for g in self.gates:
            u = g.matrix(self.n_qubits) @ u
        return u

    def apply(self, psi) -> np.ndarray:
        psi = np.asarray(psi, dtype=complex).reshape(-1)
        if psi.size != 2 ** self.n_qubits:
            raise ValidationError(f"state of dim {psi.size} does not fit {self.n_qubits} qubits")
        for g in self.gates:
            psi = g.matrix(self.n_qubits) @ psi
        return psi

    def to_text(self) -> str:
        lines = [f"QUBITS {self.n_qubits}"] + [g.to_line() for g in self.gates]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Circuit":
        """Parse ``GATE target [control|angle]`` lines; ``#`` starts a comment."""
        n = None
        gates = []
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            tok = line.split()
            head = tok[0].upper()
            try:
                if head == "QUBITS":
                    n = int(tok[1])
                elif head in ROTATIONS:
                    gates.append(Gate(head, (int(tok[1]),), float(tok[2])))
                else:
                    gates.append(Gate(head, tuple(int(t) for t in tok[1:])))
            except (IndexError, ValueError) as exc:
                raise ValidationError(f"line {lineno}: cannot parse {raw!r} ({exc})") from exc
        if n is None:
            n = 1 + max((t for g in gates for t in g.targets), default=0)
        return cls(n, tuple(gates))


def apply_circuit(c: Circuit, psi) -> np.ndarray:
    return c.apply(psi)


def basis_state(bits: str) -> np.ndarray:
    v = np.zeros(2 ** len(bits), dtype=complex)
    v[int(bits, 2)] = 1
    return v


# --- Bell preparation --------------------------------------------------------------

_BELL = {
    # |00> -> X0 -> |10> -> H0 -> (|00> - |10>)/r2 -> CNOT -> (|00> - |11>)/r2 = -T_x
    "Tx": ("00", [Gate("X", (0,)), Gate("H", (0,)), Gate("CNOT", (1, 0))]),
    # |00> -> (|00> + |11>)/r2 = -i T_y
    "Ty": ("00", [Gate("H", (0,)), Gate("CNOT", (1, 0))]),
    # |00> -> (|00> + |11>)/r2 -> X1 -> (|01> + |10>)/r2 = T_z
    "Tz": ("00", [Gate("H", (0,)), Gate("CNOT", (1, 0)), Gate("X", (1,))]),
    # |11> -> (|01> - |10>)/r2 -> Z0 -> (|01> + |10>)/r2 = T_z*
    "Tz_star": ("11", [Gate("H", (0,)), Gate("CNOT", (1, 0)), Gate("Z", (0,))]),
}
BELL_VARIANTS = tuple(_BELL)


def bell_prep(variant: str) -> Circuit:
    if variant not in _BELL:
        raise ValidationError(f"unknown Bell variant {variant!r}; choose from {BELL_VARIANTS}")
    return Circuit(2, tuple(_BELL[variant][1]))


def bell_input(variant: str) -> np.ndarray:
    if variant not in _BELL:
        raise ValidationError(f"unknown Bell variant {variant!r}")
    return basis_state(_BELL[variant][0])


def bell_target(variant: str) -> np.ndarray:
    tx, ty, tz = (s.vector for s in zfs_triplets())
    return {"Tx": tx, "Ty": ty, "Tz": tz, "Tz_star": tz}[variant]


# --- tautomer map ---------------------------------------------------------------------

XX = kron(SINGLE_QUBIT["X"], SINGLE_QUBIT["X"])


def tautomer_flip(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    if psi.size != 4:
        raise ValidationError("tautomer_flip acts on two-qubit states")
    return XX @ psi


# --- four-slot occupation register -------------------------------------------------

SLOT_NAMES = ("G_i", "G_j", "C_k", "C_l")
UP, DOWN = 0, 1


@dataclass(frozen=True)
class Slot:
    occupied: bool = False
    spin: int | None = None     # 0 = up, 1 = down; None when unoccupied

    def __post_init__(self):
        if self.occupied and self.spin not in (UP, DOWN):
            raise ValidationError("an occupied slot needs spin 0 (up) or 1 (down)")
        if not self.occupied and self.spin is not None:
            raise ValidationError("an unoccupied slot carries no spin")


@dataclass(frozen=True)
class OccupationRegister:
    """Slots (G occupied i, G virtual j, C virtual k, C occupied l)."""

    slots: tuple[Slot, Slot, Slot, Slot]

    def __post_init__(self):
        if len(self.slots) != 4:
            raise ValidationError("the register has exactly four slots")

    @classmethod
    def canonical(cls, spin_g: int, spin_c: int) -> "OccupationRegister":
        return cls((Slot(True, spin_g), Slot(), Slot(), Slot(True, spin_c)))

    @property
    def occupancy(self) -> int:
        return sum(s.occupied for s in self.slots)

    def is_canonical(self) -> bool:
        occ = tuple(s.occupied for s in self.slots)
        return occ == (True, False, False, True)

    def is_tautomeric(self) -> bool:
        occ = tuple(s.occupied for s in self.slots)
        return occ == (False, True, True, False)

    def label(self) -> str:
        """Ket label: spin digit for occupied slots, '_' for unoccupied ones."""
        return "|" + "".join(str(s.spin) if s.occupied else "_" for s in self.slots) + ">"


@dataclass(frozen=True)
class LadderOp:
    create: bool
    slot: int
    spin: int | None = None     # required for creation; checked on annihilation if given

    def __post_init__(self):
        if self.slot not in range(4):
            raise ValidationError("slot index must be 0..3")
        if self.create and self.spin not in (UP, DOWN):
            raise ValidationError("creation needs a spin")


def apply_ladder(reg: OccupationRegister, op: LadderOp) -> OccupationRegister:
    s = reg.slots[op.slot]
    if op.create:
        if s.occupied:
            raise FermionicLegalityError(f"creation on occupied slot {SLOT_NAMES[op.slot]}")
        new = Slot(True, op.spin)
    else:
        if not s.occupied:
            raise FermionicLegalityError(f"annihilation on empty slot {SLOT_NAMES[op.slot]}")
        if op.spin is not None and op.spin != s.spin:
            raise FermionicLegalityError(
                f"annihilating spin {op.spin} but slot {SLOT_NAMES[op.slot]} holds spin {s.spin}"
            )
        new = Slot()
    slots = list(reg.slots)
    slots[op.slot] = new
    return replace(reg, slots=tuple(slots))


def apply_sequence(reg: OccupationRegister, ops: Iterable[LadderOp],
                   protons: int = 2) -> OccupationRegister:
    """Apply ladder ops in order; the final register must hold ``protons`` protons."""
    for op in ops:
        reg = apply_ladder(reg, op)
    if reg.occupancy != protons:
        raise FermionicLegalityError(
            f"sequence leaves {reg.occupancy} protons, expected {protons}"
        )
    return reg


def transfer(reg: OccupationRegister, src: int, dst: int) -> OccupationRegister:
    """Move the proton in ``src`` to the empty ``dst``, carrying its spin."""
    spin = reg.slots[src].spin
    return apply_sequence(
        reg, [LadderOp(False, src, spin), LadderOp(True, dst, spin)], protons=reg.occupancy
    )


def zwitter_path(reg: OccupationRegister, path: str) -> tuple[OccupationRegister, OccupationRegister]:
    """Stepwise double proton transfer through a zwitterionic intermediate.

    Path ``"i"`` moves the G proton first (G_i -> C_k), then the C proton
    (C_l -> G_j); path ``"ii"`` does the reverse order.  Returns
    ``(intermediate, final)``.
    """
    if not reg.is_canonical():
        raise ValidationError(f"register {reg.label()} is not a canonical configuration")
    if path == "i":
        mid = transfer(reg, 0, 2)
        final = transfer(mid, 3, 1)
    elif path == "ii":
        mid = transfer(reg, 3, 1)
        final = transfer(mid, 0, 2)
    else:
        raise ValidationError("path must be 'i' or 'ii'")
    return mid, final


def relabel(reg: OccupationRegister) -> OccupationRegister:
    """Swap occupied/virtual roles within each base (i<->j, k<->l).

    A tautomeric register becomes a canonical one, so it can be fed back
    into :func:`zwitter_path`.
    """
    s = reg.slots
    return OccupationRegister((s[1], s[0], s[3], s[2]))


def canonical_triplet_components() -> list[list[tuple[complex, OccupationRegister]]]:
    """The triplet components as weighted register lists: uu, dd and (ud + du)/r2."""
    c = OccupationRegister.canonical
    return [
        [(1.0, c(UP, UP))],
        [(1.0, c(DOWN, DOWN))],
        [(1 / SQ2, c(UP, DOWN)), (1 / SQ2, c(DOWN, UP))],
    ]
