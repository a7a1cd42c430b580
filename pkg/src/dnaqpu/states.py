"""Named two-proton spin states, the WCQS superposition and the spatial toy model.

Qubit encoding: |up> = |0>, |down> = |1>; pair basis (uu, ud, du, dd).
"""

from __future__ import annotations

import csv
import enum
from dataclasses import dataclass, field

import numpy as np

from . import spinops
from .errors import AntisymmetryError, ValidationError
from .qmath import dm, partial_trace

SQ2 = np.sqrt(2.0)
SQ3 = np.sqrt(3.0)

UU, UD, DU, DD = (np.eye(4, dtype=complex)[k] for k in range(4))


class Label(enum.Enum):
    T_PLUS = "T+"
    T_ZERO = "T0"
    T_MINUS = "T-"
    SINGLET = "S"
    TX = "Tx"
    TY = "Ty"
    TZ = "Tz"
    CUSTOM = "custom"


@dataclass(frozen=True)
class SpinPairState:
    vector: np.ndarray
    label: Label = Label.CUSTOM
    tag: str = ""

    def __post_init__(self):
        v = np.asarray(self.vector, dtype=complex).reshape(-1)
        if v.size != 4:
            raise ValidationError(f"spin-pair state needs 4 amplitudes, got {v.size}")
        if abs(np.linalg.norm(v) - 1) > 1e-10:
            raise ValidationError("spin-pair state is not normalized")
        v.setflags(write=False)
        object.__setattr__(self, "vector", v)

    def density(self) -> np.ndarray:
        return dm(self.vector)

    def exchange_parity(self) -> int | None:
        """+1 for swap-symmetric, -1 for antisymmetric, None if neither."""
        swapped = spinops.SWAP @ self.vector
        if np.allclose(swapped, self.vector, atol=1e-12):
            return 1
        if np.allclose(swapped, -self.vector, atol=1e-12):
            return -1
        return None


def zeeman_triplets() -> tuple[SpinPairState, SpinPairState, SpinPairState]:
    """|1,1>, |1,0>, |1,-1>"""
    return (
        SpinPairState(UU, Label.T_PLUS),
        SpinPairState((UD + DU) / SQ2, Label.T_ZERO),
        SpinPairState(DD, Label.T_MINUS),
    )


def singlet() -> SpinPairState:
    return SpinPairState((UD - DU) / SQ2, Label.SINGLET)


def zfs_triplets() -> tuple[SpinPairState, SpinPairState, SpinPairState]:
    """Zero-field triplet eigenstates (T_x, T_y, T_z)."""
    return (
        SpinPairState((DD - UU) / SQ2, Label.TX),
        SpinPairState(1j * (DD + UU) / SQ2, Label.TY),
        SpinPairState((UD + DU) / SQ2, Label.TZ),
    )


def general_triplet(variant: str = "canonical") -> SpinPairState:
    """Equal-weight superposition of the three Zeeman triplet components.

    The canonical and tautomeric variants are the same vector and differ
    only by ``tag``.
    """
    if variant not in ("canonical", "tautomeric"):
        raise ValidationError(f"unknown variant {variant!r}")
    if variant == "canonical":
        v = (UU + DD + (UD + DU) / SQ2) / SQ3
    else:
        v = (DD + UU + (DU + UD) / SQ2) / SQ3
    return SpinPairState(v, Label.CUSTOM, tag=variant)


def triplet_frame() -> np.ndarray:
    """4x3 isometry with columns T+, T0, T- (Zeeman triplet basis)."""
    return np.column_stack([s.vector for s in zeeman_triplets()])


def singlet_triplet_frame() -> np.ndarray:
    """Unitary with columns T+, T0, T-, S."""
    return np.column_stack([triplet_frame(), singlet().vector])


def zfs_frame_spin1() -> np.ndarray:
    """Columns T_x, T_y, T_z written in the spin-1 basis (m = +1, 0, -1)."""
    return triplet_frame().conj().T @ np.column_stack([s.vector for s in zfs_triplets()])


# --- WCQS -------------------------------------------------------------------

@dataclass(frozen=True)
class WcqsState:
    """a |canonical> (x) |cqs> + b |tautomeric> (x) |tqs>.

    The configuration (canonical/tautomeric) is carried by an explicit
    two-level register placed in front of the spin pair, so the 8-dim
    vector stays normalized even when ``cqs`` and ``tqs`` are the same
    spin vector.
    """

    a: complex
    b: complex
    cqs: SpinPairState
    tqs: SpinPairState
    temperature: float | None = None

    @property
    def vector(self) -> np.ndarray:
        return np.concatenate([self.a * self.cqs.vector, self.b * self.tqs.vector])

    def density(self) -> np.ndarray:
        return dm(self.vector)

    def spin_density(self) -> np.ndarray:
        """Spin-pair state after tracing out the configuration register."""
        return partial_trace(self.density(), dims=(2, 4), keep=1)

    @property
    def tautomer_probability(self) -> float:
        return float(abs(self.b) ** 2)


def wcqs(a: complex, b: complex, cqs: SpinPairState, tqs: SpinPairState,
         temperature: float | None = None) -> WcqsState:
    norm = abs(a) ** 2 + abs(b) ** 2
    if abs(norm - 1.0) > 1e-12:
        raise ValidationError(f"|a|^2 + |b|^2 = {norm!r}, must be 1")
    return WcqsState(complex(a), complex(b), cqs, tqs, temperature)


def thermal_wcqs(temperature: float, gap_ev: float, cqs: SpinPairState | None = None,
                 tqs: SpinPairState | None = None) -> WcqsState:
    """WCQS with real two-level Boltzmann weights at ``temperature`` (K)."""
    from .kinetics import occupation

    p = occupation(temperature, gap_ev)
    cqs = cqs or general_triplet("canonical")
    tqs = tqs or general_triplet("tautomeric")
    b = np.sqrt(p)
    a = np.sqrt(1.0 - p)
    return wcqs(a, b, cqs, tqs, temperature)


# --- triplet pairs ------------------------------------------------------------

_AXES = "xyz"


@dataclass(frozen=True)
class TripletPairState:
    """Vector over |T_u T_v*>, u, v in (x, y, z), u-major."""

    vector: np.ndarray

    def component(self, u: str, v: str) -> complex:
        return complex(self.vector[3 * _AXES.index(u) + _AXES.index(v)])


def triplet_pair(u: str, v: str) -> TripletPairState:
    vec = np.zeros(9, dtype=complex)
    vec[3 * _AXES.index(u) + _AXES.index(v)] = 1
    return TripletPairState(vec)


def fission_singlet() -> TripletPairState:
    vec = sum(triplet_pair(u, u).vector for u in _AXES) / SQ3
    return TripletPairState(vec)


def spin1_ops_cartesian() -> dict[str, np.ndarray]:
    """Spin-1 matrices expressed in the (T_x, T_y, T_z) basis."""
    c = zfs_frame_spin1()
    return {k: c.conj().T @ op @ c for k, op in spinops.SPIN1.items()}


# --- spatial toy model ----------------------------------------------------------

@dataclass(frozen=True)
class SpatialModel:
    separation: float = 2.86    # angstrom, site C position (site G at 0)
    width: float = 0.3          # angstrom
    x_min: float = -1.5
    x_max: float = 4.36
    points: int = 201
    parity: int = -1            # -1 antisymmetric (Fermi hole), +1 symmetric

    def __post_init__(self):
        if not self.width > 0:
            raise ValidationError("gaussian width must be positive")
        if self.points < 3 or not self.x_max > self.x_min:
            raise ValidationError("grid needs x_max > x_min and at least 3 points")
        if not (self.x_min <= min(0.0, self.separation) and self.x_max >= max(0.0, self.separation)):
            raise ValidationError("grid must cover both proton sites")
        if self.parity not in (1, -1):
            raise ValidationError("parity must be +1 or -1")


@dataclass(frozen=True)
class SpatialGrid:
    x: np.ndarray
    psi: np.ndarray     # psi[i, j] = Psi(x1 = x[i], x2 = x[j])
    parity: int
    orbitals: tuple = field(default=(), repr=False)

    @property
    def dx(self) -> float:
        return float(self.x[1] - self.x[0])

    @property
    def density(self) -> np.ndarray:
        return np.abs(self.psi) ** 2

    def norm(self) -> float:
        return float(self.density.sum() * self.dx ** 2)

    def to_csv(self, path_or_file) -> None:
        """Columns x1, x2, re, im, abs2; x1-major."""
        own = isinstance(path_or_file, (str, bytes)) or hasattr(path_or_file, "__fspath__")
        fh = open(path_or_file, "w", newline="", encoding="utf-8") if own else path_or_file
        try:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["x1", "x2", "re", "im", "abs2"])
            for i, x1 in enumerate(self.x):
                for j, x2 in enumerate(self.x):
                    z = self.psi[i, j]
                    w.writerow([f"{x1:.17g}", f"{x2:.17g}", f"{z.real:.17g}",
                                f"{z.imag:.17g}", f"{abs(z) ** 2:.17g}"])
        finally:
            if own:
                fh.close()


def _gaussian(x, centre, width):
    return np.exp(-((x - centre) ** 2) / (4 * width ** 2))


def spatial_two_proton(model: SpatialModel) -> SpatialGrid:
    """Two-proton space function built from bonding/antibonding site orbitals."""
    x = np.linspace(model.x_min, model.x_max, model.points)
    dx = x[1] - x[0]
    phi_g = _gaussian(x, 0.0, model.width)
    phi_c = _gaussian(x, model.separation, model.width)

    def normalize(f):
        n = np.sqrt(np.sum(np.abs(f) ** 2) * dx)
        if n < 1e-12:
            raise ValidationError("degenerate spatial model: orbital vanishes on the grid")
        return f / n

    psi_i = normalize(phi_g + phi_c)
    psi_j = normalize(phi_g - phi_c)
    if np.allclose(psi_i, psi_j, atol=1e-10) or np.allclose(psi_i, -psi_j, atol=1e-10):
        raise ValidationError("degenerate spatial model: psi_i equals psi_j")

    prod = np.outer(psi_i, psi_j)
    psi = (prod + prod.T) if model.parity > 0 else (prod - prod.T)
    norm = np.sqrt(np.sum(np.abs(psi) ** 2) * dx * dx)
    if norm < 1e-12:
        raise ValidationError("degenerate spatial model: two-proton function vanishes")
    psi = psi / norm
    return SpatialGrid(x=x, psi=psi, parity=model.parity, orbitals=(psi_i, psi_j))


# --- composite (space x spin) states --------------------------------------------

@dataclass(frozen=True)
class CompositeState:
    kind: str            # "ground" (Psi- x triplet) or "excited" (Psi+ x singlet)
    spatial_parity: int
    spin: SpinPairState


def assemble_cqs(spatial_parity: int, spin: SpinPairState) -> CompositeState:
    """Pair a spatial parity with a spin state, enforcing overall antisymmetry."""
    if spatial_parity not in (1, -1):
        raise ValidationError("spatial parity must be +1 or -1")
    spin_parity = spin.exchange_parity()
    if spin_parity is None:
        raise AntisymmetryError("spin state has no definite exchange symmetry")
    if spatial_parity * spin_parity != -1:
        raise AntisymmetryError(
            f"spatial parity {spatial_parity:+d} with spin parity {spin_parity:+d} "
            "is symmetric under particle exchange"
        )
    kind = "ground" if spatial_parity < 0 else "excited"
    return CompositeState(kind, spatial_parity, spin)
