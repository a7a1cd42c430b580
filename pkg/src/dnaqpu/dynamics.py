"""Unitary and dephasing dynamics of the spin pair, hard pulses and readout."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

from . import spinops as so
from .errors import ValidationError
from .hamiltonians import (
    SpinSystemParams,
    ZfsParams,
    secular_h,
    secular_parts,
    triplet_block,
    zfs_h,
)
from .qmath import (
    as_operator,
    check_density,
    concurrence,
    dm,
    eigh,
    propagator,
)
from .states import singlet_triplet_frame, zfs_frame_spin1, zfs_triplets

# --- closed-system evolution ----------------------------------------------------


def evolve_state(h, psi0, t: float) -> np.ndarray:
    return propagator(h, t) @ np.asarray(psi0, dtype=complex)


def evolve_density(h, rho0, t: float) -> np.ndarray:
    """rho(t) = U rho0 U^+ with U = exp(-i H t)."""
    rho0 = check_density(rho0)
    u = propagator(h, t)
    return u @ rho0 @ u.conj().T


@dataclass(frozen=True)
class STBlocks:
    triplet: np.ndarray     # 3x3 over (T+, T0, T-)
    singlet: complex
    offblock_norm: float


def st_blocks(rho) -> STBlocks:
    """Split a two-spin density matrix into triplet and singlet blocks."""
    rho = as_operator(rho)
    w = singlet_triplet_frame()
    r = w.conj().T @ rho @ w
    off = max(np.max(np.abs(r[:3, 3])), np.max(np.abs(r[3, :3])))
    return STBlocks(triplet=r[:3, :3], singlet=complex(r[3, 3]), offblock_norm=float(off))


# --- Markovian pure dephasing ---------------------------------------------------

@dataclass(frozen=True)
class DephasingRates:
    gamma1: float = 0.0
    gamma2: float = 0.0

    def __post_init__(self):
        if self.gamma1 < 0 or self.gamma2 < 0:
            raise ValidationError("dephasing rates must be non-negative")


def _lindblad_rhs(h, jumps, rho):
    out = -1j * (h @ rho - rho @ h)
    for g, s in jumps:
        out += g * (s @ rho @ s - 0.25 * rho)
    return out


def lindblad_dephase(h, rho0, rates: DephasingRates, t: float, steps: int = 1000,
                     trajectory: bool = False):
    """Integrate d rho/dt = -i[H, rho] + sum_k g_k (S_kz rho S_kz - rho/4) with RK4.

    ``steps`` is a lower bound; it is raised so that the step never exceeds
    1 / (50 * max(|eigenvalue of H|, rates)).  With ``trajectory=True`` the
    return value is ``(times, rhos)`` at every integration step.
    """
    if steps < 1:
        raise ValidationError("steps must be >= 1")
    if not isinstance(rates, DephasingRates):
        rates = DephasingRates(*rates)
    h = as_operator(h)
    rho = check_density(rho0).copy()
    scale = max(np.max(np.abs(np.linalg.eigvalsh(h))), rates.gamma1, rates.gamma2, 1e-300)
    if t > 0:
        steps = max(steps, int(np.ceil(abs(t) * 50 * scale)))
    dt = t / steps
    jumps = [(rates.gamma1, so.spin1("z")), (rates.gamma2, so.spin2("z"))]
    times, rhos = [0.0], [rho.copy()]
    for k in range(steps):
        k1 = _lindblad_rhs(h, jumps, rho)
        k2 = _lindblad_rhs(h, jumps, rho + 0.5 * dt * k1)
        k3 = _lindblad_rhs(h, jumps, rho + 0.5 * dt * k2)
        k4 = _lindblad_rhs(h, jumps, rho + dt * k3)
        rho = rho + (dt / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        rho = 0.5 * (rho + rho.conj().T)
        if trajectory:
            times.append((k + 1) * dt)
            rhos.append(rho.copy())
    if trajectory:
        return np.array(times), rhos
    return rho


# --- pulses --------------------------------------------------------------------

@dataclass(frozen=True)
class Rotation:
    axis: str                       # "x", "y", "z", or "-x", "-y", "-z"
    angle: float
    targets: tuple[int, ...] = (1, 2)

    def __post_init__(self):
        if self.axis.lstrip("-") not in ("x", "y", "z"):
            raise ValidationError(f"unknown rotation axis {self.axis!r}")
        if not self.targets or any(k not in (1, 2) for k in self.targets):
            raise ValidationError("rotation targets must be a non-empty subset of {1, 2}")

    def unitary(self) -> np.ndarray:
        sign = -1.0 if self.axis.startswith("-") else 1.0
        ax = self.axis.lstrip("-")
        gen = sum(so.spin1(ax) if k == 1 else so.spin2(ax) for k in set(self.targets))
        return propagator(gen, sign * self.angle)


@dataclass(frozen=True)
class FreeEvolution:
    duration: float
    params: SpinSystemParams
    part: str = "full"              # "full" = H_A + H_B, "a" or "b" for one part

    def __post_init__(self):
        if self.duration < 0:
            raise ValidationError("free-evolution duration must be non-negative")
        if self.part not in ("full", "a", "b"):
            raise ValidationError(f"unknown Hamiltonian part {self.part!r}")

    def hamiltonian(self) -> np.ndarray:
        if self.part == "full":
            return secular_h(self.params)
        h_a, h_b = secular_parts(self.params)
        return h_a if self.part == "a" else h_b


Step = Union[Rotation, FreeEvolution]


@dataclass(frozen=True)
class PulseSequence:
    steps: tuple[Step, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if not self.steps:
            raise ValidationError("a pulse sequence needs at least one step")

    def unitary(self) -> np.ndarray:
        u = np.eye(4, dtype=complex)
        for s in self.steps:
            step_u = s.unitary() if isinstance(s, Rotation) else propagator(s.hamiltonian(), s.duration)
            u = step_u @ u
        return u

    def apply(self, state):
        return _apply_unitary(self.unitary(), state)


def _apply_unitary(u, state):
    s = np.asarray(state, dtype=complex)
    if s.ndim == 1:
        return u @ s
    return u @ s @ u.conj().T


def apply_pulse(state, rotation: Rotation):
    """Instantaneous rotation exp(-i angle n.S_k) on each targeted spin (ket or rho)."""
    return _apply_unitary(rotation.unitary(), state)


# --- measurement and time series ----------------------------------------------

def measure_zeeman(state) -> np.ndarray:
    """Born probabilities over (uu, ud, du, dd)."""
    s = np.asarray(state, dtype=complex)
    if s.ndim == 1:
        p = np.abs(s) ** 2
        p = p / p.sum()
    else:
        p = np.real(np.diag(s)).copy()
        p = p / p.sum()
    return p


@dataclass
class TimeSeries:
    times: np.ndarray
    populations: np.ndarray     # (n, 4): uu, ud, du, dd
    concurrence: np.ndarray
    coherence: np.ndarray       # <ud| rho |du>

    CSV_HEADER = ("t", "p_uu", "p_ud", "p_du", "p_dd", "concurrence", "coh_re", "coh_im")

    def __len__(self):
        return len(self.times)

    def rows(self):
        for k in range(len(self.times)):
            c = self.coherence[k]
            yield (self.times[k], *self.populations[k], self.concurrence[k], c.real, c.imag)

    def to_csv(self, path_or_file=None) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.CSV_HEADER)
        for row in self.rows():
            w.writerow([f"{float(x):.17g}" for x in row])
        text = buf.getvalue()
        if path_or_file is not None:
            if hasattr(path_or_file, "write"):
                path_or_file.write(text)
            else:
                with open(path_or_file, "w", encoding="utf-8", newline="") as fh:
                    fh.write(text)
        return text


def series_from_states(times, states) -> TimeSeries:
    pops, conc, coh = [], [], []
    for s in states:
        s = np.asarray(s, dtype=complex)
        rho = dm(s) if s.ndim == 1 else s
        pops.append(measure_zeeman(rho))
        conc.append(concurrence(s))
        coh.append(rho[1, 2])
    return TimeSeries(np.asarray(times, dtype=float), np.array(pops), np.array(conc),
                      np.array(coh, dtype=complex))


def flip_flop_series(p: SpinSystemParams, times: Sequence[float]) -> TimeSeries:
    """Start in |ud> and evolve under the secular Hamiltonian."""
    h = secular_h(p)
    w, v = eigh(h)
    psi0 = np.array([0, 1, 0, 0], dtype=complex)
    c0 = v.conj().T @ psi0
    states = [v @ (np.exp(-1j * w * t) * c0) for t in times]
    return series_from_states(times, states)


# --- Ramsey-type entangling sequence ------------------------------------------------

RAMSEY_PROTOCOLS = ("selective_pi", "global_half_pi")


def ramsey_sequence(p: SpinSystemParams, t: float, protocol: str = "selective_pi") -> PulseSequence:
    """Pulse - free evolution - inverse pulse.

    ``selective_pi``: pi_x on spin 2, evolve, pi_-x on spin 2.  Moves |uu>
    into the flip-flop doublet and back, so the output stays in
    span(|uu>, |dd>) and P_dd = sin^2(omega_B t / 2).

    ``global_half_pi``: (pi/2)_x on both spins, evolve, (pi/2)_-x on both.
    Kept for comparison; it leaks out of span(|uu>, |dd>) when omega0 != 0
    and its P_dd frequency involves omega_A.
    """
    if protocol == "selective_pi":
        pulse, targets = np.pi, (2,)
    elif protocol == "global_half_pi":
        pulse, targets = np.pi / 2, (1, 2)
    else:
        raise ValidationError(f"unknown Ramsey protocol {protocol!r}")
    return PulseSequence((
        Rotation("x", pulse, targets),
        FreeEvolution(t, p),
        Rotation("-x", pulse, targets),
    ))


def ramsey_entangle(p: SpinSystemParams, times: Sequence[float],
                    protocol: str = "selective_pi") -> TimeSeries:
    psi0 = np.array([1, 0, 0, 0], dtype=complex)
    states = [ramsey_sequence(p, t, protocol).apply(psi0) for t in times]
    return series_from_states(times, states)


def evolve_t0_phase(p: SpinSystemParams, t: float) -> complex:
    """<T_z| exp(-i H_B t) |T_z>  (= exp(-i omega_B t / 2))."""
    _, h_b = secular_parts(p)
    tz = zfs_triplets()[2].vector
    return complex(np.vdot(tz, propagator(h_b, t) @ tz))


# --- transition spectra ----------------------------------------------------------

@dataclass(frozen=True)
class Transition:
    frequency: float
    lower: str
    upper: str


def transition_spectrum(p: Union[SpinSystemParams, ZfsParams]) -> list[Transition]:
    """All pairwise level gaps, ascending, of the triplet block or the ZFS Hamiltonian."""
    if isinstance(p, ZfsParams):
        c = zfs_frame_spin1()
        levels = np.real(np.diag(c.conj().T @ zfs_h(p) @ c))
        labels = ("Tx", "Ty", "Tz")
    elif isinstance(p, SpinSystemParams):
        levels = np.real(np.diag(triplet_block(p)))
        labels = ("T+", "T0", "T-")
    else:
        raise ValidationError("transition_spectrum needs SpinSystemParams or ZfsParams")
    out = []
    for i in range(3):
        for j in range(i + 1, 3):
            lo, hi = (i, j) if levels[i] <= levels[j] else (j, i)
            out.append(Transition(float(levels[hi] - levels[lo]), labels[lo], labels[hi]))
    out.sort(key=lambda tr: (tr.frequency, tr.lower, tr.upper))
    return out
