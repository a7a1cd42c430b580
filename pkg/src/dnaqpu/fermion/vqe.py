"""Single-parameter VQE for the six-term two-qubit Hamiltonian."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import ConvergenceError, ValidationError
from ..qmath import eigh, propagator
from .mappings import SIX_WORDS, TaperedHamiltonian
from .pauli import PauliSum

GOLDEN = (np.sqrt(5.0) - 1) / 2
ANSATZ_GENERATOR = PauliSum(2, {"XY": 1.0}).to_matrix()
REFERENCE = np.array([0, 1, 0, 0], dtype=complex)     # |01>


@dataclass
class VQEOptions:
    xtol: float = 1e-10
    max_iter: int = 200
    scan_points: int = 24
    manifold_tol: float = 1e-6
    seed: int = 0     # unused by the deterministic golden-section search


@dataclass
class VQEResult:
    energy: float
    theta: float
    trace: list[tuple[float, float]] = field(default_factory=list)   # (theta, energy)
    iterations: int = 0
    exact_energy: float = float("nan")
    in_manifold: bool = True


def _hamiltonian(g) -> np.ndarray:
    if isinstance(g, TaperedHamiltonian):
        g = g.g
    g = tuple(float(x) for x in g)
    if len(g) != 6 or not all(np.isfinite(g)):
        raise ValidationError("need six finite coefficients g0..g5")
    return PauliSum(2, dict(zip(SIX_WORDS, g))).to_matrix()


def ansatz_state(theta: float) -> np.ndarray:
    """exp(-i theta X0 Y1) |01> = cos(theta) |01> - sin(theta) |10>."""
    return propagator(ANSATZ_GENERATOR, theta) @ REFERENCE


def energy(h: np.ndarray, theta: float) -> float:
    psi = ansatz_state(theta)
    return float(np.real(np.vdot(psi, h @ psi)))


def vqe(g, opts: VQEOptions | None = None) -> VQEResult:
    """Minimise <psi(theta)|H|psi(theta)> by coarse scan plus golden-section search.

    The energy has period pi in theta; the scan brackets the minimum, the
    golden-section search refines it.  ``in_manifold`` reports whether the
    optimum reaches the exact ground energy of H.
    """
    opts = opts or VQEOptions()
    h = _hamiltonian(g)
    trace: list[tuple[float, float]] = []

    def f(t):
        e = energy(h, t)
        trace.append((float(t), e))
        return e

    grid = np.linspace(-np.pi / 2, np.pi / 2, opts.scan_points, endpoint=False)
    vals = [f(t) for t in grid]
    k = int(np.argmin(vals))
    step = grid[1] - grid[0]
    lo, hi = grid[k] - step, grid[k] + step
    c = hi - GOLDEN * (hi - lo)
    d = lo + GOLDEN * (hi - lo)
    fc, fd = f(c), f(d)
    it = 0
    while hi - lo > opts.xtol:
        if it >= opts.max_iter:
            best = min(trace, key=lambda p: (p[1], abs(p[0])))
            raise ConvergenceError(
                f"golden-section search did not converge in {opts.max_iter} iterations",
                best=VQEResult(best[1], best[0], trace, it),
            )
        if fc < fd:
            hi, d, fd = d, c, fc
            c = hi - GOLDEN * (hi - lo)
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + GOLDEN * (hi - lo)
            fd = f(d)
        it += 1
    theta = 0.5 * (lo + hi)
    # fold into (-pi/2, pi/2]; energy has period pi
    theta = float(theta - np.pi * np.round(theta / np.pi))
    e = f(theta)
    e_exact = float(eigh(h)[0][0])
    return VQEResult(
        energy=e,
        theta=theta,
        trace=trace,
        iterations=it,
        exact_energy=e_exact,
        in_manifold=bool(e - e_exact < opts.manifold_tol),
    )
