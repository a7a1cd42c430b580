"""Dense complex linear algebra for small (dim <= 16) quantum systems.

Operators, kets and density matrices are plain ``numpy`` arrays of dtype
``complex128``.  Hermitian generators are exponentiated through their
eigendecomposition, which is exact enough at these sizes and keeps the
code free of a general-purpose ``expm``.
"""

from __future__ import annotations

import numpy as np

from .constants import EIG_TOL, HERM_TOL, UNIT_TOL
from .errors import NotHermitianError, ValidationError

__all__ = [
    "as_operator",
    "is_hermitian",
    "is_unitary",
    "kron",
    "eigh",
    "propagator",
    "ket",
    "dm",
    "check_state",
    "check_density",
    "purity",
    "concurrence",
    "fidelity_up_to_phase",
    "partial_trace",
    "commutator",
]

MAX_DIM = 16


def as_operator(a) -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValidationError(f"expected a square matrix, got shape {a.shape}")
    return a


def _scale(a: np.ndarray) -> float:
    return max(1.0, float(np.max(np.abs(a))) if a.size else 1.0)


def is_hermitian(a, tol: float = HERM_TOL) -> bool:
    """Hermiticity test, relative to the largest entry once that exceeds 1."""
    a = as_operator(a)
    return bool(np.max(np.abs(a - a.conj().T)) <= tol * _scale(a))


def is_unitary(u, tol: float = UNIT_TOL) -> bool:
    u = as_operator(u)
    return bool(np.max(np.abs(u.conj().T @ u - np.eye(len(u)))) <= tol)


def _require_hermitian(h) -> np.ndarray:
    h = as_operator(h)
    if not is_hermitian(h):
        raise NotHermitianError(
            f"operator is not Hermitian (max|H - H^+| = {np.max(np.abs(h - h.conj().T)):.3e})"
        )
    return h


def commutator(a, b) -> np.ndarray:
    return a @ b - b @ a


def kron(*ops) -> np.ndarray:
    """Tensor product of any number of operators or kets, left factor first."""
    if not ops:
        raise ValidationError("kron needs at least one factor")
    out = np.asarray(ops[0], dtype=complex)
    for op in ops[1:]:
        out = np.kron(out, np.asarray(op, dtype=complex))
    return out


def _fix_phase(v: np.ndarray) -> np.ndarray:
    # first component with non-negligible weight made real positive
    idx = int(np.argmax(np.abs(v) > 1e-8 * np.max(np.abs(v))))
    ph = v[idx] / abs(v[idx])
    return v / ph


def _orthonormalize_cluster(vecs: np.ndarray) -> np.ndarray:
    """Deterministic basis of span(vecs): project e_0, e_1, ... and Gram-Schmidt."""
    dim, m = vecs.shape
    proj = vecs @ vecs.conj().T
    basis: list[np.ndarray] = []
    remaining = list(range(dim))
    while len(basis) < m:
        best, best_norm = None, -1.0
        for k in remaining:
            w = proj[:, k].copy()
            for b in basis:
                w -= (b.conj() @ w) * b
            n = np.linalg.norm(w)
            # pivot: first index in input order whose residual is not negligible
            if n > 1e-6:
                best, best_norm = (k, w), n
                break
            if n > best_norm:
                best, best_norm = (k, w), n
        k, w = best
        remaining.remove(k)
        basis.append(w / best_norm)
    return np.column_stack(basis)


def eigh(h) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and orthonormal eigenvectors (columns).

    Degenerate clusters are re-orthonormalised by pivoted Gram-Schmidt over
    the standard basis in input order, and every vector gets its first
    significant component real and positive, so output is reproducible.
    """
    h = _require_hermitian(h)
    if len(h) > MAX_DIM:
        raise ValidationError(f"dimension {len(h)} exceeds {MAX_DIM}")
    h = 0.5 * (h + h.conj().T)
    w, v = np.linalg.eigh(h)
    tol = 1e-9 * _scale(h)
    out = np.empty_like(v)
    start = 0
    n = len(w)
    while start < n:
        stop = start + 1
        while stop < n and w[stop] - w[stop - 1] <= tol:
            stop += 1
        block = v[:, start:stop]
        if stop - start > 1:
            block = _orthonormalize_cluster(block)
        for k in range(block.shape[1]):
            out[:, start + k] = _fix_phase(block[:, k])
        start = stop
    return w, out


def propagator(h, t: float) -> np.ndarray:
    """exp(-i H t) for Hermitian H."""
    w, v = eigh(h)
    return (v * np.exp(-1j * w * t)) @ v.conj().T


def ket(*amplitudes, normalize: bool = True) -> np.ndarray:
    v = np.asarray(amplitudes[0] if len(amplitudes) == 1 else amplitudes, dtype=complex)
    v = v.reshape(-1)
    if normalize:
        n = np.linalg.norm(v)
        if n == 0:
            raise ValidationError("zero vector cannot be normalized")
        v = v / n
    return v


def dm(psi) -> np.ndarray:
    """Projector |psi><psi|."""
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    return np.outer(psi, psi.conj())


def check_state(psi, tol: float = UNIT_TOL) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    if abs(np.vdot(psi, psi).real - 1.0) > tol:
        raise ValidationError(f"state is not normalized (norm^2 = {np.vdot(psi, psi).real:.15g})")
    return psi


def check_density(rho, tol: float = EIG_TOL) -> np.ndarray:
    rho = as_operator(rho)
    if not is_hermitian(rho):
        raise ValidationError("density matrix is not Hermitian")
    tr = np.trace(rho).real
    if abs(tr - 1.0) > tol:
        raise ValidationError(f"density matrix trace is {tr:.15g}, expected 1")
    if np.min(np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))) < -tol:
        raise ValidationError("density matrix has negative eigenvalues")
    return rho


def purity(rho) -> float:
    rho = as_operator(rho)
    return float(np.real(np.trace(rho @ rho)))


_SIGMA_Y2 = np.array([[0, 0, 0, -1], [0, 0, 1, 0], [0, 1, 0, 0], [-1, 0, 0, 0]], dtype=complex)


def concurrence(state) -> float:
    """Wootters concurrence of a two-qubit ket or density matrix."""
    s = np.asarray(state, dtype=complex)
    if s.ndim == 1 or (s.ndim == 2 and 1 in s.shape):
        s = s.reshape(-1)
        if s.size != 4:
            raise ValidationError(f"concurrence needs dim 4, got {s.size}")
        s = s / np.linalg.norm(s)
        a, b, c, d = s
        return float(min(1.0, 2 * abs(a * d - b * c)))
    rho = as_operator(s)
    if len(rho) != 4:
        raise ValidationError(f"concurrence needs dim 4, got {len(rho)}")
    rho_tilde = _SIGMA_Y2 @ rho.conj() @ _SIGMA_Y2
    lam = np.sqrt(np.clip(np.linalg.eigvals(rho @ rho_tilde).real, 0, None))
    lam = np.sort(lam)[::-1]
    return float(np.clip(lam[0] - lam[1] - lam[2] - lam[3], 0.0, 1.0))


def fidelity_up_to_phase(psi, phi) -> float:
    """|<psi|phi>|^2 for normalized kets; insensitive to global phase."""
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    phi = np.asarray(phi, dtype=complex).reshape(-1)
    if psi.size != phi.size:
        raise ValidationError(f"dimension mismatch: {psi.size} vs {phi.size}")
    return float(min(1.0, abs(np.vdot(psi, phi)) ** 2))


def partial_trace(rho, dims: tuple[int, int] | None = None, keep: int = 0) -> np.ndarray:
    """Reduced density matrix of factor ``keep`` (0 = A, 1 = B) of A (x) B.

    ``dims`` defaults to two equal factors.
    """
    rho = as_operator(rho)
    n = len(rho)
    if dims is None:
        da = int(round(np.sqrt(n)))
        dims = (da, da)
    da, db = dims
    if da * db != n or da < 1 or db < 1:
        raise ValidationError(f"dimension {n} does not factor as {da} x {db}")
    r = rho.reshape(da, db, da, db)
    if keep == 0:
        return np.einsum("ijkj->ik", r)
    if keep == 1:
        return np.einsum("ijil->jl", r)
    raise ValidationError("keep must be 0 or 1")
