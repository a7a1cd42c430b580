"""One- and two-proton integrals: validation, JSON I/O and random test sets."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field

import numpy as np

from ..errors import IntegralsSchemaError, IntegralsSymmetryError

SYM_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class FermionIntegrals:
    """``h[p, q]`` one-proton integrals; ``v`` lists (p, q, r, s, <pq|rs>).

    Two-proton integrals use physicists' ordering: p, r belong to particle 1
    and q, s to particle 2.  Every non-zero element is listed explicitly.
    """

    M: int
    h: np.ndarray
    v: tuple[tuple[int, int, int, int, float], ...] = ()
    units: str = "hartree-like"
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "h", np.asarray(self.h, dtype=float))
        object.__setattr__(self, "v", tuple(
            (int(p), int(q), int(r), int(s), float(x)) for p, q, r, s, x in self.v
        ))
        validate(self)

    def __eq__(self, other):
        if not isinstance(other, FermionIntegrals):
            return NotImplemented
        return (self.M == other.M and np.array_equal(self.h, other.h)
                and self.v == other.v and self.units == other.units)

    __hash__ = None

    @property
    def v_dense(self) -> np.ndarray:
        t = np.zeros((self.M,) * 4)
        for p, q, r, s, x in self.v:
            t[p, q, r, s] = x
        return t

    @classmethod
    def from_dense(cls, h, v_dense, tol: float = 0.0, **kw) -> "FermionIntegrals":
        v_dense = np.asarray(v_dense, dtype=float)
        idx = np.argwhere(np.abs(v_dense) > tol)
        entries = tuple((*map(int, i), float(v_dense[tuple(i)])) for i in idx)
        return cls(M=len(h), h=h, v=entries, **kw)

    def permuted(self, perm) -> "FermionIntegrals":
        """Relabel orbitals: new orbital k is old orbital perm[k]."""
        perm = list(perm)
        h = self.h[np.ix_(perm, perm)]
        v = self.v_dense[np.ix_(perm, perm, perm, perm)]
        return FermionIntegrals.from_dense(h, v, units=self.units)


def validate(ints: FermionIntegrals) -> None:
    M = ints.M
    if not isinstance(M, (int, np.integer)) or M < 1 or M > 4:
        raise IntegralsSchemaError(f"M must be an integer in 1..4, got {M!r}")
    if ints.h.shape != (M, M):
        raise IntegralsSchemaError(f"h must be {M}x{M}, got shape {ints.h.shape}")
    if not np.all(np.isfinite(ints.h)):
        raise IntegralsSchemaError("h has non-finite entries")
    if np.max(np.abs(ints.h - ints.h.T)) > SYM_TOL:
        raise IntegralsSymmetryError("one-proton integrals h are not symmetric")
    seen = set()
    for p, q, r, s, x in ints.v:
        if not all(0 <= k < M for k in (p, q, r, s)):
            raise IntegralsSchemaError(f"two-proton index out of range in {(p, q, r, s)}")
        if (p, q, r, s) in seen:
            raise IntegralsSchemaError(f"duplicate two-proton entry {(p, q, r, s)}")
        if not np.isfinite(x):
            raise IntegralsSchemaError(f"non-finite two-proton entry {(p, q, r, s)}")
        seen.add((p, q, r, s))
    v = ints.v_dense
    if np.max(np.abs(v - v.transpose(1, 0, 3, 2)), initial=0.0) > SYM_TOL:
        raise IntegralsSymmetryError("two-proton integrals violate <pq|rs> = <qp|sr>")
    if np.max(np.abs(v - v.transpose(2, 3, 0, 1)), initial=0.0) > SYM_TOL:
        raise IntegralsSymmetryError("two-proton integrals violate <pq|rs> = <rs|pq> (Hermiticity)")


def load_integrals(path: str | os.PathLike) -> FermionIntegrals:
    """Read the JSON integrals file (raises OSError if it cannot be read)."""
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise IntegralsSchemaError(f"{path}: invalid JSON ({exc})") from exc
    return integrals_from_dict(data)


def integrals_from_dict(data) -> FermionIntegrals:
    if not isinstance(data, dict):
        raise IntegralsSchemaError("integrals file must hold a JSON object")
    for key in ("M", "h"):
        if key not in data:
            raise IntegralsSchemaError(f"missing field {key!r}")
    conv = data.get("convention", "physicists")
    if conv != "physicists":
        raise IntegralsSchemaError(f"unsupported convention {conv!r}; expected 'physicists'")
    M = data["M"]
    if not isinstance(M, int) or isinstance(M, bool):
        raise IntegralsSchemaError("M must be an integer")
    try:
        h = np.array(data["h"], dtype=float)
    except (TypeError, ValueError) as exc:
        raise IntegralsSchemaError(f"h is not a numeric matrix ({exc})") from exc
    v = []
    for entry in data.get("v", []):
        if not isinstance(entry, (list, tuple)) or len(entry) != 5:
            raise IntegralsSchemaError(f"v entries must be [p, q, r, s, value], got {entry!r}")
        *idx, x = entry
        if not all(isinstance(k, int) and not isinstance(k, bool) for k in idx):
            raise IntegralsSchemaError(f"v indices must be integers, got {entry!r}")
        if not isinstance(x, (int, float)) or isinstance(x, bool):
            raise IntegralsSchemaError(f"v value must be a number, got {entry!r}")
        v.append((*idx, float(x)))
    return FermionIntegrals(M=M, h=h, v=tuple(v), units=str(data.get("units", "hartree-like")))


def integrals_to_dict(ints: FermionIntegrals) -> dict:
    return {
        "units": ints.units,
        "convention": "physicists",
        "M": int(ints.M),
        "h": ints.h.tolist(),
        "v": [[p, q, r, s, x] for p, q, r, s, x in ints.v],
    }


def save_integrals(ints: FermionIntegrals, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(integrals_to_dict(ints), fh, indent=2)
        fh.write("\n")


def random_integrals(rng: np.random.Generator, M: int = 2, parity_symmetric: bool = False,
                     scale: float = 1.0) -> FermionIntegrals:
    """Random real-orbital integrals with the full 8-fold permutational symmetry.

    ``parity_symmetric`` zeroes every element odd in orbital 1, the class in
    which the M = 2 two-qubit reduction has only six Pauli terms.
    """
    a = rng.normal(size=(M, M))
    h = scale * (a + a.T) / 2
    c = rng.normal(size=(M,) * 4)
    # chemists' (pr|qs), symmetrised over p<->r, q<->s and (pr)<->(qs)
    c = (c + c.transpose(1, 0, 2, 3)) / 2
    c = (c + c.transpose(0, 1, 3, 2)) / 2
    c = (c + c.transpose(2, 3, 0, 1)) / 2
    c = 0.5 * scale * c
    v = c.transpose(0, 2, 1, 3)     # <pq|rs> = (pr|qs)
    if parity_symmetric:
        mask1 = np.add.outer(np.arange(M) % 2, np.arange(M) % 2)
        h = np.where(mask1 % 2 == 0, h, 0.0)
        odd = (np.indices((M,) * 4) % 2).sum(axis=0) % 2
        v = np.where(odd == 0, v, 0.0)
    return FermionIntegrals.from_dense(h, v)
