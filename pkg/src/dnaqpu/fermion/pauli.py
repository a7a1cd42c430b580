"""Weighted sums of Pauli words.  Word position k acts on qubit k (leftmost factor)."""

from __future__ import annotations

from typing import Iterable, Mapping

import numpy as np

from ..errors import ValidationError
from ..qmath import kron
from ..spinops import PAULI

# single-qubit products: (a, b) -> (phase, a*b)
_MUL = {
    ("I", "I"): (1, "I"), ("I", "X"): (1, "X"), ("I", "Y"): (1, "Y"), ("I", "Z"): (1, "Z"),
    ("X", "I"): (1, "X"), ("X", "X"): (1, "I"), ("X", "Y"): (1j, "Z"), ("X", "Z"): (-1j, "Y"),
    ("Y", "I"): (1, "Y"), ("Y", "X"): (-1j, "Z"), ("Y", "Y"): (1, "I"), ("Y", "Z"): (1j, "X"),
    ("Z", "I"): (1, "Z"), ("Z", "X"): (1j, "Y"), ("Z", "Y"): (-1j, "X"), ("Z", "Z"): (1, "I"),
}


def multiply_words(a: str, b: str) -> tuple[complex, str]:
    phase = 1 + 0j
    out = []
    for x, y in zip(a, b):
        ph, z = _MUL[(x, y)]
        phase *= ph
        out.append(z)
    return phase, "".join(out)


def word_matrix(word: str) -> np.ndarray:
    return kron(*(PAULI[c] for c in word))


class PauliSum:
    """Mapping word -> coefficient on ``n_qubits`` qubits."""

    def __init__(self, n_qubits: int, terms: Mapping[str, complex] | Iterable = ()):
        self.n_qubits = int(n_qubits)
        self.terms: dict[str, complex] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for word, coef in items:
            self._add(word, coef)

    def _add(self, word: str, coef: complex) -> None:
        if len(word) != self.n_qubits or set(word) - set("IXYZ"):
            raise ValidationError(f"bad Pauli word {word!r} for {self.n_qubits} qubits")
        self.terms[word] = self.terms.get(word, 0) + complex(coef)

    @classmethod
    def identity(cls, n_qubits: int, coef: complex = 1.0) -> "PauliSum":
        return cls(n_qubits, {"I" * n_qubits: coef})

    @classmethod
    def single(cls, n_qubits: int, ops: Mapping[int, str], coef: complex = 1.0) -> "PauliSum":
        w = ["I"] * n_qubits
        for q, p in ops.items():
            w[q] = p
        return cls(n_qubits, {"".join(w): coef})

    def __add__(self, other: "PauliSum") -> "PauliSum":
        out = PauliSum(self.n_qubits, self.terms)
        for w, c in other.terms.items():
            out._add(w, c)
        return out

    def __sub__(self, other: "PauliSum") -> "PauliSum":
        return self + other * -1

    def __mul__(self, other) -> "PauliSum":
        if isinstance(other, PauliSum):
            out = PauliSum(self.n_qubits)
            for wa, ca in self.terms.items():
                for wb, cb in other.terms.items():
                    ph, w = multiply_words(wa, wb)
                    out._add(w, ph * ca * cb)
            return out
        return PauliSum(self.n_qubits, {w: c * other for w, c in self.terms.items()})

    __rmul__ = __mul__

    def adjoint(self) -> "PauliSum":
        return PauliSum(self.n_qubits, {w: np.conj(c) for w, c in self.terms.items()})

    def simplify(self, tol: float = 1e-12) -> "PauliSum":
        return PauliSum(self.n_qubits, {w: c for w, c in self.terms.items() if abs(c) > tol})

    def real(self, tol: float = 1e-10) -> "PauliSum":
        """Drop imaginary parts, which must be below ``tol`` (Hermitian sums)."""
        bad = {w: c for w, c in self.terms.items() if abs(c.imag) > tol}
        if bad:
            raise ValidationError(f"non-real Pauli coefficients: {bad}")
        return PauliSum(self.n_qubits, {w: c.real for w, c in self.terms.items()})

    def coefficients(self) -> dict[str, float]:
        return {w: float(np.real(c)) for w, c in sorted(self.terms.items())}

    def to_matrix(self) -> np.ndarray:
        dim = 2 ** self.n_qubits
        m = np.zeros((dim, dim), dtype=complex)
        for w, c in self.terms.items():
            m += c * word_matrix(w)
        return m

    def __len__(self) -> int:
        return len(self.terms)

    def __repr__(self) -> str:
        body = " + ".join(f"({c:.6g}) {w}" for w, c in sorted(self.terms.items()))
        return f"PauliSum({self.n_qubits}: {body or '0'})"


def pauli_decompose(m: np.ndarray) -> PauliSum:
    """Coefficients Tr(M P) / 2^n over all 4^n words."""
    from itertools import product

    m = np.asarray(m, dtype=complex)
    n = int(round(np.log2(len(m))))
    if 2 ** n != len(m):
        raise ValidationError("matrix dimension is not a power of two")
    out = PauliSum(n)
    for letters in product("IXYZ", repeat=n):
        w = "".join(letters)
        out._add(w, np.trace(word_matrix(w) @ m) / 2 ** n)
    return out
