"""GHZ vs W states under single-qubit loss, on small qubit registers.

Qubit 0 is the most significant bit of the computational-basis index, so
``|1,0,0>`` is index 4 for three qubits.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

MAX_QUBITS = 10


@dataclass(frozen=True, eq=False)
class QubitRegisterState:
    """Either a state vector (shape (2**n,)) or a density matrix (2**n, 2**n)."""

    n_qubits: int
    data: np.ndarray

    def __post_init__(self):
        if not 1 <= self.n_qubits <= MAX_QUBITS:
            raise ValueError(f"n_qubits must be in [1, {MAX_QUBITS}]")
        dim = 2**self.n_qubits
        data = np.array(self.data, dtype=complex)
        if data.shape not in {(dim,), (dim, dim)}:
            raise ValueError(f"bad shape {data.shape} for {self.n_qubits} qubits")
        data.setflags(write=False)
        object.__setattr__(self, "data", data)

    @property
    def is_pure(self) -> bool:
        return self.data.ndim == 1

    def density(self) -> np.ndarray:
        if self.is_pure:
            return np.outer(self.data, self.data.conj())
        return self.data


def basis_vector(bits) -> np.ndarray:
    bits = list(bits)
    v = np.zeros(2 ** len(bits), dtype=complex)
    v[int("".join(map(str, bits)) or "0", 2)] = 1.0
    return v


def ghz_state(n: int) -> QubitRegisterState:
    v = np.zeros(2**n, dtype=complex)
    v[0] = v[-1] = 1 / np.sqrt(2)
    return QubitRegisterState(n, v)


def w_state(n: int) -> QubitRegisterState:
    v = np.zeros(2**n, dtype=complex)
    v[[1 << (n - 1 - i) for i in range(n)]] = 1 / np.sqrt(n)
    return QubitRegisterState(n, v)


def partial_trace(s: QubitRegisterState, i: int) -> QubitRegisterState:
    """Trace out qubit ``i``; returns an (n-1)-qubit density matrix."""
    n = s.n_qubits
    if not 0 <= i < n:
        raise ValueError(f"qubit index {i} out of range for {n} qubits")
    if n < 2:
        raise ValueError("cannot trace the only qubit")
    if s.is_pure:
        psi = np.moveaxis(s.data.reshape((2,) * n), i, 0).reshape(2, -1)
        rho = psi.T @ psi.conj()
    else:
        t = s.data.reshape((2,) * (2 * n))
        t = np.trace(t, axis1=i, axis2=n + i)
        rho = t.reshape(2 ** (n - 1), 2 ** (n - 1))
    return QubitRegisterState(n - 1, rho)


def permute_qubits(s: QubitRegisterState, perm) -> QubitRegisterState:
    """Reorder qubits: qubit ``k`` of the result is qubit ``perm[k]`` of ``s``."""
    n = s.n_qubits
    perm = list(perm)
    if sorted(perm) != list(range(n)):
        raise ValueError(f"{perm} is not a permutation of {n} qubits")
    if s.is_pure:
        out = np.transpose(s.data.reshape((2,) * n), perm).reshape(-1)
    else:
        axes = perm + [n + p for p in perm]
        out = np.transpose(s.data.reshape((2,) * (2 * n)), axes).reshape(2**n, 2**n)
    return QubitRegisterState(n, out)


def expected_ghz_reduced(n: int) -> np.ndarray:
    """1/2 |0..0><0..0| + 1/2 |1..1><1..1| on n - 1 qubits."""
    zeros, ones = basis_vector([0] * (n - 1)), basis_vector([1] * (n - 1))
    return 0.5 * np.outer(zeros, zeros) + 0.5 * np.outer(ones, ones)


def expected_w_reduced(n: int) -> np.ndarray:
    """(n-1)/n |W_{n-1}><W_{n-1}| + 1/n |0..0><0..0| on n - 1 qubits."""
    zeros = basis_vector([0] * (n - 1))
    out = np.outer(zeros, zeros) / n
    if n > 1:
        w = w_state(n - 1).data
        out = out + (n - 1) / n * np.outer(w, w.conj())
    return out


def transposition(n: int, a: int, b: int) -> list[int]:
    perm = list(range(n))
    perm[a], perm[b] = perm[b], perm[a]
    return perm


def check_identities(n_max: int = 8, tol: float = 1e-12) -> list[tuple[str, bool, float]]:
    """Run every GHZ/W identity for 2 <= n <= n_max; (name, passed, max error) per check."""
    results = []
    for n in range(2, n_max + 1):
        ghz, w = ghz_state(n), w_state(n)
        err = max(np.max(np.abs(partial_trace(ghz, i).data - expected_ghz_reduced(n))) for i in range(n))
        results.append((f"ghz_partial_trace n={n}", err <= tol, float(err)))
        err = max(np.max(np.abs(partial_trace(w, i).data - expected_w_reduced(n))) for i in range(n))
        results.append((f"w_partial_trace n={n}", err <= tol, float(err)))
        err = max(
            (np.max(np.abs(permute_qubits(w, transposition(n, a, b)).data - w.data)) for a, b in combinations(range(n), 2)),
            default=0.0,
        )
        results.append((f"w_permutation n={n}", err <= tol, float(err)))
    return results
