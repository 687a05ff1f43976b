"""QFT redundant encoding of a dual-rail qubit and encoded single-qubit gates."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .fock import (
    ModeUnitary,
    PurePhotonState,
    SectoredDensity,
    apply_unitary,
    conjugate_density,
)


@dataclass(frozen=True)
class LogicalQubit:
    """alpha|0>_L + beta|1>_L, with |0>_L the photon in mode 0."""

    alpha: complex
    beta: complex

    def __post_init__(self):
        alpha, beta = complex(self.alpha), complex(self.beta)
        norm = abs(alpha) ** 2 + abs(beta) ** 2
        if abs(norm - 1.0) > 1e-9:
            raise ValueError(f"qubit is not normalized (|a|^2+|b|^2 = {norm!r})")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)

    @classmethod
    def from_bloch(cls, theta: float, phi: float = 0.0) -> "LogicalQubit":
        return cls(math.cos(theta / 2), cmath.exp(1j * phi) * math.sin(theta / 2))

    @classmethod
    def random(cls, rng: np.random.Generator) -> "LogicalQubit":
        """Haar-random pure qubit."""
        v = rng.normal(size=2) + 1j * rng.normal(size=2)
        v /= np.linalg.norm(v)
        return cls(v[0], v[1])

    def to_bloch(self) -> tuple[float, float]:
        theta = 2.0 * math.acos(min(1.0, abs(self.alpha)))
        if abs(self.alpha) < 1e-15 or abs(self.beta) < 1e-15:
            return theta, 0.0
        phi = cmath.phase(self.beta) - cmath.phase(self.alpha)
        return theta, math.remainder(phi, 2 * math.pi)

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.alpha, self.beta])

    @property
    def ab2(self) -> float:
        """|alpha|^2 |beta|^2, the only qubit dependence of the N > 2 fidelities."""
        return abs(self.alpha) ** 2 * abs(self.beta) ** 2


def pure_from_logical(q: LogicalQubit, n_modes: int) -> PurePhotonState:
    if n_modes < 2:
        raise ValueError(f"need at least 2 modes, got {n_modes}")
    amps = np.zeros(n_modes, dtype=complex)
    amps[0], amps[1] = q.alpha, q.beta
    return PurePhotonState(amps)


@lru_cache(maxsize=64)
def qft_matrix(n: int) -> ModeUnitary:
    """Q[j, k] = omega^(jk) / sqrt(n), omega = exp(+2 pi i / n)."""
    if n < 2:
        raise ValueError(f"QFT needs n >= 2, got {n}")
    jk = np.outer(np.arange(n), np.arange(n)) % n  # exact integer exponents
    return ModeUnitary(np.exp(2j * np.pi * jk / n) / math.sqrt(n))


def w_basis_state(k: int, n: int) -> PurePhotonState:
    """|W_k> = sum_q Q[k, q] a_q^dag |vac>."""
    if not 0 <= k < n:
        raise ValueError(f"mode index {k} out of range for n={n}")
    return PurePhotonState(qft_matrix(n).mat[k])


def encode(q: LogicalQubit, n: int) -> PurePhotonState:
    return apply_unitary(qft_matrix(n), pure_from_logical(q, n))


def decode(s: PurePhotonState) -> PurePhotonState:
    return apply_unitary(qft_matrix(s.dim).H, s)


def decode_density(d: SectoredDensity) -> SectoredDensity:
    return conjugate_density(qft_matrix(d.dim).H, d)


def encoded_gate(u2, n: int) -> ModeUnitary:
    """Q (U + I_{n-2}) Q^dag: ``u2`` acting on the logical modes, in the W basis."""
    u2 = np.asarray(u2, dtype=complex)
    if u2.shape != (2, 2):
        raise ValueError("logical gate must be 2x2")
    if np.max(np.abs(u2.conj().T @ u2 - np.eye(2))) > 1e-10:
        raise ValueError("logical gate is not unitary")
    block = np.eye(n, dtype=complex)
    block[:2, :2] = u2
    q = qft_matrix(n)
    return ModeUnitary(q.mat @ block @ q.mat.conj().T)
