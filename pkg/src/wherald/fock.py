"""Single photon in N modes, plus the vacuum sector.

The protocol never creates more than one photon, so every state lives in the
``1 (+) N`` block: a vacuum population and an N x N density matrix for the
one-photon sector. All operations are O(N^2) and exact up to round-off.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Construction-time checks. Tests assert the tighter 1e-12 state-algebra bound;
# these leave headroom for round-off in QFT conjugation at N ~ 1000.
STATE_TOL = 1e-10
UNITARY_TOL = 1e-10


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=complex)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class PurePhotonState:
    """Amplitudes of one photon spread over ``dim`` modes."""

    amps: np.ndarray

    def __post_init__(self):
        amps = _frozen(self.amps)
        if amps.ndim != 1:
            raise ValueError("amplitudes must be a vector")
        if amps.size < 2:
            raise ValueError(f"need at least 2 modes, got {amps.size}")
        norm = float(np.vdot(amps, amps).real)
        if abs(norm - 1.0) > STATE_TOL:
            raise ValueError(f"state is not normalized (|psi|^2 = {norm!r})")
        object.__setattr__(self, "amps", amps)

    @property
    def dim(self) -> int:
        return self.amps.size

    def density(self) -> "SectoredDensity":
        return SectoredDensity(np.outer(self.amps, self.amps.conj()), vac_prob=0.0)

    def overlap(self, other: "PurePhotonState") -> complex:
        """<self|other>."""
        _check_dims(self.dim, other.dim)
        return complex(np.vdot(self.amps, other.amps))


@dataclass(frozen=True, eq=False)
class SectoredDensity:
    """Mixed state: vacuum population ``vac_prob`` plus one-photon block ``rho1``.

    There is no coherence between the vacuum and the one-photon sector; neither
    phase noise, loss, nor a passive interferometer can create any.
    """

    rho1: np.ndarray
    vac_prob: float = 0.0

    def __post_init__(self):
        rho1 = _frozen(self.rho1)
        if rho1.ndim != 2 or rho1.shape[0] != rho1.shape[1]:
            raise ValueError("rho1 must be a square matrix")
        if rho1.shape[0] < 2:
            raise ValueError(f"need at least 2 modes, got {rho1.shape[0]}")
        vac = float(self.vac_prob)
        if not -STATE_TOL <= vac <= 1.0 + STATE_TOL:
            raise ValueError(f"vacuum population {vac!r} outside [0, 1]")
        if np.max(np.abs(rho1 - rho1.conj().T)) > STATE_TOL:
            raise ValueError("rho1 is not Hermitian")
        total = vac + float(np.trace(rho1).real)
        if abs(total - 1.0) > STATE_TOL:
            raise ValueError(f"state does not have unit trace ({total!r})")
        if np.linalg.eigvalsh(rho1).min() < -STATE_TOL:
            raise ValueError("rho1 is not positive semidefinite")
        object.__setattr__(self, "rho1", rho1)
        object.__setattr__(self, "vac_prob", vac)

    @property
    def dim(self) -> int:
        return self.rho1.shape[0]

    @property
    def photon_weight(self) -> float:
        return float(np.trace(self.rho1).real)

    def populations(self) -> np.ndarray:
        """Per-mode photon populations (diagonal of ``rho1``)."""
        return np.diag(self.rho1).real.copy()


@dataclass(frozen=True, eq=False)
class ModeUnitary:
    """Linear map on creation operators, a_i^dag -> sum_j mat[j, i] a_j^dag."""

    mat: np.ndarray

    def __post_init__(self):
        mat = _frozen(self.mat)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ValueError("mode unitary must be square")
        err = np.max(np.abs(mat.conj().T @ mat - np.eye(mat.shape[0])))
        if err > UNITARY_TOL:
            raise ValueError(f"matrix is not unitary (max deviation {err:.3g})")
        object.__setattr__(self, "mat", mat)

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    @property
    def H(self) -> "ModeUnitary":
        return ModeUnitary(self.mat.conj().T)

    def __matmul__(self, other: "ModeUnitary") -> "ModeUnitary":
        _check_dims(self.dim, other.dim)
        return ModeUnitary(self.mat @ other.mat)


def _check_dims(a: int, b: int) -> None:
    if a != b:
        raise ValueError(f"dimension mismatch: {a} vs {b}")


def apply_unitary(u: ModeUnitary, s: PurePhotonState) -> PurePhotonState:
    _check_dims(u.dim, s.dim)
    return PurePhotonState(u.mat @ s.amps)


def conjugate_density(u: ModeUnitary, d: SectoredDensity) -> SectoredDensity:
    """U rho1 U^dag; the vacuum sector is untouched by passive optics."""
    _check_dims(u.dim, d.dim)
    rho = u.mat @ d.rho1 @ u.mat.conj().T
    # re-symmetrize to keep Hermiticity exact through long chains
    return SectoredDensity(0.5 * (rho + rho.conj().T), d.vac_prob)


def dephase_diag(d: SectoredDensity) -> SectoredDensity:
    """Completely dephase in the photon-number basis (keep only the diagonal)."""
    return SectoredDensity(np.diag(np.diag(d.rho1)), d.vac_prob)


def fidelity_with_pure(psi: PurePhotonState, d: SectoredDensity) -> float:
    """<psi| rho |psi>. The vacuum has zero overlap with any one-photon state."""
    _check_dims(psi.dim, d.dim)
    return float(np.vdot(psi.amps, d.rho1 @ psi.amps).real)


def apply_uniform_loss(d: SectoredDensity, eta: float) -> SectoredDensity:
    """Each mode loses its photon with probability ``eta``.

    For a single photon, uniform loss is an erasure to vacuum, so the one-photon
    block is only rescaled.
    """
    if not 0.0 <= eta <= 1.0:
        raise ValueError(f"loss probability {eta!r} outside [0, 1]")
    return SectoredDensity((1.0 - eta) * d.rho1, d.vac_prob + eta * d.photon_weight)
