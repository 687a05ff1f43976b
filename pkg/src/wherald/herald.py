"""Presence and absence heralding on a decoded, lossy output state."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .encoding import LogicalQubit
from .fock import SectoredDensity


class HeraldMode(str, enum.Enum):
    PRESENCE = "presence"  # photon seen in logical modes 0 or 1
    ABSENCE = "absence"  # no photon seen in ancilla modes 2..N-1


class DegenerateOutcomeError(ValueError):
    """The heralding event has zero probability, so no post-selected state exists."""


@dataclass(frozen=True)
class HeraldReport:
    herald_prob: float
    post_state: SectoredDensity  # two logical modes plus vacuum
    fidelity: float


def _logical_block(d: SectoredDensity) -> tuple[np.ndarray, float]:
    block = np.array(d.rho1[:2, :2])
    return block, float(np.trace(block).real)


def herald(d_out: SectoredDensity, q: LogicalQubit, mode, conditional: bool = False) -> HeraldReport:
    """Post-select ``d_out`` on the heralding event for ``mode``.

    Absence heralding keeps the vacuum. By default the absence post-state is
    ``(1 - v) * P rho P / tr(P rho) + v |vac><vac|`` with ``v`` the vacuum
    population, so that ``F_absence = (1 - v) F_presence``. With
    ``conditional=True`` the post-state is instead the Bayesian conditional
    state ``(P rho P + v |vac><vac|) / P_herald``.
    """
    mode = HeraldMode(mode)
    block, kept = _logical_block(d_out)
    vac = d_out.vac_prob
    L = q.vector

    if mode is HeraldMode.PRESENCE:
        if kept <= 0.0:
            raise DegenerateOutcomeError("presence herald has zero probability")
        post = SectoredDensity(block / kept, 0.0)
        return HeraldReport(kept, post, float(np.vdot(L, post.rho1 @ L).real))

    prob = vac + kept
    if prob <= 0.0:
        raise DegenerateOutcomeError("absence herald has zero probability")
    if conditional:
        post = SectoredDensity(block / prob, vac / prob)
    elif kept > 0.0:
        post = SectoredDensity((1.0 - vac) * block / kept, vac)
    elif d_out.photon_weight <= 1e-15:
        post = SectoredDensity(np.zeros((2, 2)), 1.0)
    else:
        raise DegenerateOutcomeError("photon present but never in the logical modes")
    return HeraldReport(prob, post, float(np.vdot(L, post.rho1 @ L).real))


def detection_distribution(d_out: SectoredDensity) -> np.ndarray:
    """Click probability per output mode; the final entry is 'no click'."""
    return np.append(d_out.populations(), d_out.vac_prob)
