"""Passive W-state error detection for a dual-rail photonic qubit."""

from .analytic import (
    f_herald_absence,
    f_herald_presence,
    p_herald_absence,
    p_herald_presence,
)
from .channels import apply_phase_kick, averaged_channel, gaussian_averaged_channel
from .encoding import LogicalQubit, decode, encode, encoded_gate, qft_matrix, w_basis_state
from .fock import ModeUnitary, PurePhotonState, SectoredDensity
from .herald import DegenerateOutcomeError, HeraldMode, HeraldReport, herald
from .noise import ChannelTiming, Degenerate, Gaussian, TwoPoint, Uniform, lambda_of

__all__ = [
    "ChannelTiming",
    "Degenerate",
    "DegenerateOutcomeError",
    "Gaussian",
    "HeraldMode",
    "HeraldReport",
    "LogicalQubit",
    "ModeUnitary",
    "PurePhotonState",
    "SectoredDensity",
    "TwoPoint",
    "Uniform",
    "apply_phase_kick",
    "averaged_channel",
    "decode",
    "encode",
    "encoded_gate",
    "f_herald_absence",
    "f_herald_presence",
    "gaussian_averaged_channel",
    "herald",
    "lambda_of",
    "p_herald_absence",
    "p_herald_presence",
    "qft_matrix",
    "w_basis_state",
]
