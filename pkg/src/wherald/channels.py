"""Phase-noise channel: exact per-sample kick and the averaged dephasing map."""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .fock import PurePhotonState, SectoredDensity
from .noise import PhaseDistribution, rng_stream


def apply_phase_kick(s: PurePhotonState, theta) -> PurePhotonState:
    """a_j^dag -> exp(i theta_j) a_j^dag."""
    theta = np.asarray(theta, dtype=float)
    if theta.shape != (s.dim,):
        raise ValueError(f"need {s.dim} phases, got shape {theta.shape}")
    return PurePhotonState(np.exp(1j * theta) * s.amps)


def averaged_channel(w: PurePhotonState, lam: float) -> SectoredDensity:
    """lam |w><w| + (1 - lam) Diag(|w><w|)."""
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"dephasing parameter {lam!r} outside [0, 1]")
    rho = np.outer(w.amps, w.amps.conj())
    out = lam * rho
    np.fill_diagonal(out, np.diag(rho))
    return SectoredDensity(out)


def gaussian_averaged_channel(w: PurePhotonState, delta: float) -> SectoredDensity:
    return averaged_channel(w, math.exp(-delta * delta))


def _shard_outer_sum(w, dist, n_samples, seed, index, chunk):
    rng = rng_stream(seed, index)
    acc = np.zeros((w.size, w.size), dtype=complex)
    done = 0
    while done < n_samples:
        m = min(chunk, n_samples - done)
        kicked = np.exp(1j * dist.sample(rng, (m, w.size))) * w
        acc += kicked.T @ kicked.conj()
        done += m
    return acc


def sampled_average_channel(
    w: PurePhotonState,
    dist: PhaseDistribution,
    samples: int,
    seed: int,
    shards: int = 1,
    chunk: int = 4096,
) -> SectoredDensity:
    """Empirical mean of |kick(w, theta)><kick(w, theta)| over ``samples`` draws.

    Shard k draws from stream k and handles a fixed slice of the samples; shard
    sums are merged in index order, so the result does not depend on how many
    threads ran them.
    """
    if samples < 1 or shards < 1:
        raise ValueError("samples and shards must be >= 1")
    sizes = [samples // shards + (k < samples % shards) for k in range(shards)]
    workers = int(os.environ.get("WHERALD_THREADS", "1"))
    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        parts = list(
            pool.map(
                lambda k: _shard_outer_sum(w.amps, dist, sizes[k], seed, k, chunk),
                range(shards),
            )
        )
    total = np.zeros_like(parts[0])
    for p in parts:
        total += p
    rho = total / samples
    return SectoredDensity(0.5 * (rho + rho.conj().T))
