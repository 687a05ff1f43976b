"""End-to-end Monte Carlo: sample phases, propagate exactly, herald, aggregate.

Each sample's state is propagated exactly (encode, kick, decode, loss), so the
only randomness is the phase vector. Heralding probability is the sample mean
of the per-sample herald probability; fidelity is the ratio estimator
E[w F] / E[w] with a delta-method standard error, where w is the weight of the
photon landing in the logical modes.

Samples are split into a fixed shard plan. Shard k draws from RNG stream k,
and shard partial sums are merged in index order, so results are bit-exact
for a given (seed, samples, shards) whatever the thread count.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import analytic
from .channels import apply_phase_kick
from .encoding import LogicalQubit, decode, encode, qft_matrix
from .fock import apply_uniform_loss
from .herald import DegenerateOutcomeError, HeraldMode, HeraldReport, herald
from .noise import ChannelTiming, Gaussian, PhaseDistribution, lambda_of, rng_stream

# absolute slack for comparisons whose standard error is exactly zero
ZERO_SE_TOL = 1e-12


@dataclass(frozen=True)
class McConfig:
    n_modes: int
    qubit: LogicalQubit
    distribution: PhaseDistribution
    eta: float = 0.0
    mode: HeraldMode = HeraldMode.ABSENCE
    samples: int = 100_000
    seed: int = 0
    shards: int = 1
    click_sampling: bool = False
    chunk: int = 8192

    def __post_init__(self):
        object.__setattr__(self, "mode", HeraldMode(self.mode))
        if self.n_modes < 2:
            raise ValueError("need at least 2 modes")
        if not 0.0 <= self.eta <= 1.0:
            raise ValueError(f"eta {self.eta!r} outside [0, 1]")
        if self.samples < 1 or self.shards < 1 or self.chunk < 1:
            raise ValueError("samples, shards and chunk must be >= 1")
        if self.seed is None or self.seed < 0:
            raise ValueError("an explicit non-negative seed is required")

    @classmethod
    def from_timing(cls, timing: ChannelTiming, **kw) -> "McConfig":
        """Gaussian(0, delta) dephasing and loss eta from (t_p, T1, T2)."""
        return cls(distribution=Gaussian(0.0, timing.delta), eta=timing.eta, **kw)

    def shard_sizes(self) -> list[int]:
        base, extra = divmod(self.samples, self.shards)
        return [base + (k < extra) for k in range(self.shards)]


class _Moments:
    """Running mean and co-moment matrix of (p, x, y), merged by Chan's formula.

    p: per-sample herald probability, x: logical weight, y: x * fidelity.
    """

    def __init__(self):
        self.count = 0
        self.mean = np.zeros(3)
        self.comoment = np.zeros((3, 3))

    def add(self, p, x, y):
        block = np.column_stack([p, x, y]).astype(float)
        other = _Moments()
        other.count = block.shape[0]
        other.mean = block.mean(axis=0)
        centered = block - other.mean
        other.comoment = centered.T @ centered
        self.merge(other)

    def merge(self, other: "_Moments") -> None:
        if other.count == 0:
            return
        n = self.count + other.count
        delta = other.mean - self.mean
        self.mean = self.mean + delta * (other.count / n)
        self.comoment = self.comoment + other.comoment + np.outer(delta, delta) * (self.count * other.count / n)
        self.count = n


@dataclass(frozen=True)
class McEstimate:
    herald_prob: float
    herald_prob_se: float
    fidelity: float
    fidelity_se: float
    samples: int
    analytic_herald_prob: float | None = None
    analytic_fidelity: float | None = None
    z_herald: float | None = None
    z_fidelity: float | None = None


@dataclass(frozen=True)
class Comparison:
    z_herald: float
    z_fidelity: float
    threshold: float
    passed: bool


def _z(estimate: float, se: float, target: float) -> float:
    diff = estimate - target
    if abs(diff) <= ZERO_SE_TOL:
        return 0.0
    if se == 0.0:
        return math.copysign(math.inf, diff)
    return diff / se


def compare(est: McEstimate, herald_prob: float, fidelity: float, threshold: float = 4.0) -> Comparison:
    """z-scores of ``est`` against reference values; pass if both |z| <= threshold."""
    zh = _z(est.herald_prob, est.herald_prob_se, herald_prob)
    zf = _z(est.fidelity, est.fidelity_se, fidelity)
    return Comparison(zh, zf, threshold, abs(zh) <= threshold and abs(zf) <= threshold)


def _logical_amplitudes(cfg: McConfig, theta: np.ndarray) -> np.ndarray:
    """Decoded amplitudes in modes 0 and 1 for each row of phases, shape (m, 2)."""
    w = encode(cfg.qubit, cfg.n_modes).amps
    q = qft_matrix(cfg.n_modes).mat
    kicked = np.exp(1j * theta) * w
    # (Q^dag psi)_k = sum_j conj(Q[j, k]) psi_j
    return kicked @ q[:, :2].conj()


def _shard(cfg: McConfig, index: int, size: int) -> _Moments:
    rng = rng_stream(cfg.seed, index)
    sums = _Moments()
    L = cfg.qubit.vector
    keep = 1.0 - cfg.eta
    done = 0
    while done < size:
        m = min(cfg.chunk, size - done)
        theta = cfg.distribution.sample(rng, (m, cfg.n_modes))
        d = _logical_amplitudes(cfg, theta)
        t = np.sum(np.abs(d) ** 2, axis=1)  # photon in logical modes, pre-loss
        g = np.abs(d @ L.conj()) ** 2  # |<L|Pi psi>|^2 = t * F
        if cfg.click_sampling:
            u = rng.random(m)
            logical_click = u < keep * t
            no_click = (u >= 1.0 - cfg.eta) & ~logical_click
            fid = np.divide(g, t, out=np.zeros_like(g), where=t > 0)
            x = logical_click.astype(float)
            y = x * fid
            if cfg.mode is HeraldMode.PRESENCE:
                p = x
            else:
                p = x + no_click
        else:
            x, y = keep * t, keep * g
            p = x if cfg.mode is HeraldMode.PRESENCE else cfg.eta + x
        sums.add(p, x, y)
        done += m
    return sums


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("WHERALD_THREADS", "1")))
    except ValueError:
        return 1


def run(cfg: McConfig, lam: float | None = None) -> McEstimate:
    """Simulate ``cfg`` and compare against the closed forms.

    ``lam`` overrides the dephasing parameter used for the analytic reference;
    by default it is ``lambda_of(cfg.distribution)``.
    """
    sizes = cfg.shard_sizes()
    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        parts = list(pool.map(lambda k: _shard(cfg, k, sizes[k]), range(cfg.shards)))
    s = _Moments()
    for part in parts:
        s.merge(part)

    m = s.count
    p_mean, x_mean, y_mean = s.mean
    if x_mean <= 0.0:
        raise DegenerateOutcomeError("no heralded weight in any sample")
    c = s.comoment / max(1, m - 1)
    ratio = y_mean / x_mean
    # delta method: Var(R) ~ Var(y - R x) / (m * E[x]^2)
    resid_var = max(0.0, c[2, 2] - 2.0 * ratio * c[1, 2] + ratio**2 * c[1, 1])
    ratio_se = math.sqrt(resid_var / m) / x_mean
    p_se = math.sqrt(max(0.0, c[0, 0]) / m)

    scale = 1.0 - cfg.eta if cfg.mode is HeraldMode.ABSENCE else 1.0
    fid, fid_se = float(scale * ratio), float(scale * ratio_se)

    if lam is None:
        lam = lambda_of(cfg.distribution).lam
    pa, fa = analytic.heralded_values(lam, cfg.eta, cfg.qubit, cfg.n_modes, cfg.mode)
    return McEstimate(
        herald_prob=float(p_mean),
        herald_prob_se=p_se,
        fidelity=fid,
        fidelity_se=fid_se,
        samples=m,
        analytic_herald_prob=pa,
        analytic_fidelity=fa,
        z_herald=_z(float(p_mean), p_se, pa),
        z_fidelity=_z(fid, fid_se, fa),
    )


def simulate_sample(cfg: McConfig, theta) -> HeraldReport:
    """Reference path for one phase vector using the exact state types."""
    w = apply_phase_kick(encode(cfg.qubit, cfg.n_modes), theta)
    d_out = apply_uniform_loss(decode(w).density(), cfg.eta)
    return herald(d_out, cfg.qubit, cfg.mode)
