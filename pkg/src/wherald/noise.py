"""I.i.d. per-mode phase-noise distributions and channel timing.

Every distribution knows its characteristic function at 1, E[exp(i theta)].
The averaged channel depends on the distribution only through
``lambda = |E[exp(i theta)]|^2``.
"""

from __future__ import annotations

import cmath
import math
from abc import ABC, abstractmethod
from dataclasses import asdict, dataclass, fields
from typing import ClassVar

import numpy as np
from scipy.optimize import brentq


def rng_stream(seed: int, index: int = 0) -> np.random.Generator:
    """Independent generator for stream ``index`` under master ``seed``.

    Streams are derived by SeedSequence spawn keys, so stream k is the same
    no matter how many other streams exist or which worker draws from it.
    """
    if seed < 0 or index < 0:
        raise ValueError("seed and stream index must be non-negative")
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(index,))))


class PhaseDistribution(ABC):
    family: ClassVar[str]
    _registry: ClassVar[dict[str, type["PhaseDistribution"]]] = {}

    def __init_subclass__(cls, **kw):
        super().__init_subclass__(**kw)
        if "family" in cls.__dict__:
            PhaseDistribution._registry[cls.family] = cls

    @abstractmethod
    def sample(self, rng: np.random.Generator, size) -> np.ndarray:
        """Draw i.i.d. phases (radians, not wrapped)."""

    @abstractmethod
    def char_at_one(self) -> complex:
        """E[exp(i theta)]."""

    def shifted(self, offset: float) -> "PhaseDistribution":
        """Same distribution with every phase moved by ``offset``."""
        raise NotImplementedError

    def to_dict(self) -> dict:
        return {"family": self.family, **asdict(self)}

    @staticmethod
    def from_dict(d: dict) -> "PhaseDistribution":
        d = dict(d)
        family = d.pop("family", None)
        try:
            cls = PhaseDistribution._registry[family]
        except KeyError:
            known = ", ".join(sorted(PhaseDistribution._registry))
            raise ValueError(f"unknown distribution family {family!r} (known: {known})") from None
        names = {f.name for f in fields(cls)}
        extra = set(d) - names
        if extra:
            raise ValueError(f"unexpected fields for {family}: {sorted(extra)}")
        return cls(**{k: float(v) for k, v in d.items()})


@dataclass(frozen=True)
class Gaussian(PhaseDistribution):
    family: ClassVar[str] = "gaussian"
    mu: float = 0.0
    delta: float = 0.0

    def __post_init__(self):
        if not self.delta >= 0:
            raise ValueError(f"standard deviation must be >= 0, got {self.delta}")

    def sample(self, rng, size):
        return self.mu + self.delta * rng.standard_normal(size)

    def char_at_one(self):
        return cmath.exp(1j * self.mu - 0.5 * self.delta**2)

    def shifted(self, offset):
        return Gaussian(self.mu + offset, self.delta)


@dataclass(frozen=True)
class Uniform(PhaseDistribution):
    family: ClassVar[str] = "uniform"
    center: float = 0.0
    half_width: float = 0.0

    def __post_init__(self):
        if not self.half_width >= 0:
            raise ValueError(f"half width must be >= 0, got {self.half_width}")

    def sample(self, rng, size):
        return self.center + self.half_width * rng.uniform(-1.0, 1.0, size)

    def char_at_one(self):
        # sin(a)/a, with np.sinc handling a = 0
        return cmath.exp(1j * self.center) * float(np.sinc(self.half_width / math.pi))

    def shifted(self, offset):
        return Uniform(self.center + offset, self.half_width)


@dataclass(frozen=True)
class TwoPoint(PhaseDistribution):
    """theta0 with probability p, theta1 otherwise."""

    family: ClassVar[str] = "two_point"
    theta0: float = 0.0
    theta1: float = 0.0
    p: float = 0.5

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"probability must lie in [0, 1], got {self.p}")

    def sample(self, rng, size):
        return np.where(rng.random(size) < self.p, self.theta0, self.theta1)

    def char_at_one(self):
        return self.p * cmath.exp(1j * self.theta0) + (1 - self.p) * cmath.exp(1j * self.theta1)

    def shifted(self, offset):
        return TwoPoint(self.theta0 + offset, self.theta1 + offset, self.p)


@dataclass(frozen=True)
class Degenerate(PhaseDistribution):
    family: ClassVar[str] = "degenerate"
    theta: float = 0.0

    def sample(self, rng, size):
        return np.full(size, self.theta, dtype=float)

    def char_at_one(self):
        return cmath.exp(1j * self.theta)

    def shifted(self, offset):
        return Degenerate(self.theta + offset)


@dataclass(frozen=True)
class DistributionSummary:
    lam: float


def lambda_of(dist: PhaseDistribution) -> DistributionSummary:
    lam = abs(dist.char_at_one()) ** 2
    return DistributionSummary(min(1.0, lam))


def sample_phase_vector(dist: PhaseDistribution, n: int, rng: np.random.Generator) -> np.ndarray:
    if n < 1:
        raise ValueError("need at least one mode")
    return dist.sample(rng, n)


def uniform_matching_lambda(lam: float, center: float = 0.0) -> Uniform:
    """Uniform distribution whose (sin a / a)^2 equals ``lam``, with a in [0, pi]."""
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"lambda {lam!r} outside [0, 1]")
    if lam == 1.0:
        return Uniform(center, 0.0)
    if lam == 0.0:
        return Uniform(center, math.pi)
    target = math.sqrt(lam)
    if np.sinc(1.0) >= target:  # below double resolution near a = pi
        return Uniform(center, math.pi)
    a = brentq(lambda a: np.sinc(a / math.pi) - target, 1e-12, math.pi, xtol=1e-15, rtol=1e-15)
    return Uniform(center, a)


@dataclass(frozen=True)
class ChannelTiming:
    """Propagation time and loss/dephasing characteristic times (same units).

    ``T1 = inf`` means no loss.
    """

    t_p: float
    T1: float
    T2: float

    def __post_init__(self):
        if self.t_p < 0:
            raise ValueError("propagation time must be >= 0")
        if not (self.T1 > 0 and self.T2 > 0):
            raise ValueError("T1 and T2 must be positive")

    @property
    def delta(self) -> float:
        return math.sqrt(self.t_p / self.T2)

    @property
    def eta(self) -> float:
        return -math.expm1(-self.t_p / self.T1)


def timing_to_params(t: ChannelTiming) -> tuple[float, float]:
    """(delta, eta) for Gaussian dephasing with delta^2 = t_p/T2 and loss 1 - exp(-t_p/T1)."""
    return t.delta, t.eta
