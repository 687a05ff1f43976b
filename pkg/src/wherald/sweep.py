"""Parameter sweeps: JSON config, grid evaluation and CSV records."""

from __future__ import annotations

import csv
import io
import itertools
import json
import math
from dataclasses import dataclass, field, fields
from pathlib import Path

import numpy as np

from . import analytic, montecarlo
from .encoding import LogicalQubit
from .herald import DegenerateOutcomeError, HeraldMode
from .noise import Gaussian, PhaseDistribution, lambda_of, uniform_matching_lambda

NOISE_AXES = ("delta", "lambda", "T2")
LOSS_AXES = ("eta", "T1")
MODES = ("analytic", "montecarlo", "both")


class ConfigError(ValueError):
    pass


def _axis_values(name, spec) -> list[float]:
    if isinstance(spec, dict):
        try:
            vals = np.linspace(float(spec["start"]), float(spec["stop"]), int(spec["num"]))
        except (KeyError, TypeError, ValueError) as e:
            raise ConfigError(f"axis {name!r}: range needs start, stop, num") from e
        vals = vals.tolist()
    elif isinstance(spec, (list, tuple)):
        vals = [float(v) for v in spec]
    else:
        vals = [float(spec)]
    if not vals:
        raise ConfigError(f"axis {name!r} is empty")
    for v in vals:
        if math.isnan(v) or (math.isinf(v) and name != "T1"):
            raise ConfigError(f"axis {name!r} has non-finite value {v}")
    return vals


def _parse_complex(v) -> complex:
    if isinstance(v, (list, tuple)):
        re, im = v
        return complex(float(re), float(im))
    return complex(float(v))


def parse_qubit(d: dict) -> LogicalQubit:
    if "theta" in d:
        return LogicalQubit.from_bloch(float(d["theta"]), float(d.get("phi", 0.0)))
    if "alpha" in d and "beta" in d:
        return LogicalQubit(_parse_complex(d["alpha"]), _parse_complex(d["beta"]))
    raise ConfigError(f"qubit needs theta[/phi] or alpha/beta: {d}")


@dataclass
class McSettings:
    samples: int = 100_000
    seed: int = 0
    shards: int = 1
    threshold: float = 4.0
    click_sampling: bool = False


@dataclass
class SweepConfig:
    axes: dict[str, list[float]]
    qubits: list[LogicalQubit]
    herald: list[HeraldMode]
    mode: str = "analytic"
    distribution: PhaseDistribution | None = None
    mc: McSettings = field(default_factory=McSettings)
    output: str | None = None

    @classmethod
    def from_dict(cls, d: dict) -> "SweepConfig":
        d = dict(d)
        mode = d.get("mode", "analytic")
        if mode not in MODES:
            raise ConfigError(f"mode must be one of {MODES}, got {mode!r}")
        raw_axes = d.get("axes") or {}
        if not raw_axes:
            raise ConfigError("config has no axes")
        known = {"n", "t_p", *NOISE_AXES, *LOSS_AXES}
        unknown = set(raw_axes) - known
        if unknown:
            raise ConfigError(f"unknown axes {sorted(unknown)}; known: {sorted(known)}")
        axes = {k: _axis_values(k, v) for k, v in raw_axes.items()}
        if "n" not in axes:
            raise ConfigError("axis 'n' is required")
        if any(n < 2 or n != int(n) for n in axes["n"]):
            raise ConfigError("mode counts must be integers >= 2")
        noise = [k for k in NOISE_AXES if k in axes]
        loss = [k for k in LOSS_AXES if k in axes]
        if len(noise) > 1 or len(loss) > 1:
            raise ConfigError("at most one noise axis and one loss axis")
        dist = d.get("distribution")
        if dist is not None:
            try:
                dist = PhaseDistribution.from_dict(dist)
            except (TypeError, ValueError) as e:
                raise ConfigError(str(e)) from e
        if not noise and dist is None:
            raise ConfigError("give a noise axis (delta, lambda, T2) or a distribution")
        if noise and dist is not None:
            raise ConfigError("give either a noise axis or a distribution, not both")
        if ("T2" in axes or "T1" in axes) and "t_p" not in axes:
            axes["t_p"] = [1.0]
        qubits = [parse_qubit(q) for q in d.get("qubits", [{"theta": math.pi / 2}])]
        if not qubits:
            raise ConfigError("qubit list is empty")
        herald = d.get("herald", ["absence"])
        if isinstance(herald, str):
            herald = [herald]
        try:
            herald = [HeraldMode(h) for h in herald]
        except ValueError as e:
            raise ConfigError(str(e)) from e
        mc = McSettings(**d.get("montecarlo", {}))
        if mc.samples < 1 or mc.shards < 1 or mc.seed < 0:
            raise ConfigError("montecarlo samples/shards must be >= 1 and seed >= 0")
        return cls(axes, qubits, herald, mode, dist, mc, d.get("output"))

    @classmethod
    def load(cls, path) -> "SweepConfig":
        try:
            with open(path) as f:
                return cls.from_dict(json.load(f))
        except OSError as e:
            raise ConfigError(f"cannot read config {path}: {e}") from e
        except json.JSONDecodeError as e:
            raise ConfigError(f"config {path} is not valid JSON: {e}") from e


@dataclass
class SweepRecord:
    herald: str
    n: int
    t_p: float | None
    T2: float | None
    T1: float | None
    delta: float | None
    lam: float
    eta: float
    theta: float
    phi: float
    P_analytic: float | None = None
    F_analytic: float | None = None
    P_mc: float | None = None
    P_mc_se: float | None = None
    F_mc: float | None = None
    F_mc_se: float | None = None
    z_P: float | None = None
    z_F: float | None = None
    samples: int | None = None
    status: str = "ok"

    @classmethod
    def columns(cls, mode: str) -> list[str]:
        cols = [f.name for f in fields(cls)]
        drop = set()
        if mode == "analytic":
            drop = {"P_mc", "P_mc_se", "F_mc", "F_mc_se", "z_P", "z_F", "samples"}
        elif mode == "montecarlo":
            drop = {"P_analytic", "F_analytic"}
        return [c for c in cols if c not in drop]

    def to_row(self, columns) -> list[str]:
        return [_fmt(getattr(self, c)) for c in columns]

    @classmethod
    def from_row(cls, row: dict) -> "SweepRecord":
        kw = {}
        for f in fields(cls):
            if f.name not in row:
                continue
            v = row[f.name]
            if f.name in ("herald", "status"):
                kw[f.name] = v
            elif v == "":
                kw[f.name] = None
            elif f.name in ("n", "samples"):
                kw[f.name] = int(v)
            else:
                kw[f.name] = float(v)
        return cls(**kw)


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(float(v))
    return str(v)


def _grid(cfg: SweepConfig):
    names = list(cfg.axes)
    for combo in itertools.product(*(cfg.axes[k] for k in names)):
        yield dict(zip(names, combo))


def _point_params(cfg: SweepConfig, point: dict) -> tuple[float, float, PhaseDistribution | None, float | None]:
    """(lambda, eta, distribution for MC, delta) at one grid point."""
    t_p = point.get("t_p")
    delta = None
    if "delta" in point:
        delta = point["delta"]
        dist = Gaussian(0.0, delta)
        lam = math.exp(-delta * delta)
    elif "T2" in point:
        delta = math.sqrt(t_p / point["T2"])
        dist = Gaussian(0.0, delta)
        lam = math.exp(-t_p / point["T2"])
    elif "lambda" in point:
        lam = point["lambda"]
        dist = uniform_matching_lambda(lam)
    else:
        dist = cfg.distribution
        lam = lambda_of(dist).lam
        if isinstance(dist, Gaussian):
            delta = dist.delta
    if "eta" in point:
        eta = point["eta"]
    elif "T1" in point:
        eta = -math.expm1(-t_p / point["T1"])
    else:
        eta = 0.0
    if not 0.0 <= eta <= 1.0:
        raise ConfigError(f"loss {eta} outside [0, 1]")
    if not 0.0 <= lam <= 1.0:
        raise ConfigError(f"lambda {lam} outside [0, 1]")
    return lam, eta, dist, delta


def evaluate(cfg: SweepConfig) -> list[SweepRecord]:
    records = []
    for point in _grid(cfg):
        lam, eta, dist, delta = _point_params(cfg, point)
        n = int(point["n"])
        for mode in cfg.herald:
            for q in cfg.qubits:
                theta, phi = q.to_bloch()
                rec = SweepRecord(
                    herald=mode.value,
                    n=n,
                    t_p=point.get("t_p"),
                    T2=point.get("T2"),
                    T1=point.get("T1"),
                    delta=delta,
                    lam=lam,
                    eta=eta,
                    theta=theta,
                    phi=phi,
                )
                if mode is HeraldMode.PRESENCE and eta == 1.0:
                    rec.status = "degenerate"
                    if cfg.mode != "montecarlo":
                        rec.P_analytic = 0.0
                    records.append(rec)
                    continue
                if cfg.mode in ("analytic", "both"):
                    rec.P_analytic, rec.F_analytic = analytic.heralded_values(lam, eta, q, n, mode)
                if cfg.mode in ("montecarlo", "both"):
                    mc = montecarlo.McConfig(
                        n_modes=n,
                        qubit=q,
                        distribution=dist,
                        eta=eta,
                        mode=mode,
                        samples=cfg.mc.samples,
                        seed=cfg.mc.seed,
                        shards=cfg.mc.shards,
                        click_sampling=cfg.mc.click_sampling,
                    )
                    try:
                        est = montecarlo.run(mc, lam=lam)
                    except DegenerateOutcomeError:
                        rec.status = "degenerate"
                    else:
                        rec.P_mc, rec.P_mc_se = est.herald_prob, est.herald_prob_se
                        rec.F_mc, rec.F_mc_se = est.fidelity, est.fidelity_se
                        rec.z_P, rec.z_F = est.z_herald, est.z_fidelity
                        rec.samples = est.samples
                records.append(rec)
    return records


def failures(records: list[SweepRecord], threshold: float) -> list[SweepRecord]:
    return [r for r in records if r.z_P is not None and (abs(r.z_P) > threshold or abs(r.z_F) > threshold)]


def to_csv(records: list[SweepRecord], mode: str) -> str:
    cols = SweepRecord.columns(mode)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(cols)
    for r in records:
        w.writerow(r.to_row(cols))
    return buf.getvalue()


def write_csv(records: list[SweepRecord], mode: str, path) -> None:
    Path(path).write_text(to_csv(records, mode))


def read_csv(path) -> list[SweepRecord]:
    with open(path, newline="") as f:
        return [SweepRecord.from_row(row) for row in csv.DictReader(f)]
