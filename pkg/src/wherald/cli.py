"""Command-line front end: ``wherald <command> ...``.

Exit codes: 0 success, 1 config or I/O error, 2 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from scipy.stats import unitary_group

from . import plot, robustness, sweep
from .encoding import LogicalQubit, decode, encode, encoded_gate, pure_from_logical
from .fock import apply_unitary
from .noise import rng_stream

EXIT_OK, EXIT_CONFIG, EXIT_VERIFY = 0, 1, 2


def _load_json(path) -> dict:
    if path is None:
        return {}
    try:
        with open(path) as f:
            return json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise sweep.ConfigError(f"cannot read config {path}: {e}") from e


def _emit(text: str, out) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        try:
            Path(out).write_text(text)
        except OSError as e:
            raise sweep.ConfigError(f"cannot write {out}: {e}") from e


def _sweep_config(args, mode: str) -> sweep.SweepConfig:
    if args.config is None:
        raise sweep.ConfigError("--config is required")
    raw = _load_json(args.config)
    if raw.get("mode", "analytic") not in sweep.MODES:
        raise sweep.ConfigError(f"mode must be one of {sweep.MODES}, got {raw['mode']!r}")
    if mode == "montecarlo":
        raw["mode"] = "both" if raw.get("mode") == "both" else "montecarlo"
        mc = dict(raw.get("montecarlo", {}))
        if args.seed is not None:
            mc["seed"] = args.seed
        if args.threshold is not None:
            mc["threshold"] = args.threshold
        raw["montecarlo"] = mc
    else:
        raw["mode"] = "analytic"
    return sweep.SweepConfig.from_dict(raw)


def cmd_analytic(args) -> int:
    cfg = _sweep_config(args, "analytic")
    records = sweep.evaluate(cfg)
    _emit(sweep.to_csv(records, cfg.mode), args.out or cfg.output)
    return EXIT_OK


def cmd_montecarlo(args) -> int:
    cfg = _sweep_config(args, "montecarlo")
    records = sweep.evaluate(cfg)
    _emit(sweep.to_csv(records, cfg.mode), args.out or cfg.output)
    bad = sweep.failures(records, cfg.mc.threshold)
    for r in bad:
        print(f"FAIL n={r.n} lam={r.lam:.6g} eta={r.eta:.6g} {r.herald}: z_P={r.z_P:.3g} z_F={r.z_F:.3g}", file=sys.stderr)
    return EXIT_VERIFY if bad else EXIT_OK


def gate_check(ns, trials: int, seed: int) -> list[tuple[int, float]]:
    """Largest |1 - F| between encoded and direct gate action, per mode count."""
    rng = rng_stream(seed)
    out = []
    for n in ns:
        worst = 0.0
        for _ in range(trials):
            u = unitary_group.rvs(2, random_state=rng)
            q = LogicalQubit.random(rng)
            got = decode(apply_unitary(encoded_gate(u, n), encode(q, n)))
            want = u @ q.vector
            direct = pure_from_logical(LogicalQubit(want[0], want[1]), n)
            worst = max(worst, abs(1.0 - abs(direct.overlap(got)) ** 2))
        out.append((n, worst))
    return out


def cmd_gate_check(args) -> int:
    raw = _load_json(args.config)
    ns = args.n or raw.get("n", [4, 16])
    trials = args.trials or raw.get("trials", 100)
    seed = args.seed if args.seed is not None else raw.get("seed", 0)
    tol = raw.get("tol", 1e-10)
    ok = True
    for n, worst in gate_check(ns, trials, seed):
        passed = worst <= tol
        ok &= passed
        print(f"{'PASS' if passed else 'FAIL'} encoded gate n={n} trials={trials} max|1-F|={worst:.3e}")
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_robustness(args) -> int:
    raw = _load_json(args.config)
    n_max = args.n_max or raw.get("n_max", 8)
    ok = True
    for name, passed, err in robustness.check_identities(n_max):
        ok &= passed
        print(f"{'PASS' if passed else 'FAIL'} {name} max_err={err:.3e}")
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_plot(args) -> int:
    raw = _load_json(args.config)
    csv_path = args.csv or raw.get("csv")
    x = args.x or raw.get("x")
    y = args.y or raw.get("y")
    if not (csv_path and x and y):
        raise sweep.ConfigError("plot needs a csv path, an x column and a y column")
    series = args.series or raw.get("series")
    where = dict(raw.get("where", {}))
    for w in args.where or []:
        k, _, v = w.partition("=")
        where[k] = v
    try:
        groups = plot.load_series(csv_path, x, y, series, where)
        svg = plot.render_svg(groups, x, y, raw.get("title", ""))
    except (OSError, KeyError, ValueError) as e:
        raise sweep.ConfigError(str(e)) from e
    _emit(svg, args.out or raw.get("out"))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="wherald", description="W-state heralding simulator")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--config", help="JSON config file")
        sp.add_argument("--out", help="output path (default: stdout)")
        sp.add_argument("--seed", type=int)
        sp.add_argument("--threshold", type=float, help="z-score threshold (sigma)")
        return sp

    common(sub.add_parser("analytic", help="closed-form sweep to CSV")).set_defaults(func=cmd_analytic)
    common(sub.add_parser("montecarlo", help="Monte Carlo sweep to CSV with z-scores")).set_defaults(func=cmd_montecarlo)
    g = common(sub.add_parser("gate-check", help="encoded single-qubit gate round trip"))
    g.add_argument("--n", type=int, nargs="+")
    g.add_argument("--trials", type=int)
    g.set_defaults(func=cmd_gate_check)
    r = common(sub.add_parser("robustness", help="GHZ/W partial-trace identities"))
    r.add_argument("--n-max", type=int)
    r.set_defaults(func=cmd_robustness)
    pl = common(sub.add_parser("plot", help="render a CSV column as an SVG line chart"))
    pl.add_argument("--csv")
    pl.add_argument("--x")
    pl.add_argument("--y")
    pl.add_argument("--series")
    pl.add_argument("--where", action="append", help="column=value row filter (repeatable)")
    pl.set_defaults(func=cmd_plot)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except sweep.ConfigError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
