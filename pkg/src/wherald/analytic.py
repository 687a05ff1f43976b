"""Closed-form heralding probabilities and post-selected fidelities.

All formulas take the dephasing parameter ``lam`` (= |E[exp(i theta)]|^2), the
uniform loss ``eta`` and the number of modes ``n``.

The overlap <W| Diag(|W><W|) |W> equals (1 + 2|a b|^2)/n for every n >= 3.
At n = 2 the QFT phases satisfy omega^2 = 1 and an extra term
Re((conj(a) b)^2) survives, so the textbook presence fidelity
:func:`f_presence_table` is exact only for n >= 3; :func:`f_herald_presence`
includes the n = 2 term and agrees with the simulator for all n.
"""

from __future__ import annotations

import math

import numpy as np

from .encoding import LogicalQubit
from .noise import ChannelTiming


def _check(lam, eta, n):
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"lambda {lam!r} outside [0, 1]")
    if not 0.0 <= eta <= 1.0:
        raise ValueError(f"eta {eta!r} outside [0, 1]")
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")


def _logical_weight(lam: float, n: int) -> float:
    # tr(Pi_{0,1} rho_out) before loss
    return lam + 2.0 / n * (1.0 - lam)


def p_herald_presence(lam: float, eta: float, n: int) -> float:
    _check(lam, eta, n)
    return (1.0 - eta) * _logical_weight(lam, n)


def p_herald_absence(lam: float, eta: float, n: int) -> float:
    _check(lam, eta, n)
    return eta + (1.0 - eta) * _logical_weight(lam, n)


def diagonal_overlap(q: LogicalQubit, n: int) -> float:
    """<W| Diag(|W><W|) |W> for the encoded state of ``q``."""
    out = (1.0 + 2.0 * q.ab2) / n
    if n == 2:
        out += ((q.alpha.conjugate() * q.beta) ** 2).real
    return out


def f_herald_presence(lam: float, q: LogicalQubit, n: int) -> float:
    _check(lam, 0.0, n)
    return (lam + (1.0 - lam) * diagonal_overlap(q, n)) / _logical_weight(lam, n)


def f_herald_absence(lam: float, eta: float, q: LogicalQubit, n: int) -> float:
    _check(lam, eta, n)
    return (1.0 - eta) * f_herald_presence(lam, q, n)


def f_presence_table(lam: float, q: LogicalQubit, n: int) -> float:
    """(n lam + (1 - lam)(1 + 2|ab|^2)) / ((n - 2) lam + 2); exact for n >= 3 only."""
    _check(lam, 0.0, n)
    return (n * lam + (1.0 - lam) * (1.0 + 2.0 * q.ab2)) / ((n - 2) * lam + 2.0)


def f_herald_presence_bloch(lam: float, theta: float, n: int, phi: float = 0.0) -> float:
    """Presence fidelity for alpha = cos(theta/2), beta = exp(i phi) sin(theta/2)."""
    _check(lam, 0.0, n)
    s2 = math.sin(theta) ** 2
    overlap = (2.0 + s2) / (2.0 * n)
    if n == 2:
        overlap += 0.25 * s2 * math.cos(2.0 * phi)
    return (lam + (1.0 - lam) * overlap) / _logical_weight(lam, n)


def f_herald_absence_bloch(lam: float, eta: float, theta: float, n: int, phi: float = 0.0) -> float:
    _check(lam, eta, n)
    return (1.0 - eta) * f_herald_presence_bloch(lam, theta, n, phi)


def heralded_values(lam: float, eta: float, q: LogicalQubit, n: int, mode) -> tuple[float, float]:
    """(herald probability, post-selected fidelity) for ``mode``."""
    mode = getattr(mode, "value", mode)
    if mode == "presence":
        return p_herald_presence(lam, eta, n), f_herald_presence(lam, q, n)
    if mode == "absence":
        return p_herald_absence(lam, eta, n), f_herald_absence(lam, eta, q, n)
    raise ValueError(f"unknown herald mode {mode!r}")


def curves_vs_t2(t_p, t2, t1, ns, q: LogicalQubit, mode="absence") -> list[dict]:
    """Evaluate P and F over a grid of (t_p, T2, T1, N) with Gaussian dephasing.

    ``t1`` may contain ``math.inf`` for the lossless case.
    """
    rows = []
    for tp in np.atleast_1d(t_p):
        for T2 in np.atleast_1d(t2):
            for T1 in np.atleast_1d(t1):
                timing = ChannelTiming(float(tp), float(T1), float(T2))
                lam = math.exp(-timing.t_p / timing.T2)
                for n in ns:
                    p, f = heralded_values(lam, timing.eta, q, int(n), mode)
                    rows.append(
                        {
                            "t_p": timing.t_p,
                            "T2": timing.T2,
                            "T1": timing.T1,
                            "tp_over_T2": timing.t_p / timing.T2,
                            "n": int(n),
                            "P": p,
                            "F": f,
                        }
                    )
    return rows
