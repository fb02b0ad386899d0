"""Nullclines and fixed points of the isolated rep1/rep2 toggle.

The isolated toggle drops the Ind1/Ind2 sequestration and ActC terms:

    d[rep2]/dt = k_prodC * rep(rep1; K_rep1, n_rep1) - k_deg_rep2 * rep2
    d[rep1]/dt = k_prodE * rep(rep2; K_rep2, n_rep2) - k_deg_rep1 * rep1
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from ..core import NeuronParameters


class Stability(str, enum.Enum):
    STABLE_NODE = "StableNode"
    SADDLE = "Saddle"
    UNSTABLE = "Unstable"


@dataclass(frozen=True)
class FixedPoint:
    rep1: float
    rep2: float
    stability: Stability
    eigenvalues: tuple[complex, complex]

    def to_dict(self) -> dict:
        ev = [complex(e) for e in self.eigenvalues]
        return {
            "rep1": self.rep1,
            "rep2": self.rep2,
            "stability": self.stability.value,
            "eigenvalues": [[e.real, e.imag] for e in ev],
        }


def _rep(x, K, n):
    x = np.maximum(np.asarray(x, dtype=float), 0.0)
    return 1.0 / (1.0 + (x / K) ** n)


def _drep(x, K, n):
    """d/dx of K^n/(K^n + x^n)."""
    x = float(x)
    if x <= 0.0:
        return -1.0 / K if n == 1 else 0.0
    h = 1.0 / (1.0 + (x / K) ** n)
    return -n / x * h * (1.0 - h)


def rep2_nullcline(rep1, p: NeuronParameters):
    """rep2 on the d[rep2]/dt = 0 curve as a function of rep1."""
    return p.k_prodC / p.k_deg_rep2 * _rep(rep1, p.K_rep1, p.n_rep1)


def rep1_nullcline(rep2, p: NeuronParameters):
    """rep1 on the d[rep1]/dt = 0 curve as a function of rep2."""
    return p.k_prodE / p.k_deg_rep1 * _rep(rep2, p.K_rep2, p.n_rep2)


def toggle_rhs(rep1, rep2, p: NeuronParameters):
    """(d[rep1]/dt, d[rep2]/dt) of the isolated toggle; broadcasts."""
    r1 = p.k_prodE * _rep(rep2, p.K_rep2, p.n_rep2) - p.k_deg_rep1 * np.asarray(rep1, float)
    r2 = p.k_prodC * _rep(rep1, p.K_rep1, p.n_rep1) - p.k_deg_rep2 * np.asarray(rep2, float)
    return r1, r2


def toggle_jacobian(rep1: float, rep2: float, p: NeuronParameters) -> np.ndarray:
    """Analytic Jacobian in (rep1, rep2) order."""
    return np.array([
        [-p.k_deg_rep1, p.k_prodE * _drep(rep2, p.K_rep2, p.n_rep2)],
        [p.k_prodC * _drep(rep1, p.K_rep1, p.n_rep1), -p.k_deg_rep2],
    ])


def toggle_nullclines(params: NeuronParameters, rep1_grid=None, rep2_grid=None):
    """Sample both nullclines.

    Returns ``(rep1_grid, rep2_of_rep1, rep2_grid, rep1_of_rep2)``. Grids
    default to 401 points spanning 1.05x each species' unrepressed level.
    """
    p = params
    if rep1_grid is None:
        rep1_grid = np.linspace(0.0, 1.05 * p.k_prodE / p.k_deg_rep1, 401)
    if rep2_grid is None:
        rep2_grid = np.linspace(0.0, 1.05 * p.k_prodC / p.k_deg_rep2, 401)
    rep1_grid = np.asarray(rep1_grid, dtype=float)
    rep2_grid = np.asarray(rep2_grid, dtype=float)
    return rep1_grid, rep2_nullcline(rep1_grid, p), rep2_grid, rep1_nullcline(rep2_grid, p)


def classify(J: np.ndarray) -> tuple[Stability, tuple[complex, complex]]:
    ev = np.linalg.eigvals(J)
    ev = tuple(sorted((complex(e) for e in ev), key=lambda z: (z.real, z.imag)))
    det = float(np.linalg.det(J))
    if det < 0:
        return Stability.SADDLE, ev
    if all(e.real < 0 for e in ev):
        return Stability.STABLE_NODE, ev
    return Stability.UNSTABLE, ev


def _bisect(g, a: float, b: float, ga: float) -> float:
    # run to floating-point resolution; always tighter than 1e-10 nM
    for _ in range(200):
        m = 0.5 * (a + b)
        if m <= a or m >= b:
            break
        gm = g(m)
        if gm == 0.0:
            return m
        if (gm < 0) == (ga < 0):
            a, ga = m, gm
        else:
            b = m
    return 0.5 * (a + b)


def toggle_fixed_points(params: NeuronParameters, n_grid: int = 20001) -> list[FixedPoint]:
    """All fixed points of the isolated toggle, ordered by rep1.

    Roots of g(r1) = rep1_nullcline(rep2_nullcline(r1)) - r1 are bracketed
    on a log-dense grid over [0, 1.05 k_prodE/k_deg_rep1] and bisected.
    """
    p = params
    hi = 1.05 * p.k_prodE / p.k_deg_rep1
    grid = np.concatenate([[0.0], np.geomspace(hi * 1e-12, hi, n_grid - 1)])

    def g(r1):
        return float(rep1_nullcline(rep2_nullcline(r1, p), p)) - r1

    gv = rep1_nullcline(rep2_nullcline(grid, p), p) - grid
    roots = []
    for i in range(len(grid) - 1):
        a, b = grid[i], grid[i + 1]
        ga, gb = gv[i], gv[i + 1]
        if ga == 0.0:
            roots.append(a)
        elif ga * gb < 0:
            roots.append(_bisect(g, a, b, ga))
    if gv[-1] == 0.0:
        roots.append(grid[-1])

    out = []
    for r1 in roots:
        r2 = float(rep2_nullcline(r1, p))
        stab, ev = classify(toggle_jacobian(r1, r2, p))
        out.append(FixedPoint(float(r1), r2, stab, ev))
    return out


__all__ = [
    "FixedPoint",
    "Stability",
    "classify",
    "rep1_nullcline",
    "rep2_nullcline",
    "toggle_fixed_points",
    "toggle_jacobian",
    "toggle_nullclines",
    "toggle_rhs",
]
