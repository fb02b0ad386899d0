"""Steady-state sweeps: transfer curves and two-input decision boundaries.

Every sample integrates independently from one shared initial state, so
results never depend on sweep order or worker count. By default that state
is the *resting state*: the steady state reached from zero with every swept
axis at its lowest value. Starting from all-zero instead lets the transient
race of the bistable core decide the branch, which imprints hysteresis.
"""

from __future__ import annotations

import io
import multiprocessing
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np
from scipy import ndimage

from .._layout import CHANNELS, SPECIES
from ..core import NetworkSpec, Pin
from ..errors import NonConvergence, SpecificationError, StepFailure
from ..integrator import IntegrationConfig, steady_state
from ..output import fmt

# -- drive axes ---------------------------------------------------------------


def resolve_axis(spec: NetworkSpec, axis: str) -> str:
    """Normalise an axis name.

    Accepted forms: a shared input name (``x``), ``neuron.channel``,
    ``neuron.species`` (the species is pinned) or, for single-neuron specs,
    a bare channel or species name.
    """
    if axis in spec.sources():
        return axis
    if "." not in axis:
        if len(spec.neurons) != 1:
            raise SpecificationError(f"ambiguous axis {axis!r}: name the neuron")
        axis = f"{spec.neurons[0].name}.{axis}"
    neuron, name = axis.split(".", 1)
    spec.neuron_index(neuron)
    if name == "rep3":
        name = "rep1"
    if name not in CHANNELS and name not in SPECIES:
        raise SpecificationError(f"unknown axis {axis!r}")
    if name in CHANNELS and any(w.target == neuron and w.channel == name for w in spec.wires):
        raise SpecificationError(f"axis {axis!r} is driven by a wire")
    return f"{neuron}.{name}"


def set_axis(spec: NetworkSpec, axis: str, value: float) -> NetworkSpec:
    """Return ``spec`` with a resolved axis held at ``value``."""
    if axis in spec.sources():
        return spec.with_source(axis, value)
    neuron, name = axis.split(".", 1)
    if name in CHANNELS:
        return spec.with_inputs({(neuron, name): value})
    return spec.with_pins([Pin(neuron, name, value)])


def set_axes(spec: NetworkSpec, axes: Sequence[str], values: Sequence[float]) -> NetworkSpec:
    for a, v in zip(axes, values):
        spec = set_axis(spec, a, v)
    return spec


def solve(spec: NetworkSpec, x0=None, cfg: IntegrationConfig | None = None):
    """Steady state plus a convergence flag; never raises on NonConvergence."""
    try:
        return steady_state(spec, x0, cfg), True
    except NonConvergence as exc:
        return np.asarray(exc.state, dtype=float), False
    except StepFailure:
        return np.full(spec.dim, np.nan), False


def resting_state(spec: NetworkSpec, axes: Iterable[str] = (), low: float = 0.0,
                  cfg: IntegrationConfig | None = None) -> np.ndarray:
    """Steady state from zero with the given axes held at ``low``."""
    axes = [resolve_axis(spec, a) for a in axes]
    return steady_state(set_axes(spec, axes, [low] * len(axes)), None, cfg)


def initial_state(spec, axes, initial, low, cfg):
    if isinstance(initial, str):
        if initial == "rest":
            return resting_state(spec, axes, low, cfg)
        if initial == "zero":
            return None
        raise ValueError(f"initial must be 'rest', 'zero' or a state vector, got {initial!r}")
    return np.asarray(initial, dtype=float)


# -- work pool ----------------------------------------------------------------


def _solve_points(task):
    spec, axes, points, x0, cfg = task
    return [solve(set_axes(spec, axes, pt), None if x0 is None else x0.copy(), cfg)
            for pt in points]


def solve_points(spec: NetworkSpec, axes: Sequence[str], points: Sequence[Sequence[float]],
                 x0=None, cfg: IntegrationConfig | None = None, workers: int = 1,
                 chunk: int = 64) -> list[tuple[np.ndarray, bool]]:
    """Steady states at each point, returned in input order."""
    points = [tuple(float(v) for v in p) for p in points]
    tasks = [(spec, tuple(axes), points[i:i + chunk], x0, cfg)
             for i in range(0, len(points), chunk)]
    if workers <= 1 or len(tasks) <= 1:
        parts = map(_solve_points, tasks)
        return [r for part in parts for r in part]
    ctx = multiprocessing.get_context("fork")
    with ProcessPoolExecutor(max_workers=workers, mp_context=ctx) as pool:
        return [r for part in pool.map(_solve_points, tasks) for r in part]


# -- transfer curves ----------------------------------------------------------


@dataclass(frozen=True)
class TransferCurve:
    drive: str
    IndT: float
    x: np.ndarray
    out: np.ndarray
    converged: np.ndarray
    threshold: float | None
    slope_at_threshold: float | None
    level: float

    @property
    def max_slope(self) -> float:
        return float(np.max(np.diff(self.out) / np.diff(self.x)))

    def summary(self) -> dict:
        return {
            "drive": self.drive,
            "IndT": self.IndT,
            "threshold": self.threshold,
            "slope_at_threshold": self.slope_at_threshold,
            "max_slope": self.max_slope,
            "level": self.level,
            "all_converged": bool(self.converged.all()),
        }


def transfer_csv(curves: Sequence[TransferCurve]) -> str:
    buf = io.StringIO()
    buf.write("IndT,drive,out,converged\n")
    for c in curves:
        for x, y, ok in zip(c.x, c.out, c.converged):
            buf.write(f"{fmt(c.IndT)},{fmt(x)},{fmt(y)},{int(ok)}\n")
    return buf.getvalue()


def _refine_crossing(f: Callable[[float], float], a: float, b: float, level: float,
                     tol: float) -> float:
    """Bisection for the ascending crossing of ``level`` in (a, b]."""
    while b - a > tol:
        m = 0.5 * (a + b)
        if f(m) >= level:
            b = m
        else:
            a = m
    return 0.5 * (a + b)


def transfer_function(spec: NetworkSpec, drive: str, values: Sequence[float],
                      IndT_values: Sequence[float], *, neuron: str | None = None,
                      output: str | None = None, level: float | None = None,
                      cfg: IntegrationConfig | None = None, workers: int = 1,
                      initial="rest", refine_tol: float | None = None) -> list[TransferCurve]:
    """Steady-state out versus an ascending drive, one curve per IndT value.

    ``drive`` is an axis name (see :func:`resolve_axis`), e.g. ``IPTG`` or
    ``Ind1`` for a pinned-inducer sweep. ``level`` defaults to half of the
    output neuron's saturation k_prod_out/k_deg_out. The threshold is the
    first ascending crossing of ``level``, bisected to ``refine_tol``
    (default 1e-4 of the drive range); the slope at threshold is a central
    difference over one sample spacing.
    """
    neuron = neuron or spec.neurons[0].name
    output = output or neuron
    drive = resolve_axis(spec, drive)
    xs = np.sort(np.asarray(values, dtype=float))
    if xs.size < 2:
        raise ValueError("need at least two drive values")
    p_out = spec.params_of(output)
    level = 0.5 * p_out.k_prod_out / p_out.k_deg_out if level is None else float(level)
    refine_tol = 1e-4 * (xs[-1] - xs[0]) if refine_tol is None else refine_tol
    i_out = spec.index(output, "out")
    dx = float(np.median(np.diff(xs)))

    curves = []
    for indt in IndT_values:
        s = spec.with_inputs({(neuron, "IndT"): float(indt)})
        x0 = initial_state(s, [drive], initial, float(xs[0]), cfg)
        res = solve_points(s, [drive], [(v,) for v in xs], x0, cfg, workers)
        out = np.array([r[0][i_out] for r in res])
        ok = np.array([r[1] for r in res])

        def f(v, s=s, x0=x0):
            return solve(set_axis(s, drive, v), None if x0 is None else x0.copy(), cfg)[0][i_out]

        above = np.flatnonzero(out >= level)
        threshold = slope = None
        if above.size and above[0] > 0:
            k = above[0]
            threshold = _refine_crossing(f, xs[k - 1], xs[k], level, refine_tol)
            lo = max(threshold - dx / 2, 0.0)
            slope = (f(lo + dx) - f(lo)) / dx
        curves.append(TransferCurve(drive, float(indt), xs, out, ok, threshold, slope, level))
    return curves


# -- decision boundaries ------------------------------------------------------


@dataclass(frozen=True)
class LineFit:
    """Orthogonal (total least squares) line a*x + b*y = c with a^2 + b^2 = 1."""

    a: float
    b: float
    c: float
    r2: float
    n_points: int

    def to_dict(self) -> dict:
        return {"a": self.a, "b": self.b, "c": self.c, "r2": self.r2, "n_points": self.n_points}


def fit_line(points: np.ndarray) -> LineFit | None:
    """Total least squares fit. R^2 = 1 - (perpendicular SS)/(total SS)."""
    pts = np.asarray(points, dtype=float)
    if len(pts) < 2:
        return None
    mu = pts.mean(axis=0)
    cov = (pts - mu).T @ (pts - mu)
    w, v = np.linalg.eigh(cov)
    total = float(w.sum())
    if total <= 0:
        return None
    a, b = v[:, 0]
    # canonical sign so refits are reproducible
    if a < 0 or (a == 0 and b < 0):
        a, b = -a, -b
    return LineFit(float(a), float(b), float(a * mu[0] + b * mu[1]),
                   1.0 - float(w[0]) / total, len(pts))


def boundary_points(x: np.ndarray, y: np.ndarray, classes: np.ndarray,
                    valid: np.ndarray | None = None) -> np.ndarray:
    """Midpoints of grid edges whose two end cells carry different classes."""
    valid = np.ones(classes.shape, bool) if valid is None else valid
    pts = []
    dh = (classes[1:, :] != classes[:-1, :]) & valid[1:, :] & valid[:-1, :]
    for i, j in zip(*np.nonzero(dh)):
        pts.append((0.5 * (x[i] + x[i + 1]), y[j]))
    dv = (classes[:, 1:] != classes[:, :-1]) & valid[:, 1:] & valid[:, :-1]
    for i, j in zip(*np.nonzero(dv)):
        pts.append((x[i], 0.5 * (y[j] + y[j + 1])))
    return np.array(pts, dtype=float).reshape(-1, 2)


def boundary_cells(classes: np.ndarray) -> np.ndarray:
    """Cells with a 4-neighbour of the other class."""
    m = np.zeros(classes.shape, bool)
    dh = classes[1:, :] != classes[:-1, :]
    dv = classes[:, 1:] != classes[:, :-1]
    m[1:, :] |= dh
    m[:-1, :] |= dh
    m[:, 1:] |= dv
    m[:, :-1] |= dv
    return m


def distance_from(mask: np.ndarray) -> np.ndarray:
    """Chessboard distance (in cells) to the nearest True cell; inf if none."""
    if not mask.any():
        return np.full(mask.shape, np.inf)
    return ndimage.distance_transform_cdt(~mask, metric="chessboard").astype(float)


@dataclass(frozen=True)
class SweepResult:
    axis1: str
    axis2: str
    x: np.ndarray
    y: np.ndarray
    states: np.ndarray  # (len(x), len(y), dim)
    converged: np.ndarray
    threshold: float
    output: str
    labels: tuple[str, ...]
    fit: LineFit | None = field(default=None)

    def species(self, label: str) -> np.ndarray:
        return self.states[:, :, self.labels.index(label)]

    @property
    def out(self) -> np.ndarray:
        return self.species(f"{self.output}.out")

    def classes_of(self, neuron: str, threshold: float | None = None) -> np.ndarray:
        t = self.threshold if threshold is None else threshold
        return self.species(f"{neuron}.out") >= t

    @property
    def classes(self) -> np.ndarray:
        return self.out >= self.threshold

    def boundary(self) -> np.ndarray:
        return boundary_points(self.x, self.y, self.classes, self.converged)

    def separation_ratio(self, min_distance: int = 2) -> float | None:
        """min(high out) / max(low out) over cells more than ``min_distance``
        cells from the boundary; None if either class is absent there."""
        far = (distance_from(boundary_cells(self.classes)) > min_distance) & self.converged
        hi = self.out[far & self.classes]
        lo = self.out[far & ~self.classes]
        if hi.size == 0 or lo.size == 0:
            return None
        return float(hi.min() / max(lo.max(), np.finfo(float).tiny))

    def to_csv(self) -> str:
        """``input1,input2,out,class``; class is -1 for unconverged cells."""
        buf = io.StringIO()
        buf.write("input1,input2,out,class\n")
        out, cls = self.out, self.classes
        for i, xv in enumerate(self.x):
            for j, yv in enumerate(self.y):
                c = int(cls[i, j]) if self.converged[i, j] else -1
                buf.write(f"{fmt(xv)},{fmt(yv)},{fmt(out[i, j])},{c}\n")
        return buf.getvalue()

    def summary(self) -> dict:
        bad = np.argwhere(~self.converged)
        return {
            "axis1": self.axis1,
            "axis2": self.axis2,
            "output": self.output,
            "threshold": self.threshold,
            "shape": list(self.out.shape),
            "high_cells": int(self.classes[self.converged].sum()),
            "unconverged": [[float(self.x[i]), float(self.y[j])] for i, j in bad],
            "fit": None if self.fit is None else self.fit.to_dict(),
            "separation_ratio": self.separation_ratio(),
        }


def decision_boundary(spec: NetworkSpec, axis1: str, axis2: str, values1: Sequence[float],
                      values2: Sequence[float] | None = None, *, output: str | None = None,
                      threshold: float | None = None, cfg: IntegrationConfig | None = None,
                      workers: int = 1, initial="rest", fit: bool | None = None) -> SweepResult:
    """Classify the steady-state out of ``output`` over an axis1 x axis2 grid.

    ``output`` defaults to the last neuron in evaluation order. ``threshold``
    defaults to half the output neuron's saturation. A line is fitted to the
    boundary for single-neuron specs (or whenever ``fit=True``).
    """
    values2 = values1 if values2 is None else values2
    x = np.asarray(values1, dtype=float)
    y = np.asarray(values2, dtype=float)
    if x.size < 8 or y.size < 8:
        raise SpecificationError("decision boundary needs at least 8 points per axis")
    a1, a2 = resolve_axis(spec, axis1), resolve_axis(spec, axis2)
    output = output or spec.neurons[-1].name
    p_out = spec.params_of(output)
    threshold = 0.5 * p_out.k_prod_out / p_out.k_deg_out if threshold is None else float(threshold)

    x0 = initial_state(spec, [a1, a2], initial, float(min(x.min(), y.min())), cfg)
    pts = [(xv, yv) for xv in x for yv in y]
    res = solve_points(spec, [a1, a2], pts, x0, cfg, workers)
    states = np.array([r[0] for r in res]).reshape(x.size, y.size, spec.dim)
    ok = np.array([r[1] for r in res]).reshape(x.size, y.size)
    result = SweepResult(a1, a2, x, y, states, ok, threshold, output, tuple(spec.labels()))
    if fit is None:
        fit = len(spec.neurons) == 1
    if fit:
        result = SweepResult(a1, a2, x, y, states, ok, threshold, output,
                             tuple(spec.labels()), fit_line(result.boundary()))
    return result


__all__ = [
    "LineFit",
    "SweepResult",
    "TransferCurve",
    "boundary_cells",
    "boundary_points",
    "decision_boundary",
    "distance_from",
    "fit_line",
    "initial_state",
    "resolve_axis",
    "resting_state",
    "set_axes",
    "set_axis",
    "solve",
    "solve_points",
    "transfer_csv",
    "transfer_function",
]
