"""Transient glitch detection on simulated trajectories."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from ..core import SpeciesId
from ..integrator import Trajectory


@dataclass(frozen=True)
class Glitch:
    """Output crossed the threshold at ``t_cross`` and came back at ``t_back``."""

    t_cross: float
    t_back: float
    direction: str  # "up" (spurious high) or "down" (spurious low)
    peak_excursion: float

    def to_dict(self) -> dict:
        return {"t_cross": self.t_cross, "t_back": self.t_back,
                "direction": self.direction, "peak_excursion": self.peak_excursion}


@dataclass(frozen=True)
class Overshoot:
    """Non-monotone transient of an internal species."""

    species: str
    kind: str  # "rise-then-fall" or "fall-then-rise"
    t_extremum: float
    extremum: float
    initial: float
    final: float

    @property
    def excursion(self) -> float:
        return abs(self.extremum - self.final)

    def to_dict(self) -> dict:
        return {"species": self.species, "kind": self.kind, "t_extremum": self.t_extremum,
                "extremum": self.extremum, "initial": self.initial, "final": self.final,
                "excursion": self.excursion}


@dataclass(frozen=True)
class HazardReport:
    output: str
    threshold: float
    settle_time: float
    glitches: tuple[Glitch, ...] = field(default_factory=tuple)
    overshoots: tuple[Overshoot, ...] = field(default_factory=tuple)

    @property
    def has_glitch(self) -> bool:
        return bool(self.glitches)

    def overshoot_of(self, species: str) -> Overshoot | None:
        return next((o for o in self.overshoots if o.species == species), None)

    def to_dict(self) -> dict:
        return {
            "output": self.output,
            "threshold": self.threshold,
            "settle_time": self.settle_time,
            "glitches": [g.to_dict() for g in self.glitches],
            "overshoots": [o.to_dict() for o in self.overshoots],
        }


def _label(traj: Trajectory, species) -> str:
    if isinstance(species, SpeciesId):
        return traj.labels[species.offset()]
    return species


def find_glitches(t: np.ndarray, y: np.ndarray, threshold: float, t_cut: float) -> list[Glitch]:
    """Threshold crossings starting before ``t_cut`` that are later undone."""
    high = y >= threshold
    flips = np.flatnonzero(high[1:] != high[:-1]) + 1
    out = []
    for k in range(len(flips) - 1):
        i, j = flips[k], flips[k + 1]
        if t[i] >= t_cut:
            break
        seg = y[i:j]
        up = bool(high[i])
        peak = float(seg.max() - threshold) if up else float(threshold - seg.min())
        out.append(Glitch(float(t[i]), float(t[j]), "up" if up else "down", peak))
    return out


def find_overshoot(label: str, t: np.ndarray, y: np.ndarray, rel_tol: float = 0.01,
                   abs_tol: float = 1e-6) -> Overshoot | None:
    """Interior extremum exceeding both endpoints by more than the tolerance."""
    y0, y1 = float(y[0]), float(y[-1])
    k = int(np.argmax(y))
    tol = abs_tol + rel_tol * max(abs(float(y[k])), abs(y0), abs(y1))
    if y[k] - max(y0, y1) > tol:
        return Overshoot(label, "rise-then-fall", float(t[k]), float(y[k]), y0, y1)
    k = int(np.argmin(y))
    tol = abs_tol + rel_tol * max(abs(float(y[k])), abs(y0), abs(y1))
    if min(y0, y1) - y[k] > tol:
        return Overshoot(label, "fall-then-rise", float(t[k]), float(y[k]), y0, y1)
    return None


def detect_hazards(traj: Trajectory, output, class_threshold: float = 10.0,
                   settle_time: float | None = None, watch: Sequence[str] | None = None,
                   resolution: float = 1.0, rel_tol: float = 0.01) -> HazardReport | None:
    """Scan a trajectory for output glitches and internal overshoots.

    ``output`` is a label (``n3.out``) or a :class:`SpeciesId`. Crossings
    starting in the last ``settle_time`` seconds (default 10% of the run)
    are treated as settling, not glitches. ``watch`` lists internal species
    checked for non-monotone transients (default: every ``rep2``). The
    trajectory is resampled at ``resolution`` seconds. Returns None when
    nothing is found.
    """
    label = _label(traj, output)
    t_end = traj.t_final
    settle = 0.1 * t_end if settle_time is None else float(settle_time)
    if watch is None:
        watch = [lab for lab in traj.labels if lab.endswith(".rep2")]
    grid, rows = traj.resample(resolution)
    # keep the accepted-step samples too so narrow spikes are not lost
    t = np.union1d(grid, traj.t)
    rows = traj.at(t)

    y = rows[:, traj.labels.index(label)]
    glitches = find_glitches(t, y, class_threshold, t_end - settle)
    overs = []
    for lab in watch:
        o = find_overshoot(lab, t, rows[:, traj.labels.index(lab)], rel_tol)
        if o is not None:
            overs.append(o)
    if not glitches and not overs:
        return None
    return HazardReport(label, float(class_threshold), settle, tuple(glitches), tuple(overs))


__all__ = ["Glitch", "HazardReport", "Overshoot", "detect_hazards", "find_glitches",
           "find_overshoot"]
