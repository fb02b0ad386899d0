"""Adaptive Dormand-Prince 5(4) integration with event restarts and
steady-state detection."""

from __future__ import annotations

import enum
import io
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import _kernels
from .core import NetworkSpec, network_rhs
from .errors import NonConvergence, StepFailure
from .output import fmt


class Termination(str, enum.Enum):
    REACHED_T_END = "ReachedTEnd"
    STEADY_STATE = "SteadyState"
    STEP_FAILURE = "StepFailure"


@dataclass(frozen=True)
class IntegrationConfig:
    t_end: float = 20000.0
    rel_tol: float = 1e-8
    abs_tol: float = 1e-9
    max_step: float = 100.0
    steady_state_tol: float = 1e-8
    steady_state_window: float = 50.0
    max_steps: int = 2_000_000

    def __post_init__(self):
        for name in ("t_end", "rel_tol", "abs_tol", "max_step", "steady_state_tol"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be > 0")
        if self.steady_state_window < 0:
            raise ValueError("steady_state_window must be >= 0")


@dataclass(frozen=True)
class Trajectory:
    t: np.ndarray
    states: np.ndarray
    labels: tuple[str, ...]
    termination: Termination
    accepted: int
    rejected: int
    rhs_evals: int
    message: str = ""

    @property
    def final(self) -> np.ndarray:
        return self.states[-1]

    @property
    def t_final(self) -> float:
        return float(self.t[-1])

    def column(self, label: str) -> np.ndarray:
        return self.states[:, self.labels.index(label)]

    def at(self, times) -> np.ndarray:
        """Linear interpolation between accepted steps; rows per requested time."""
        times = np.atleast_1d(np.asarray(times, dtype=float))
        return np.stack([np.interp(times, self.t, self.states[:, j])
                         for j in range(self.states.shape[1])], axis=1)

    def resample(self, cadence: float) -> tuple[np.ndarray, np.ndarray]:
        grid = np.arange(0.0, self.t_final, cadence)
        if grid.size == 0 or grid[-1] < self.t_final:
            grid = np.append(grid, self.t_final)
        return grid, self.at(grid)

    def to_csv(self, dest=None, cadence: float = 10.0) -> str:
        grid, rows = self.resample(cadence)
        buf = io.StringIO()
        buf.write(",".join(("t",) + self.labels) + "\n")
        for tk, row in zip(grid, rows):
            buf.write(",".join([fmt(tk)] + [fmt(v) for v in row]) + "\n")
        text = buf.getvalue()
        if dest is not None:
            Path(dest).write_text(text, encoding="utf-8", newline="\n")
        return text


def _initial_state(spec: NetworkSpec, x0) -> np.ndarray:
    if x0 is None:
        return spec.default_state()
    x = np.array(x0, dtype=float)
    if x.shape != (spec.dim,):
        raise ValueError(f"x0 must have shape ({spec.dim},), got {x.shape}")
    if not np.all(np.isfinite(x)) or np.any(x < 0):
        raise ValueError("x0 must be finite and componentwise >= 0")
    c = spec.compiled
    x[c.pin_idx] = c.pin_val
    return x


def integrate(spec: NetworkSpec, x0=None, cfg: IntegrationConfig | None = None, *,
              record: bool = True, stop_at_steady: bool = True) -> Trajectory:
    """Integrate ``spec`` from ``x0`` (default all zero) up to ``cfg.t_end``.

    Integration restarts at every input step-change time so no step spans an
    event. Steady-state termination is only possible after the last event.
    With ``record=False`` only the first and last samples are kept.
    """
    cfg = cfg or IntegrationConfig()
    c = spec.compiled
    x = _initial_state(spec, x0)
    d = spec.dim
    starts = [float(t) for t in c.breakpoints if t < cfg.t_end]

    cap = 256 if record else 1
    ts = np.empty(cap)
    xs = np.empty((cap, d))
    t_out = [0.0]
    x_out = [x.copy()]
    n_rec = 0
    n_acc = n_rej = n_eval = 0
    termination = Termination.REACHED_T_END
    message = ""
    k1 = np.empty(d)
    t = 0.0

    for k, t0 in enumerate(starts):
        t1 = starts[k + 1] if k + 1 < len(starts) else cfg.t_end
        last_segment = k + 1 == len(starts)
        clamp = c.clamps[k]
        args = (c.params, clamp, c.wire_src, c.wire_dst, c.wire_ch, c.wire_gain, c.pin_idx)
        _kernels.network_deriv(x, *args, k1)
        n_eval += 1
        if not np.all(np.isfinite(k1)):
            termination, message = Termination.STEP_FAILURE, f"non-finite RHS at t={t0:g}"
            break
        fnorm = float(np.max(np.abs(k1)))
        allow_ss = stop_at_steady and last_segment
        if allow_ss and fnorm == 0.0:
            # exact fixed point with no further input changes
            termination = Termination.STEADY_STATE
            break
        ss_since = t0 if fnorm <= cfg.steady_state_tol * max(float(np.max(np.abs(x))), 1.0) else -1.0
        h = _kernels.initial_step(x, k1, t1 - t0, cfg.max_step, cfg.rel_tol, cfg.abs_tol, *args)
        n_eval += 1
        (status, t, h, ss_since, acc, rej, ev, ts, xs, n_rec) = _kernels.dopri_segment(
            x, k1, t0, t1, h, *args,
            cfg.rel_tol, cfg.abs_tol, cfg.max_step, cfg.steady_state_tol,
            cfg.steady_state_window, ss_since, allow_ss,
            record, ts, xs, n_rec, cfg.max_steps - n_acc - n_rej,
        )
        n_acc += acc
        n_rej += rej
        n_eval += ev
        if status == _kernels.STEADY:
            termination = Termination.STEADY_STATE
            break
        if status != _kernels.REACHED_END:
            termination = Termination.STEP_FAILURE
            message = {
                _kernels.UNDERFLOW: f"step size underflow at t={t:g}",
                _kernels.NONFINITE: f"non-finite RHS at t={t:g}",
                _kernels.TOO_MANY_STEPS: f"step budget exhausted at t={t:g}",
            }[status]
            break

    if record:
        t_arr = np.concatenate([[0.0], ts[:n_rec]])
        x_arr = np.vstack([x_out[0][None, :], xs[:n_rec]])
    else:
        t_arr = np.array(t_out + ([t] if t > 0 else []))
        x_arr = np.array(x_out + ([x.copy()] if t > 0 else []))
    return Trajectory(t_arr, x_arr, tuple(spec.labels()), termination,
                      n_acc, n_rej, n_eval, message)


def steady_state(spec: NetworkSpec, x0=None, cfg: IntegrationConfig | None = None) -> np.ndarray:
    """Integrate until the derivative-norm criterion holds; return the final state."""
    cfg = cfg or IntegrationConfig()
    traj = integrate(spec, x0, cfg, record=False)
    if traj.termination is Termination.STEADY_STATE:
        return traj.final
    if traj.termination is Termination.STEP_FAILURE:
        raise StepFailure(traj.message)
    norm = float(np.max(np.abs(network_rhs(traj.final, spec, traj.t_final))))
    raise NonConvergence(cfg.t_end, norm, traj.final)


__all__ = [
    "IntegrationConfig",
    "Termination",
    "Trajectory",
    "integrate",
    "steady_state",
]
