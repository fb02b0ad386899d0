"""Threshold arithmetic for layer composition and knob calibration."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .._layout import CHANNELS
from ..core import NetworkSpec, NeuronParameters
from ..errors import GRNError
from ..integrator import IntegrationConfig
from .sweeps import initial_state, resolve_axis, resting_state, set_axes, set_axis, solve


class CalibrationError(GRNError, ValueError):
    """Requested threshold cannot be realised."""


@dataclass(frozen=True)
class SignalMatch:
    or_threshold: float
    and_threshold: float

    def to_dict(self) -> dict:
        return {"or_threshold": self.or_threshold, "and_threshold": self.and_threshold}


def calibrate_signal_matching(out_high_1: float, out_high_2: float,
                              margin: float = 0.25) -> SignalMatch:
    """Second-layer thresholds on the summed first-layer outputs.

    OR fires when either input is high: threshold = margin * min(highs).
    AND needs both: threshold = max(highs) + margin * min(highs), which must
    stay strictly below the sum of the highs.
    """
    if not (out_high_1 > 0 and out_high_2 > 0):
        raise ValueError("output high levels must be > 0")
    if not 0 < margin < 0.5:
        raise ValueError("margin must lie in (0, 0.5)")
    lo, hi = min(out_high_1, out_high_2), max(out_high_1, out_high_2)
    t_or = margin * lo
    t_and = hi + margin * lo
    if not t_and < out_high_1 + out_high_2:
        raise CalibrationError(
            f"infeasible AND window: {t_and!r} >= {out_high_1 + out_high_2!r}")
    return SignalMatch(t_or, t_and)


def input_threshold(spec: NetworkSpec, drive: str, lo: float, hi: float, *,
                    output: str | None = None, level: float | None = None, x0=None,
                    cfg: IntegrationConfig | None = None, tol: float = 1e-3) -> float | None:
    """Drive value in [lo, hi] where steady out first reaches ``level``.

    Assumes a single ascending crossing; returns None when out is below
    ``level`` at ``hi`` and ``lo`` when it is already above at ``lo``.
    """
    drive = resolve_axis(spec, drive)
    output = output or spec.neurons[-1].name
    i_out = spec.index(output, "out")
    p = spec.params_of(output)
    level = 0.5 * p.k_prod_out / p.k_deg_out if level is None else level

    def f(v):
        return solve(set_axis(spec, drive, v), None if x0 is None else x0.copy(), cfg)[0][i_out]

    if f(lo) >= level:
        return lo
    if f(hi) < level:
        return None
    while hi - lo > tol:
        m = 0.5 * (lo + hi)
        if f(m) >= level:
            hi = m
        else:
            lo = m
    return 0.5 * (lo + hi)


def _with_knob(spec: NetworkSpec, neuron: str, knob: str, value: float) -> NetworkSpec:
    if knob in CHANNELS:
        return spec.with_inputs({(neuron, knob): value})
    if knob in NeuronParameters.__dataclass_fields__:
        return spec.with_params(neuron, **{knob: value})
    raise ValueError(f"unknown knob {knob!r}")


def calibrate_threshold(spec: NetworkSpec, neuron: str, drive: str, target: float,
                        knob: str, knob_range: tuple[float, float], *,
                        drive_range: tuple[float, float] | None = None,
                        level: float | None = None, cfg: IntegrationConfig | None = None,
                        initial="rest", tol: float = 1e-6,
                        max_iter: int = 60) -> tuple[NetworkSpec, float, float]:
    """Set ``knob`` on ``neuron`` so its threshold along ``drive`` equals ``target``.

    ``knob`` is an input channel (``fB``, ``IndT``, ...) or a parameter
    name. The neuron's threshold must be monotone in the knob over
    ``knob_range``; the knob is found by bisection. Returns the calibrated
    spec, the knob value and the achieved threshold.
    """
    drive_ax = resolve_axis(spec, drive)
    d_lo, d_hi = drive_range or (0.0, 4.0 * target)

    def threshold_at(k):
        s = _with_knob(spec, neuron, knob, k)
        x0 = initial_state(s, [drive_ax], initial, d_lo, cfg)
        t = input_threshold(s, drive_ax, d_lo, d_hi, output=neuron, level=level,
                            x0=x0, cfg=cfg, tol=1e-4 * (d_hi - d_lo))
        return d_hi if t is None else t

    a, b = knob_range
    ta, tb = threshold_at(a), threshold_at(b)
    if not min(ta, tb) <= target <= max(ta, tb):
        raise CalibrationError(
            f"target threshold {target!r} outside reachable range [{min(ta, tb)!r}, "
            f"{max(ta, tb)!r}] for {knob} in {knob_range}")
    rising = tb > ta
    for _ in range(max_iter):
        if abs(b - a) <= tol * max(abs(a), abs(b), 1.0):
            break
        m = 0.5 * (a + b)
        if (threshold_at(m) < target) == rising:
            a = m
        else:
            b = m
    k = 0.5 * (a + b)
    return _with_knob(spec, neuron, knob, k), k, threshold_at(k)


@dataclass(frozen=True)
class LayerTwoCalibration:
    gate: str
    out_highs: tuple[float, float]
    match: SignalMatch
    target: float  # threshold on the summed first-layer outputs (nM)
    knob: str
    knob_value: float
    achieved: float  # realised threshold on the summed outputs (nM)

    def to_dict(self) -> dict:
        return {
            "gate": self.gate,
            "out_highs": list(self.out_highs),
            **self.match.to_dict(),
            "target": self.target,
            "knob": self.knob,
            "knob_value": self.knob_value,
            "achieved": self.achieved,
        }


def calibrate_two_layer(spec: NetworkSpec, gate: str, inputs: tuple[str, str] = ("x", "y"),
                        *, output: str | None = None, high: float = 50.0, low: float = 0.0,
                        margin: float = 0.25, knob: str = "fB",
                        knob_range: tuple[float, float] = (0.05, 10.0),
                        cfg: IntegrationConfig | None = None) -> tuple[NetworkSpec, LayerTwoCalibration]:
    """Match the output neuron's threshold to its two upstream neurons.

    The first-layer high levels are the largest steady outs over the input
    corners. The output neuron must receive both upstream outs on one
    channel with equal gain g; its threshold on that channel is then set to
    g times the OR or AND threshold of :func:`calibrate_signal_matching`,
    using the output neuron in isolation.
    """
    gate = gate.upper()
    if gate not in ("OR", "AND"):
        raise ValueError("gate must be OR or AND")
    output = output or spec.neurons[-1].name
    wires = [w for w in spec.wires if w.target == output]
    sources = sorted({w.source for w in wires})
    if len(sources) != 2 or len({(w.channel, w.gain) for w in wires}) != 1:
        raise CalibrationError("output neuron needs two upstream neurons wired to one channel "
                               "with equal gain")
    channel, gain = wires[0].channel, wires[0].gain
    axes = [resolve_axis(spec, a) for a in inputs]
    x0 = resting_state(spec, axes, low, cfg)
    highs = [0.0, 0.0]
    for corner in product((low, high), repeat=2):
        state, _ = solve(set_axes(spec, axes, corner), x0.copy(), cfg)
        for k, src in enumerate(sources):
            highs[k] = max(highs[k], float(state[spec.index(src, "out")]))
    match = calibrate_signal_matching(highs[0], highs[1], margin)
    target = match.or_threshold if gate == "OR" else match.and_threshold

    alone = NetworkSpec((spec.neurons[spec.neuron_index(output)],),
                        tuple(c for c in spec.clamps if c.neuron == output))
    alone = alone.with_inputs({(output, channel): 0.0})
    span = gain * (highs[0] + highs[1])
    _, k, got = calibrate_threshold(alone, output, channel, gain * target, knob, knob_range,
                                    drive_range=(0.0, 2.0 * span), cfg=cfg)
    cal = LayerTwoCalibration(gate, (highs[0], highs[1]), match, target, knob, k, got / gain)
    return _with_knob(spec, output, knob, k), cal


__all__ = [
    "CalibrationError",
    "LayerTwoCalibration",
    "calibrate_two_layer",
    "SignalMatch",
    "calibrate_signal_matching",
    "calibrate_threshold",
    "input_threshold",
]
