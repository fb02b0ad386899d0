"""Species, parameters, network specifications and the ODE right-hand side.

A neuron carries ten dynamic species (rep3 shares rep1's state entry) and
five externally set input channels. Networks concatenate neuron blocks in a
fixed order; wires feed an upstream neuron's ``out`` into a downstream input
channel.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, NamedTuple, Sequence

import numpy as np

from . import _kernels
from ._layout import (
    CHANNELS,
    N_CHANNELS,
    N_SPECIES,
    PARAM_ORDER,
    SPECIES,
    WIRABLE_CHANNELS,
)
from .errors import NumericError, SpecificationError

__all__ = [
    "SPECIES",
    "CHANNELS",
    "WIRABLE_CHANNELS",
    "SpeciesId",
    "NeuronParameters",
    "Neuron",
    "Clamp",
    "Wire",
    "Pin",
    "NetworkSpec",
    "hill_activation",
    "hill_repression",
    "neuron_rhs",
    "network_rhs",
    "single_neuron_spec",
]


class SpeciesId(NamedTuple):
    neuron_index: int
    species_kind: str

    def offset(self) -> int:
        return self.neuron_index * N_SPECIES + SPECIES.index(self.species_kind)


@dataclass(frozen=True)
class NeuronParameters:
    """Rate constants (nM/s, 1/s, 1/(nM s)), dissociation constants (nM) and
    Hill coefficients for one neuron. Defaults are the reference values."""

    k_prodA: float = 2.0
    k_prodB: float = 2.0
    k_prodC: float = 2.0
    k_prodD: float = 0.2
    k_prodE: float = 2.0
    k_prod_ActX: float = 1.0
    k_prod_ActY: float = 1.0
    k_prod_LacI: float = 2.0
    k_prod_TetR: float = 3.0
    k_prod_Ind2: float = 2.0
    k_prod_out: float = 1.0

    k_deg_ActX: float = 0.15
    k_deg_ActY: float = 0.15
    k_deg_LacI: float = 0.55
    k_deg_TetR: float = 0.15
    k_deg_Ind1: float = 0.15
    k_deg_Ind2: float = 0.15
    k_deg_rep2: float = 0.13
    k_deg_rep1: float = 0.14
    k_deg_ActC: float = 0.15
    k_deg_out: float = 0.05

    k_seq_LacI: float = 1.1e-5
    k_seq_TetR: float = 0.0116
    k_seq_rep1: float = 0.015
    k_seq_rep2: float = 0.015

    K_fA: float = 2.0
    K_fB: float = 2.0
    K_ActX: float = 3.0
    K_ActY: float = 3.0
    K_LacI: float = 1.0
    K_TetR: float = 1.0
    K_IndT: float = 1.0
    K_ActC: float = 1.5
    K_rep1: float = 9.0
    K_rep2: float = 9.0
    K_rep3: float = 0.5

    n_fA: float = 1.0
    n_fB: float = 1.0
    n_ActX: float = 1.0
    n_ActY: float = 1.0
    n_LacI: float = 2.0
    n_TetR: float = 2.0
    n_IndT: float = 1.0
    n_ActC: float = 3.0
    n_rep1: float = 9.0
    n_rep2: float = 9.0
    n_rep3: float = 1.0

    def __post_init__(self):
        for name in PARAM_ORDER:
            value = getattr(self, name)
            if not isinstance(value, (int, float)) or not math.isfinite(value):
                raise SpecificationError(f"parameter {name} must be a finite number, got {value!r}")
            if name.startswith("n_"):
                if value < 1:
                    raise SpecificationError(f"Hill coefficient {name} = {value!r} must be >= 1")
            elif value <= 0:
                raise SpecificationError(f"nonpositive rate {name} = {value!r}")

    def replace(self, **overrides: float) -> NeuronParameters:
        unknown = set(overrides) - set(PARAM_ORDER)
        if unknown:
            raise SpecificationError(f"unknown parameter(s): {', '.join(sorted(unknown))}")
        return dataclasses.replace(self, **{k: float(v) for k, v in overrides.items()})

    def to_array(self) -> np.ndarray:
        return np.array([getattr(self, name) for name in PARAM_ORDER], dtype=float)

    def overrides(self) -> dict[str, float]:
        """Fields that differ from the defaults, in declaration order."""
        base = NeuronParameters()
        return {n: getattr(self, n) for n in PARAM_ORDER if getattr(self, n) != getattr(base, n)}


assert tuple(f.name for f in dataclasses.fields(NeuronParameters)) == PARAM_ORDER


def _check_hill_args(x, K, n):
    x = np.asarray(x, dtype=float)
    if np.any(~np.isfinite(x)) or np.any(x < 0):
        raise ValueError("Hill input concentration must be finite and >= 0")
    if not K > 0:
        raise ValueError(f"dissociation constant must be > 0, got {K!r}")
    if not n >= 1:
        raise ValueError(f"Hill coefficient must be >= 1, got {n!r}")
    return x


def hill_activation(x, K: float, n: float):
    """x^n / (K^n + x^n); accepts scalars or arrays."""
    x = _check_hill_args(x, K, n)
    with np.errstate(divide="ignore", over="ignore"):
        r = np.where(x > 0, 1.0 / (1.0 + (K / np.where(x > 0, x, 1.0)) ** n), 0.0)
    return float(r) if r.ndim == 0 else r


def hill_repression(x, K: float, n: float):
    """K^n / (K^n + x^n) = 1 - hill_activation(x, K, n)."""
    x = _check_hill_args(x, K, n)
    with np.errstate(over="ignore"):
        r = 1.0 / (1.0 + (x / K) ** n)
    return float(r) if r.ndim == 0 else r


@dataclass(frozen=True)
class Neuron:
    name: str
    params: NeuronParameters = field(default_factory=NeuronParameters)


def _as_schedule(value) -> tuple[tuple[float, float], ...]:
    if isinstance(value, (int, float)):
        return ((0.0, float(value)),)
    return tuple((float(t), float(v)) for t, v in value)


@dataclass(frozen=True)
class Clamp:
    """Piecewise-constant external concentration on one input channel.

    ``schedule`` is ((t0=0, v0), (t1, v1), ...): value v_i holds on [t_i, t_{i+1}).
    ``source`` names a shared global input, if any.
    """

    neuron: str
    channel: str
    schedule: tuple[tuple[float, float], ...]
    source: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "schedule", _as_schedule(self.schedule))
        if self.channel not in CHANNELS:
            raise SpecificationError(f"unknown input channel {self.channel!r}")
        sched = self.schedule
        if not sched or sched[0][0] != 0.0:
            raise SpecificationError(f"schedule for {self.neuron}.{self.channel} must start at t = 0")
        for (t0, _), (t1, _) in zip(sched, sched[1:]):
            if not t1 > t0:
                raise SpecificationError(
                    f"schedule times for {self.neuron}.{self.channel} must be strictly increasing"
                )
        for t, v in sched:
            if not (math.isfinite(t) and math.isfinite(v)) or v < 0:
                raise SpecificationError(
                    f"input {self.neuron}.{self.channel} must be finite and >= 0, got {v!r}"
                )

    def value_at(self, t: float) -> float:
        value = self.schedule[0][1]
        for ti, vi in self.schedule:
            if ti <= t:
                value = vi
            else:
                break
        return value


@dataclass(frozen=True)
class Wire:
    """Feeds ``gain * [out]`` of ``source`` into ``target.channel``."""

    source: str
    target: str
    channel: str
    gain: float = 1.0

    def __post_init__(self):
        if self.channel not in WIRABLE_CHANNELS:
            raise SpecificationError(
                f"wire target channel must be one of {', '.join(WIRABLE_CHANNELS)}, got {self.channel!r}"
            )
        if not (math.isfinite(self.gain) and self.gain >= 0):
            raise SpecificationError(f"wire gain must be finite and >= 0, got {self.gain!r}")


@dataclass(frozen=True)
class Pin:
    """Holds one species at a fixed concentration (its derivative is zeroed)."""

    neuron: str
    species: str
    value: float

    def __post_init__(self):
        if self.species not in SPECIES:
            raise SpecificationError(f"unknown species {self.species!r}")
        if not (math.isfinite(self.value) and self.value >= 0):
            raise SpecificationError(f"pinned value must be finite and >= 0, got {self.value!r}")


@dataclass(frozen=True)
class Compiled:
    params: np.ndarray
    wire_src: np.ndarray
    wire_dst: np.ndarray
    wire_ch: np.ndarray
    wire_gain: np.ndarray
    pin_idx: np.ndarray
    pin_val: np.ndarray
    # clamp matrices, one per interval between consecutive event times
    breakpoints: np.ndarray
    clamps: np.ndarray

    def clamp_at(self, t: float) -> np.ndarray:
        k = int(np.searchsorted(self.breakpoints, t, side="right")) - 1
        return self.clamps[max(k, 0)]


@dataclass(frozen=True)
class NetworkSpec:
    """Validated network: neurons in evaluation order plus inputs and wiring.

    Channels that are neither clamped nor wired read 0 nM.
    """

    neurons: tuple[Neuron, ...]
    clamps: tuple[Clamp, ...] = ()
    wires: tuple[Wire, ...] = ()
    pins: tuple[Pin, ...] = ()

    def __post_init__(self):
        for name in ("neurons", "clamps", "wires", "pins"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        if not self.neurons:
            raise SpecificationError("no neuron declared")
        names = [n.name for n in self.neurons]
        if len(set(names)) != len(names):
            raise SpecificationError("duplicate neuron name")
        known = set(names)
        driven: dict[tuple[str, str], str] = {}
        for c in self.clamps:
            if c.neuron not in known:
                raise SpecificationError(f"clamp on undeclared neuron {c.neuron!r}")
            key = (c.neuron, c.channel)
            if key in driven:
                raise SpecificationError(f"channel driven twice: {c.neuron}.{c.channel}")
            driven[key] = "clamp"
        for w in self.wires:
            for end in (w.source, w.target):
                if end not in known:
                    raise SpecificationError(f"dangling wire: undeclared neuron {end!r}")
            key = (w.target, w.channel)
            if driven.get(key) == "clamp":
                raise SpecificationError(f"channel driven twice: {w.target}.{w.channel}")
            driven[key] = "wire"
        pinned = set()
        for p in self.pins:
            if p.neuron not in known:
                raise SpecificationError(f"pin on undeclared neuron {p.neuron!r}")
            if (p.neuron, p.species) in pinned:
                raise SpecificationError(f"species pinned twice: {p.neuron}.{p.species}")
            pinned.add((p.neuron, p.species))
        self.layers()  # raises on cycles

    # -- structure -----------------------------------------------------------

    @property
    def dim(self) -> int:
        return N_SPECIES * len(self.neurons)

    @cached_property
    def _pos(self) -> dict[str, int]:
        return {n.name: i for i, n in enumerate(self.neurons)}

    def neuron_index(self, name: str) -> int:
        try:
            return self._pos[name]
        except KeyError:
            raise SpecificationError(f"undeclared neuron {name!r}") from None

    def index(self, neuron: str, species: str) -> int:
        if species == "rep3":
            species = "rep1"
        if species not in SPECIES:
            raise SpecificationError(f"unknown species {species!r}")
        return SpeciesId(self.neuron_index(neuron), species).offset()

    def labels(self) -> list[str]:
        return [f"{n.name}.{s}" for n in self.neurons for s in SPECIES]

    def layers(self) -> dict[str, int]:
        """Layer depth of each neuron (0 = no incoming wires)."""
        incoming: dict[str, set[str]] = {n.name: set() for n in self.neurons}
        for w in self.wires:
            incoming[w.target].add(w.source)
        depth: dict[str, int] = {}
        remaining = dict(incoming)
        while remaining:
            ready = [n for n, srcs in remaining.items() if srcs <= depth.keys()]
            if not ready:
                raise SpecificationError(
                    "cycle detected in wiring among: " + ", ".join(sorted(remaining))
                )
            for n in ready:
                depth[n] = 1 + max((depth[s] for s in remaining[n]), default=-1)
                del remaining[n]
        return depth

    def event_times(self) -> list[float]:
        return sorted({t for c in self.clamps for t, _ in c.schedule if t > 0})

    def params_of(self, name: str) -> NeuronParameters:
        return self.neurons[self.neuron_index(name)].params

    # -- derived specs -------------------------------------------------------

    def with_params(self, name: str, **overrides: float) -> NetworkSpec:
        i = self.neuron_index(name)
        neurons = list(self.neurons)
        neurons[i] = Neuron(name, neurons[i].params.replace(**overrides))
        return dataclasses.replace(self, neurons=tuple(neurons))

    def with_inputs(self, values: Mapping[tuple[str, str], float | Sequence]) -> NetworkSpec:
        """Replace (or add) clamps. Keys are (neuron, channel)."""
        clamps = {(c.neuron, c.channel): c for c in self.clamps}
        for (neuron, channel), v in values.items():
            clamps[(neuron, channel)] = Clamp(neuron, channel, _as_schedule(v))
        return dataclasses.replace(self, clamps=tuple(clamps.values()))

    def with_source(self, source: str, value) -> NetworkSpec:
        """Set every clamp bound to the shared input ``source``."""
        clamps = []
        hit = False
        for c in self.clamps:
            if c.source == source:
                c = Clamp(c.neuron, c.channel, _as_schedule(value), source)
                hit = True
            clamps.append(c)
        if not hit:
            raise SpecificationError(f"no channel is bound to input {source!r}")
        return dataclasses.replace(self, clamps=tuple(clamps))

    def with_pins(self, pins: Iterable[Pin]) -> NetworkSpec:
        keep = {(p.neuron, p.species): p for p in self.pins}
        for p in pins:
            keep[(p.neuron, p.species)] = p
        return dataclasses.replace(self, pins=tuple(keep.values()))

    def sources(self) -> dict[str, list[tuple[str, str]]]:
        out: dict[str, list[tuple[str, str]]] = {}
        for c in self.clamps:
            if c.source is not None:
                out.setdefault(c.source, []).append((c.neuron, c.channel))
        return out

    def default_state(self) -> np.ndarray:
        """All-zero initial condition with pinned species at their values."""
        x = np.zeros(self.dim)
        for p in self.pins:
            x[self.index(p.neuron, p.species)] = p.value
        return x

    # -- compiled arrays -----------------------------------------------------

    @cached_property
    def compiled(self) -> Compiled:
        pos = self._pos
        params = np.array([n.params.to_array() for n in self.neurons])
        wires = self.wires
        breakpoints = np.array([0.0] + self.event_times())
        clamps = np.zeros((len(breakpoints), len(self.neurons), N_CHANNELS))
        for k, t in enumerate(breakpoints):
            for c in self.clamps:
                clamps[k, pos[c.neuron], CHANNELS.index(c.channel)] = c.value_at(t)
        return Compiled(
            params=params,
            wire_src=np.array([pos[w.source] for w in wires], dtype=np.int64),
            wire_dst=np.array([pos[w.target] for w in wires], dtype=np.int64),
            wire_ch=np.array([CHANNELS.index(w.channel) for w in wires], dtype=np.int64),
            wire_gain=np.array([w.gain for w in wires], dtype=float),
            pin_idx=np.array([self.index(p.neuron, p.species) for p in self.pins], dtype=np.int64),
            pin_val=np.array([p.value for p in self.pins], dtype=float),
            breakpoints=breakpoints,
            clamps=clamps,
        )


def single_neuron_spec(params: NeuronParameters | None = None, name: str = "n1",
                       **inputs: float) -> NetworkSpec:
    """One neuron with constant clamps given as keyword arguments (IPTG=..., fA=...)."""
    params = params or NeuronParameters()
    clamps = tuple(Clamp(name, ch, v) for ch, v in inputs.items())
    return NetworkSpec((Neuron(name, params),), clamps)


def _check_state(state: np.ndarray, labels: Sequence[str]) -> np.ndarray:
    state = np.asarray(state, dtype=float)
    if state.shape != (len(labels),):
        raise ValueError(f"state must have shape ({len(labels)},), got {state.shape}")
    bad = ~np.isfinite(state)
    if bad.any():
        i = int(np.flatnonzero(bad)[0])
        raise NumericError(f"non-finite state entry {labels[i]} = {state[i]!r}")
    if (state < 0).any():
        i = int(np.flatnonzero(state < 0)[0])
        raise ValueError(f"negative concentration {labels[i]} = {state[i]!r}")
    return state


def neuron_rhs(state, params: NeuronParameters, inputs: Mapping[str, float]) -> np.ndarray:
    """Time derivative (nM/s) of a single neuron's ten species.

    ``inputs`` maps channel name to its resolved concentration; missing
    channels read 0.
    """
    state = _check_state(state, SPECIES)
    ch = np.zeros(N_CHANNELS)
    for name, v in inputs.items():
        if name not in CHANNELS:
            raise SpecificationError(f"unknown input channel {name!r}")
        if not (math.isfinite(v) and v >= 0):
            raise ValueError(f"input {name} must be finite and >= 0, got {v!r}")
        ch[CHANNELS.index(name)] = v
    d = np.empty(N_SPECIES)
    _kernels.neuron_deriv(state, params.to_array(), ch, d)
    return d


def network_rhs(state, spec: NetworkSpec, t: float = 0.0) -> np.ndarray:
    """Time derivative of the full network state at time ``t``."""
    state = _check_state(state, spec.labels())
    c = spec.compiled
    dx = np.empty(spec.dim)
    _kernels.network_deriv(state, c.params, c.clamp_at(t), c.wire_src, c.wire_dst,
                           c.wire_ch, c.wire_gain, c.pin_idx, dx)
    return dx
