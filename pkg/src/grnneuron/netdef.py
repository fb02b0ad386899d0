"""Reader and writer for ``.grn`` network-definition files.

A document is a sequence of sections::

    # comments run to end of line
    [neuron n1]
    k_prodC = 3              # parameter overrides
    [inputs]
    x = 0                    # shared input, referenced below
    n1.IPTG = x
    n1.fA = {0: 0, 100: 2}   # step schedule time: value
    [wires]
    wire n1.out -> n2.aTc gain 4
    [pins]
    n1.Ind1 = 5              # species held constant
    [integrator]
    t_end = 5000
    [sweep main]
    analysis = boundary
    axis1 = x

:func:`parse` returns a :class:`NetworkDocument` or raises :class:`ParseError`
carrying every diagnostic; :func:`serialize` writes the canonical form;
:func:`validate` builds the :class:`~grnneuron.core.NetworkSpec`.
"""

from __future__ import annotations

import dataclasses
import math
import re
from dataclasses import dataclass, field
from typing import Union

from ._layout import CHANNELS, SPECIES, WIRABLE_CHANNELS
from .core import Clamp, NetworkSpec, Neuron, NeuronParameters, Pin, Wire
from .errors import GRNError, SpecificationError
from .integrator import IntegrationConfig
from .output import fmt

PARAM_NAMES = tuple(f.name for f in dataclasses.fields(NeuronParameters))
INTEGRATOR_KEYS = tuple(f.name for f in dataclasses.fields(IntegrationConfig))

ANALYSES = ("simulate", "steady", "nullcline", "transfer", "boundary", "gate", "hazard")
_COMMON_SWEEP_KEYS = ("analysis", "output", "threshold", "initial")
SWEEP_KEYS = {
    "simulate": ("cadence",),
    "steady": (),
    "nullcline": ("neuron",),
    "transfer": ("neuron", "drive", "min", "max", "n", "IndT"),
    "boundary": ("axis1", "axis2", "min", "max", "n"),
    "gate": ("inputs", "low", "high"),
    "hazard": ("settle_time", "watch"),
}

MAX_DIAGNOSTICS = 100


# -- document model -----------------------------------------------------------

Number = Union[int, float]


@dataclass(frozen=True)
class Ref:
    """Reference to a name (shared input, neuron, axis, ...)."""

    name: str


@dataclass(frozen=True)
class Schedule:
    points: tuple[tuple[Number, Number], ...]


Value = Union[Number, Ref, Schedule, tuple]


@dataclass(frozen=True)
class NeuronDecl:
    name: str
    overrides: tuple[tuple[str, Number], ...] = ()
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class InputDecl:
    """``target`` is a shared input name or ``neuron.channel``."""

    target: str
    value: Value
    line: int = field(default=0, compare=False)

    @property
    def is_shared(self) -> bool:
        return "." not in self.target


@dataclass(frozen=True)
class WireDecl:
    source: str
    target: str
    channel: str
    gain: Number | None = None
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class PinDecl:
    neuron: str
    species: str
    value: Number
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class SweepDecl:
    name: str
    items: tuple[tuple[str, Value], ...] = ()
    line: int = field(default=0, compare=False)

    def get(self, key: str, default=None):
        for k, v in self.items:
            if k == key:
                return v
        return default

    @property
    def analysis(self) -> str:
        v = self.get("analysis")
        return v.name if isinstance(v, Ref) else ""


@dataclass(frozen=True)
class NetworkDocument:
    neurons: tuple[NeuronDecl, ...] = ()
    inputs: tuple[InputDecl, ...] = ()
    wires: tuple[WireDecl, ...] = ()
    pins: tuple[PinDecl, ...] = ()
    integrator: tuple[tuple[str, Number], ...] = ()
    sweeps: tuple[SweepDecl, ...] = ()

    def neuron(self, name: str) -> NeuronDecl:
        for n in self.neurons:
            if n.name == name:
                return n
        raise KeyError(name)

    def sweep(self, name: str | None = None) -> SweepDecl:
        if name is None:
            if not self.sweeps:
                raise KeyError("document declares no sweep")
            return self.sweeps[0]
        for s in self.sweeps:
            if s.name == name:
                return s
        raise KeyError(name)

    def with_overrides(self, neuron: str, **overrides: Number) -> NetworkDocument:
        """Add or replace parameter overrides (no range checking; see validate)."""
        out = []
        found = False
        for n in self.neurons:
            if n.name == neuron:
                found = True
                items = dict(n.overrides)
                for k, v in overrides.items():
                    if k not in PARAM_NAMES:
                        raise SpecificationError(f"unknown parameter {k!r}")
                    items[k] = v
                n = NeuronDecl(n.name, tuple(items.items()), n.line)
            out.append(n)
        if not found:
            raise SpecificationError(f"undeclared neuron {neuron!r}")
        return dataclasses.replace(self, neurons=tuple(out))

    def with_input(self, target: str, value: Value) -> NetworkDocument:
        """Replace the value of an existing input line, or append a new one."""
        items = list(self.inputs)
        for i, d in enumerate(items):
            if d.target == target:
                items[i] = InputDecl(target, value, d.line)
                break
        else:
            items.append(InputDecl(target, value))
        return dataclasses.replace(self, inputs=tuple(items))


# -- diagnostics --------------------------------------------------------------


@dataclass(frozen=True)
class ParseDiagnostic:
    severity: str  # "error" | "warning"
    line: int
    column: int
    message: str
    token: str = ""

    def __str__(self) -> str:
        tok = f" (at {self.token!r})" if self.token else ""
        return f"{self.line}:{self.column}: {self.severity}: {self.message}{tok}"


class ParseError(GRNError, ValueError):
    def __init__(self, diagnostics: list[ParseDiagnostic]):
        self.diagnostics = list(diagnostics)
        super().__init__("\n".join(str(d) for d in self.diagnostics))


# -- lexer --------------------------------------------------------------------

_TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t\r\f\v]+)
  | (?P<arrow>->)
  | (?P<num>[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<punct>[\[\]=.{}:,])
""", re.VERBOSE | re.ASCII)


@dataclass(frozen=True)
class Token:
    kind: str  # ident | num | punct | arrow | end
    text: str
    col: int


class _LineError(Exception):
    def __init__(self, col: int, message: str, token: str = ""):
        self.col, self.message, self.token = col, message, token


def tokenize_line(text: str) -> list[Token]:
    """Tokens of one comment-stripped line; raises _LineError on a bad character."""
    toks = []
    pos = 0
    n = len(text)
    while pos < n:
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            raise _LineError(pos + 1, "unexpected character", text[pos])
        kind = m.lastgroup
        if kind != "ws":
            toks.append(Token(kind, m.group(), pos + 1))
        pos = m.end()
    toks.append(Token("end", "", n + 1))
    return toks


class _Cursor:
    def __init__(self, toks: list[Token]):
        self.toks = toks
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def next(self) -> Token:
        t = self.toks[self.i]
        if t.kind != "end":
            self.i += 1
        return t

    def at(self, text: str) -> bool:
        return self.tok.text == text and self.tok.kind in ("punct", "arrow", "ident")

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self._fail(f"expected {text!r}")
        return self.next()

    def ident(self, what: str = "name") -> str:
        if self.tok.kind != "ident":
            self._fail(f"expected {what}")
        return self.next().text

    def number(self) -> Number:
        t = self.tok
        if t.kind != "num":
            self._fail("expected number")
        self.next()
        if re.fullmatch(r"[+-]?[0-9]+", t.text):
            return int(t.text)
        v = float(t.text)
        if not math.isfinite(v):
            raise _LineError(t.col, "number out of range", t.text)
        return v

    def dotted(self, what: str) -> tuple[str, str]:
        a = self.ident(what)
        self.expect(".")
        return a, self.ident(what)

    def end(self):
        if self.tok.kind != "end":
            self._fail("unexpected trailing input")

    def _fail(self, msg: str):
        t = self.tok
        raise _LineError(t.col, msg if t.kind != "end" else msg + " before end of line", t.text)


def _value(c: _Cursor, allow_ref: bool = True, allow_schedule: bool = True,
           allow_list: bool = False) -> Value:
    t = c.tok
    if t.kind == "num":
        return c.number()
    if t.kind == "ident" and allow_ref:
        name = c.next().text
        while c.at("."):
            c.next()
            name += "." + c.ident()
        return Ref(name)
    if t.text == "{" and allow_schedule:
        c.next()
        pts = []
        while True:
            tv = c.number()
            c.expect(":")
            pts.append((tv, c.number()))
            if c.at(","):
                c.next()
                continue
            c.expect("}")
            break
        return Schedule(tuple(pts))
    if t.text == "[" and allow_list:
        c.next()
        items = []
        if not c.at("]"):
            while True:
                items.append(_value(c, allow_ref=True, allow_schedule=False))
                if c.at(","):
                    c.next()
                    continue
                break
        c.expect("]")
        return tuple(items)
    c._fail("expected value")


# -- parser -------------------------------------------------------------------


def _strip_comment(line: str) -> str:
    i = line.find("#")
    return line if i < 0 else line[:i]


class _Builder:
    def __init__(self):
        self.neurons: list[list] = []  # [name, [(k, v)], line]
        self.inputs: list[InputDecl] = []
        self.wires: list[WireDecl] = []
        self.pins: list[PinDecl] = []
        self.integrator: list[tuple[str, Number]] = []
        self.sweeps: list[list] = []
        self.diags: list[ParseDiagnostic] = []
        self.section: tuple[str, str] | None = None
        self.seen_keys: set = set()

    def error(self, line, col, msg, token=""):
        self.diags.append(ParseDiagnostic("error", line, col, msg, token))

    def warn(self, line, col, msg, token=""):
        self.diags.append(ParseDiagnostic("warning", line, col, msg, token))

    def _dup(self, scope, key, col):
        if (scope, key) in self.seen_keys:
            raise _LineError(col, f"duplicate key {key!r}", key)
        self.seen_keys.add((scope, key))

    def header(self, c: _Cursor, lineno: int):
        c.expect("[")
        col = c.tok.col
        kind = c.ident("section name")
        if kind in ("neuron", "sweep"):
            name = c.ident(f"{kind} name")
            c.expect("]")
            c.end()
            if kind == "neuron":
                if any(n[0] == name for n in self.neurons):
                    raise _LineError(col, f"duplicate neuron name {name!r}", name)
                self.neurons.append([name, [], lineno])
            else:
                if any(s[0] == name for s in self.sweeps):
                    raise _LineError(col, f"duplicate sweep name {name!r}", name)
                self.sweeps.append([name, [], lineno])
            self.section = (kind, name)
        elif kind in ("inputs", "wires", "pins", "integrator"):
            c.expect("]")
            c.end()
            self.section = (kind, "")
        else:
            raise _LineError(col, "unknown section", kind)

    def statement(self, c: _Cursor, lineno: int):
        if self.section is None:
            raise _LineError(c.tok.col, "statement outside any section", c.tok.text)
        kind, name = self.section
        col = c.tok.col
        if kind == "neuron":
            key = c.ident("parameter name")
            if key not in PARAM_NAMES:
                raise _LineError(col, f"unknown parameter {key!r}", key)
            c.expect("=")
            v = c.number()
            c.end()
            self._dup(("neuron", name), key, col)
            self.neurons[-1][1].append((key, v))
        elif kind == "inputs":
            first = c.ident("input name")
            if c.at("."):
                c.next()
                chcol = c.tok.col
                ch = c.ident("channel")
                if ch not in CHANNELS:
                    raise _LineError(chcol, f"unknown input channel {ch!r}", ch)
                target = f"{first}.{ch}"
                c.expect("=")
                v = _value(c)
            else:
                target = first
                c.expect("=")
                v = _value(c, allow_ref=False)
            c.end()
            self._dup("inputs", target, col)
            self.inputs.append(InputDecl(target, v, lineno))
        elif kind == "wires":
            kw = c.ident("'wire'")
            if kw != "wire":
                raise _LineError(col, "expected 'wire'", kw)
            src, port = c.dotted("neuron")
            if port != "out":
                raise _LineError(col, "wire source must be <neuron>.out", port)
            c.expect("->")
            dcol = c.tok.col
            dst, ch = c.dotted("neuron")
            if ch not in WIRABLE_CHANNELS:
                raise _LineError(dcol, "wire target must be IPTG, aTc or IndT", ch)
            gain = None
            if c.at("gain"):
                c.next()
                gain = c.number()
            c.end()
            self.wires.append(WireDecl(src, dst, ch, gain, lineno))
        elif kind == "pins":
            neuron, sp = c.dotted("neuron")
            if sp not in SPECIES and sp != "rep3":
                raise _LineError(col, f"unknown species {sp!r}", sp)
            c.expect("=")
            v = c.number()
            c.end()
            self._dup("pins", (neuron, "rep1" if sp == "rep3" else sp), col)
            self.pins.append(PinDecl(neuron, sp, v, lineno))
        elif kind == "integrator":
            key = c.ident("setting")
            if key not in INTEGRATOR_KEYS:
                raise _LineError(col, f"unknown integrator setting {key!r}", key)
            c.expect("=")
            v = c.number()
            c.end()
            self._dup("integrator", key, col)
            self.integrator.append((key, v))
        else:  # sweep
            key = c.ident("key")
            c.expect("=")
            v = _value(c, allow_list=True)
            c.end()
            self._dup(("sweep", name), key, col)
            self.sweeps[-1][1].append((key, v))

    def document(self) -> NetworkDocument:
        return NetworkDocument(
            neurons=tuple(NeuronDecl(n, tuple(ov), ln) for n, ov, ln in self.neurons),
            inputs=tuple(self.inputs),
            wires=tuple(self.wires),
            pins=tuple(self.pins),
            integrator=tuple(self.integrator),
            sweeps=tuple(SweepDecl(n, tuple(it), ln) for n, it, ln in self.sweeps),
        )


def parse(text: str | bytes) -> NetworkDocument:
    """Parse ``.grn`` source. Raises :class:`ParseError` with all diagnostics."""
    if isinstance(text, (bytes, bytearray)):
        try:
            text = bytes(text).decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError([ParseDiagnostic("error", 1, exc.start + 1,
                                              "input is not valid UTF-8")]) from None
    b = _Builder()
    for lineno, raw in enumerate(text.split("\n"), start=1):
        if len(b.diags) >= MAX_DIAGNOSTICS:
            break
        line = _strip_comment(raw)
        try:
            toks = tokenize_line(line)
            if toks[0].kind == "end":
                continue
            c = _Cursor(toks)
            if c.at("["):
                b.header(c, lineno)
            else:
                b.statement(c, lineno)
        except _LineError as e:
            b.error(lineno, e.col, e.message, e.token)
    doc = b.document()
    if not any(d.severity == "error" for d in b.diags):
        b.diags.extend(check(doc))
    errors = [d for d in b.diags if d.severity == "error"]
    if errors:
        raise ParseError(b.diags)
    return doc


def check(doc: NetworkDocument) -> list[ParseDiagnostic]:
    """Reference and structural checks. Parameter ranges are left to validate."""
    out: list[ParseDiagnostic] = []

    def err(line, msg, token=""):
        out.append(ParseDiagnostic("error", line, 1, msg, token))

    if not doc.neurons:
        err(1, "no neuron declared")
        return out
    names = {n.name for n in doc.neurons}
    shared = {d.target: d for d in doc.inputs if d.is_shared}
    used_shared = set()
    driven: dict[tuple[str, str], str] = {}
    for d in doc.inputs:
        if d.is_shared:
            if isinstance(d.value, Schedule):
                msg = _schedule_problem(d.value)
                if msg:
                    err(d.line, msg, d.target)
            elif d.value < 0:
                err(d.line, "input concentration must be >= 0", d.target)
            continue
        neuron, ch = d.target.split(".", 1)
        if neuron not in names:
            err(d.line, f"undeclared neuron {neuron!r}", neuron)
            continue
        driven[(neuron, ch)] = "clamp"
        v = d.value
        if isinstance(v, Ref):
            if v.name not in shared:
                err(d.line, f"undeclared input {v.name!r}", v.name)
            used_shared.add(v.name)
        elif isinstance(v, Schedule):
            msg = _schedule_problem(v)
            if msg:
                err(d.line, msg, d.target)
        elif v < 0:
            err(d.line, "input concentration must be >= 0", d.target)
    for w in doc.wires:
        bad = [e for e in (w.source, w.target) if e not in names]
        for e in bad:
            err(w.line, f"dangling wire: undeclared neuron {e!r}", e)
        if bad:
            continue
        if driven.get((w.target, w.channel)) == "clamp":
            err(w.line, f"channel driven twice: {w.target}.{w.channel}", w.channel)
        driven[(w.target, w.channel)] = "wire"
        if w.gain is not None and w.gain < 0:
            err(w.line, "wire gain must be >= 0", fmt(w.gain))
    for p in doc.pins:
        if p.neuron not in names:
            err(p.line, f"undeclared neuron {p.neuron!r}", p.neuron)
        if p.value < 0:
            err(p.line, "pinned value must be >= 0", fmt(p.value))
    cyc = _find_cycle(doc)
    if cyc:
        err(doc.wires[0].line if doc.wires else 1,
            "cycle detected in wiring among: " + ", ".join(cyc))
    for name in shared:
        if name not in used_shared:
            out.append(ParseDiagnostic("warning", shared[name].line, 1,
                                       f"shared input {name!r} is never used", name))
    for s in doc.sweeps:
        out.extend(_check_sweep(s))
    return out


def _schedule_problem(s: Schedule) -> str | None:
    pts = s.points
    if not pts or pts[0][0] != 0:
        return "schedule must start at t = 0"
    if any(not t1 > t0 for (t0, _), (t1, _) in zip(pts, pts[1:])):
        return "schedule times must be strictly increasing"
    if any(v < 0 for _, v in pts):
        return "input concentration must be >= 0"
    return None


def _find_cycle(doc: NetworkDocument) -> list[str]:
    incoming: dict[str, set[str]] = {n.name: set() for n in doc.neurons}
    for w in doc.wires:
        if w.target in incoming and w.source in incoming:
            incoming[w.target].add(w.source)
    done: set[str] = set()
    remaining = dict(incoming)
    while remaining:
        ready = [n for n, s in remaining.items() if s <= done]
        if not ready:
            return sorted(remaining)
        for n in ready:
            done.add(n)
            del remaining[n]
    return []


def _check_sweep(s: SweepDecl) -> list[ParseDiagnostic]:
    out = []
    a = s.get("analysis")
    if a is None:
        return [ParseDiagnostic("error", s.line, 1, f"sweep {s.name!r} has no analysis", s.name)]
    if not isinstance(a, Ref) or a.name not in ANALYSES:
        tok = a.name if isinstance(a, Ref) else str(a)
        return [ParseDiagnostic("error", s.line, 1, "unknown analysis", tok)]
    allowed = set(_COMMON_SWEEP_KEYS) | set(SWEEP_KEYS[a.name])
    for k, _ in s.items:
        if k not in allowed:
            out.append(ParseDiagnostic("error", s.line, 1,
                                       f"key {k!r} not valid for analysis {a.name!r}", k))
    return out


# -- canonical writer ---------------------------------------------------------


def _fmt_value(v: Value) -> str:
    if isinstance(v, Ref):
        return v.name
    if isinstance(v, Schedule):
        return "{" + ", ".join(f"{fmt(t)}: {fmt(x)}" for t, x in v.points) + "}"
    if isinstance(v, tuple):
        return "[" + ", ".join(_fmt_value(x) for x in v) + "]"
    return fmt(v)


def serialize(doc: NetworkDocument) -> str:
    """Canonical text: fixed section order, declaration order within, LF endings."""
    blocks = []
    for n in doc.neurons:
        lines = [f"[neuron {n.name}]"]
        lines += [f"{k} = {fmt(v)}" for k, v in n.overrides]
        blocks.append(lines)
    if doc.inputs:
        blocks.append(["[inputs]"] + [f"{d.target} = {_fmt_value(d.value)}" for d in doc.inputs])
    if doc.wires:
        lines = ["[wires]"]
        for w in doc.wires:
            g = "" if w.gain is None else f" gain {fmt(w.gain)}"
            lines.append(f"wire {w.source}.out -> {w.target}.{w.channel}{g}")
        blocks.append(lines)
    if doc.pins:
        blocks.append(["[pins]"] + [f"{p.neuron}.{p.species} = {fmt(p.value)}" for p in doc.pins])
    if doc.integrator:
        blocks.append(["[integrator]"] + [f"{k} = {fmt(v)}" for k, v in doc.integrator])
    for s in doc.sweeps:
        blocks.append([f"[sweep {s.name}]"] + [f"{k} = {_fmt_value(v)}" for k, v in s.items])
    return "\n\n".join("\n".join(b) for b in blocks) + "\n"


# -- validation ---------------------------------------------------------------


def topological_order(doc: NetworkDocument) -> list[str]:
    """Neuron names by layer depth, ties broken by name."""
    incoming: dict[str, set[str]] = {n.name: set() for n in doc.neurons}
    for w in doc.wires:
        if w.target not in incoming or w.source not in incoming:
            bad = w.target if w.target not in incoming else w.source
            raise SpecificationError(f"dangling wire: undeclared neuron {bad!r}")
        incoming[w.target].add(w.source)
    depth: dict[str, int] = {}
    remaining = dict(incoming)
    while remaining:
        ready = sorted(n for n, s in remaining.items() if s <= depth.keys())
        if not ready:
            raise SpecificationError("cycle detected in wiring among: " + ", ".join(sorted(remaining)))
        for n in ready:
            depth[n] = 1 + max((depth[s] for s in remaining[n]), default=-1)
            del remaining[n]
    return sorted(depth, key=lambda n: (depth[n], n))


def _schedule(v) -> tuple[tuple[float, float], ...]:
    if isinstance(v, Schedule):
        return tuple((float(t), float(x)) for t, x in v.points)
    return ((0.0, float(v)),)


def validate(doc: NetworkDocument) -> NetworkSpec:
    """Resolve a document into a NetworkSpec.

    Neurons are ordered by layer (ties by name); clamps, wires and pins are
    sorted, so permuting declarations yields the same spec.
    """
    if not doc.neurons:
        raise SpecificationError("no neuron declared")
    order = topological_order(doc)
    decl = {n.name: n for n in doc.neurons}
    if len(decl) != len(doc.neurons):
        raise SpecificationError("duplicate neuron name")
    neurons = []
    for name in order:
        try:
            params = NeuronParameters().replace(**{k: float(v) for k, v in decl[name].overrides})
        except (ValueError, TypeError) as exc:
            raise SpecificationError(f"neuron {name}: {exc}") from None
        neurons.append(Neuron(name, params))
    shared = {d.target: d.value for d in doc.inputs if d.is_shared}
    clamps = []
    for d in doc.inputs:
        if d.is_shared:
            continue
        neuron, ch = d.target.split(".", 1)
        if isinstance(d.value, Ref):
            if d.value.name not in shared:
                raise SpecificationError(f"undeclared input {d.value.name!r}")
            clamps.append(Clamp(neuron, ch, _schedule(shared[d.value.name]), d.value.name))
        else:
            clamps.append(Clamp(neuron, ch, _schedule(d.value)))
    clamps.sort(key=lambda c: (c.neuron, c.channel))
    wires = sorted((Wire(w.source, w.target, w.channel, 1.0 if w.gain is None else float(w.gain))
                    for w in doc.wires), key=lambda w: (w.target, w.channel, w.source, w.gain))
    pins = sorted((Pin(p.neuron, "rep1" if p.species == "rep3" else p.species, float(p.value))
                   for p in doc.pins), key=lambda p: (p.neuron, p.species))
    return NetworkSpec(tuple(neurons), tuple(clamps), tuple(wires), tuple(pins))


def run_config(doc: NetworkDocument, **overrides) -> IntegrationConfig:
    """IntegrationConfig from the ``[integrator]`` section plus keyword overrides."""
    values = {k: v for k, v in doc.integrator}
    values.update({k: v for k, v in overrides.items() if v is not None})
    if "max_steps" in values:
        values["max_steps"] = int(values["max_steps"])
    try:
        return IntegrationConfig(**values)
    except ValueError as exc:
        raise SpecificationError(str(exc)) from None


def load(path) -> NetworkDocument:
    with open(path, "rb") as fh:
        return parse(fh.read())


__all__ = [
    "ANALYSES",
    "InputDecl",
    "NetworkDocument",
    "NeuronDecl",
    "ParseDiagnostic",
    "ParseError",
    "PinDecl",
    "Ref",
    "Schedule",
    "SweepDecl",
    "WireDecl",
    "check",
    "load",
    "parse",
    "run_config",
    "serialize",
    "topological_order",
    "validate",
]
