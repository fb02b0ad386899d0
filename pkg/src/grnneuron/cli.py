"""Command-line front end.

Exit codes: 0 success, 1 I/O, 2 parse, 3 validation, 4 numeric failure.
"""

from __future__ import annotations

import argparse
import hashlib
import os
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from ._layout import CHANNELS
from .analysis import (CalibrationError, calibrate_two_layer, decision_boundary, detect_hazards,
                       gate_truth_table, toggle_fixed_points, toggle_nullclines, transfer_csv,
                       transfer_function)
from .analysis.sweeps import initial_state
from .errors import NumericError, SpecificationError, StepFailure
from .integrator import Termination, integrate, steady_state
from .netdef import PARAM_NAMES, NetworkDocument, ParseError, Ref, parse, run_config, validate
from .output import csv_text, dumps_json

OUT_DIR_ENV = "GRN_NEURON_OUT_DIR"
DEFAULT_OUT_DIR = "grn-out"
EXIT_IO, EXIT_PARSE, EXIT_VALIDATION, EXIT_NUMERIC = 1, 2, 3, 4

VALID_RANGE = (100.0, 2000.0)  # nM; where the Hill approximation is expected to hold


class CLIError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


# -- helpers ------------------------------------------------------------------


def _number(text: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise CLIError(EXIT_VALIDATION, f"not a number: {text!r}") from None


def apply_sets(doc: NetworkDocument, sets: list[str]) -> NetworkDocument:
    """Apply ``--set`` items.

    ``neuron.param=v`` overrides one neuron, ``param=v`` every neuron;
    ``neuron.channel=v`` clamps a channel and ``name=v`` sets a shared input.
    """
    shared = {d.target for d in doc.inputs if d.is_shared}
    for item in sets:
        key, sep, val = item.partition("=")
        key = key.strip()
        if not sep or not key:
            raise CLIError(EXIT_VALIDATION, f"--set expects key=value, got {item!r}")
        v = _number(val)
        head, _, tail = key.rpartition(".")
        try:
            if tail in PARAM_NAMES:
                for n in doc.neurons if not head else [doc.neuron(head)]:
                    doc = doc.with_overrides(n.name, **{tail: v})
            elif head and tail in CHANNELS:
                doc.neuron(head)
                doc = doc.with_input(key, v)
            elif not head and tail in shared:
                doc = doc.with_input(key, v)
            else:
                raise CLIError(EXIT_VALIDATION, f"--set: unknown key {key!r}")
        except KeyError as exc:
            raise CLIError(EXIT_VALIDATION, f"--set: undeclared neuron {exc.args[0]!r}") from None
    return doc


def _sweep_opts(doc: NetworkDocument, analysis: str, name: str | None) -> dict:
    if name is not None:
        try:
            s = doc.sweep(name)
        except KeyError:
            raise CLIError(EXIT_VALIDATION, f"no sweep named {name!r}") from None
        if s.analysis != analysis:
            raise CLIError(EXIT_VALIDATION, f"sweep {name!r} is a {s.analysis!r} analysis")
        items = s.items
    else:
        items = next((s.items for s in doc.sweeps if s.analysis == analysis), ())
    out = {}
    for k, v in items:
        if isinstance(v, Ref):
            v = v.name
        elif isinstance(v, tuple):
            v = [x.name if isinstance(x, Ref) else x for x in v]
        out[k] = v
    return out


def _pick(flag, opts: dict, key: str, default=None):
    return flag if flag is not None else opts.get(key, default)


def _warn_range(spec, states: np.ndarray) -> None:
    lo, hi = VALID_RANGE
    vals = np.asarray(states).reshape(-1, spec.dim)
    outside = int(np.count_nonzero((vals < lo) | (vals > hi)))
    if outside:
        print(f"warning: {outside} of {vals.size} steady-state concentrations lie outside "
              f"{lo:g}-{hi:g} nM, where the Hill approximation may not hold", file=sys.stderr)


class Run:
    """Collects outputs and writes the manifest."""

    def __init__(self, args, raw: bytes, spec, cfg, opts: dict):
        self.args = args
        self.out_dir = Path(args.out_dir or os.environ.get(OUT_DIR_ENV) or DEFAULT_OUT_DIR)
        self.sha = hashlib.sha256(raw).hexdigest()
        self.spec, self.cfg, self.opts = spec, cfg, opts
        self.outputs: list[str] = []
        self.t0 = time.perf_counter()
        try:
            self.out_dir.mkdir(parents=True, exist_ok=True)
        except OSError as exc:
            raise CLIError(EXIT_IO, f"cannot create output directory: {exc}") from None

    def write(self, name: str, text: str) -> Path:
        path = self.out_dir / name
        try:
            path.write_text(text, encoding="utf-8", newline="\n")
        except OSError as exc:
            raise CLIError(EXIT_IO, f"cannot write {path}: {exc}") from None
        self.outputs.append(str(path))
        print(path)
        return path

    def finish(self, extra: dict | None = None) -> None:
        cfg = self.cfg
        manifest = {
            "tool": "grn-neuron",
            "version": __version__,
            "command": self.args.command,
            "input": {"path": str(self.args.net), "sha256": self.sha},
            "config": {
                "integrator": {f: getattr(cfg, f) for f in cfg.__dataclass_fields__},
                "sets": list(self.args.set),
                "workers": self.args.workers,
                "analysis": self.opts,
                **(extra or {}),
            },
            "wall_clock_s": time.perf_counter() - self.t0,
            "outputs": list(self.outputs),
        }
        self.write(f"{self.args.command}_manifest.json", dumps_json(manifest))


# -- commands -----------------------------------------------------------------


def _initial(spec, opts, args, axes=(), low=0.0, cfg=None, default="zero"):
    mode = _pick(getattr(args, "initial", None), opts, "initial", default)
    return initial_state(spec, list(axes), mode, low, cfg)


def cmd_simulate(run: Run, args) -> int:
    spec, cfg, opts = run.spec, run.cfg, run.opts
    x0 = _initial(spec, opts, args, cfg=cfg)
    traj = integrate(spec, x0, cfg, stop_at_steady=False)
    cadence = float(_pick(args.cadence, opts, "cadence", 10.0))
    run.write("trajectory.csv", traj.to_csv(cadence=cadence))
    _warn_range(spec, traj.final)
    run.finish({"termination": traj.termination.value, "accepted": traj.accepted,
                "rejected": traj.rejected, "rhs_evals": traj.rhs_evals})
    if traj.termination is Termination.STEP_FAILURE:
        raise CLIError(EXIT_NUMERIC, traj.message)
    return 0


def cmd_steady(run: Run, args) -> int:
    spec, cfg, opts = run.spec, run.cfg, run.opts
    x0 = _initial(spec, opts, args, cfg=cfg)
    x = steady_state(spec, x0, cfg)
    run.write("steady.json", dumps_json(dict(zip(spec.labels(), x.tolist()))))
    _warn_range(spec, x)
    run.finish()
    return 0


def cmd_nullcline(run: Run, args) -> int:
    spec, opts = run.spec, run.opts
    neuron = _pick(args.neuron, opts, "neuron", spec.neurons[0].name)
    p = spec.params_of(neuron)
    r1, r2_of_r1, r2, r1_of_r2 = toggle_nullclines(p)
    rows = [("rep2", a, b) for a, b in zip(r1, r2_of_r1)]
    rows += [("rep1", a, b) for a, b in zip(r1_of_r2, r2)]
    run.write("nullclines.csv", csv_text(("nullcline", "rep1", "rep2"), rows))
    fps = toggle_fixed_points(p)
    run.write("fixed_points.json", dumps_json([f.to_dict() for f in fps]))
    run.finish({"neuron": neuron})
    return 0


def cmd_transfer(run: Run, args) -> int:
    spec, cfg, opts = run.spec, run.cfg, run.opts
    drive = _pick(args.drive, opts, "drive", "Ind1")
    lo = float(_pick(args.min, opts, "min", 0.0))
    hi = float(_pick(args.max, opts, "max", 12.0))
    n = int(_pick(args.n, opts, "n", 121))
    indt = _pick(args.indt, opts, "IndT", [0.0])
    if n < 2 or not hi > lo:
        raise CLIError(EXIT_VALIDATION, "transfer sweep needs n >= 2 and max > min")
    curves = transfer_function(spec, drive, np.linspace(lo, hi, n), [float(v) for v in indt],
                               neuron=_pick(args.neuron, opts, "neuron"), cfg=cfg,
                               workers=args.workers,
                               initial=_pick(args.initial, opts, "initial", "rest"))
    run.write("transfer.csv", transfer_csv(curves))
    run.write("transfer.json", dumps_json([c.summary() for c in curves]))
    run.finish()
    return 0


def cmd_boundary(run: Run, args) -> int:
    spec, cfg, opts = run.spec, run.cfg, run.opts
    two = len(spec.sources()) >= 2
    a1 = _pick(args.axis1, opts, "axis1", "x" if two else "IPTG")
    a2 = _pick(args.axis2, opts, "axis2", "y" if two else "aTc")
    lo = float(_pick(args.min, opts, "min", 0.0))
    hi = float(_pick(args.max, opts, "max", 50.0))
    n = int(_pick(args.n, opts, "n", 64))
    if not hi > lo:
        raise CLIError(EXIT_VALIDATION, "boundary sweep needs max > min")
    res = decision_boundary(spec, a1, a2, np.linspace(lo, hi, n),
                            output=_pick(args.output, opts, "output"),
                            threshold=_pick(args.threshold, opts, "threshold"), cfg=cfg,
                            workers=args.workers,
                            initial=_pick(args.initial, opts, "initial", "rest"))
    run.write("boundary.csv", res.to_csv())
    run.write("boundary.json", dumps_json(res.summary()))
    run.finish()
    return 0


def cmd_gate(run: Run, args) -> int:
    spec, cfg, opts = run.spec, run.cfg, run.opts
    inputs = tuple(_pick(args.inputs, opts, "inputs", ["x", "y"]))
    if len(inputs) != 2:
        raise CLIError(EXIT_VALIDATION, "gate needs exactly two inputs")
    low = float(_pick(args.low, opts, "low", 0.0))
    high = float(_pick(args.high, opts, "high", 50.0))
    extra = {}
    if args.calibrate:
        spec, cal = calibrate_two_layer(spec, args.calibrate, inputs, high=high, low=low,
                                        margin=args.margin, cfg=cfg)
        extra["calibration"] = cal.to_dict()
        run.write("calibration.json", dumps_json(cal.to_dict()))
    table = gate_truth_table(spec, inputs, low, high,
                             class_threshold=_pick(args.threshold, opts, "threshold"),
                             output=_pick(args.output, opts, "output"), cfg=cfg,
                             initial=_pick(args.initial, opts, "initial", "rest"),
                             workers=args.workers)
    run.write("truth_table.json", dumps_json(table.to_dict()))
    run.finish(extra)
    return 0


def cmd_hazard(run: Run, args) -> int:
    spec, cfg, opts = run.spec, run.cfg, run.opts
    output = _pick(args.output, opts, "output", spec.neurons[-1].name)
    label = output if "." in output else f"{output}.out"
    p = spec.params_of(label.split(".")[0])
    thr = float(_pick(args.threshold, opts, "threshold", 0.5 * p.k_prod_out / p.k_deg_out))
    x0 = _initial(spec, opts, args, cfg=cfg)
    traj = integrate(spec, x0, cfg)
    if traj.termination is Termination.STEP_FAILURE:
        raise StepFailure(traj.message)
    settle = _pick(args.settle_time, opts, "settle_time")
    report = detect_hazards(traj, label, thr, None if settle is None else float(settle),
                            watch=_pick(args.watch, opts, "watch"))
    run.write("trajectory.csv", traj.to_csv(cadence=1.0))
    body = {"output": label, "threshold": thr, "glitches": [], "overshoots": []}
    if report is not None:
        body = report.to_dict()
    body["termination"] = traj.termination.value
    run.write("hazard.json", dumps_json(body))
    _warn_range(spec, traj.final)
    run.finish()
    return 0


COMMANDS = {
    "simulate": cmd_simulate,
    "steady": cmd_steady,
    "nullcline": cmd_nullcline,
    "transfer": cmd_transfer,
    "boundary": cmd_boundary,
    "gate": cmd_gate,
    "hazard": cmd_hazard,
}


# -- argument parsing ---------------------------------------------------------


def _float_list(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--net", required=True, help="network definition (.grn)")
    common.add_argument("--out-dir", default=None,
                        help=f"output directory (default ${OUT_DIR_ENV} or ./{DEFAULT_OUT_DIR})")
    common.add_argument("--set", action="append", default=[], metavar="K=V",
                        help="override: [neuron.]param=v, neuron.channel=v or input=v")
    common.add_argument("--workers", type=int, default=1, help="worker processes for sweeps")
    common.add_argument("--tol", type=float, default=None, help="relative tolerance")
    common.add_argument("--t-end", type=float, default=None, help="integration horizon (s)")
    common.add_argument("--sweep", default=None, help="named [sweep] block to take settings from")
    common.add_argument("--initial", choices=("rest", "zero"), default=None,
                        help="initial state: resting state or all zero")

    ap = argparse.ArgumentParser(prog="grn-neuron", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", parents=[common], help="transient trajectory CSV")
    p.add_argument("--cadence", type=float, default=None, help="CSV sample spacing (s)")
    sub.add_parser("steady", parents=[common], help="steady state JSON")
    p = sub.add_parser("nullcline", parents=[common], help="toggle nullclines and fixed points")
    p.add_argument("--neuron", default=None)
    p = sub.add_parser("transfer", parents=[common], help="transfer curves over IndT values")
    p.add_argument("--neuron", default=None)
    p.add_argument("--drive", default=None, help="drive axis, e.g. Ind1 or IPTG")
    p.add_argument("--min", type=float, default=None)
    p.add_argument("--max", type=float, default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--indt", type=_float_list, default=None, help="comma-separated IndT values")
    p = sub.add_parser("boundary", parents=[common], help="two-input classification sweep")
    p.add_argument("--axis1", default=None)
    p.add_argument("--axis2", default=None)
    p.add_argument("--min", type=float, default=None)
    p.add_argument("--max", type=float, default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--threshold", type=float, default=None)
    p.add_argument("--output", default=None, help="neuron whose out is classified")
    p = sub.add_parser("gate", parents=[common], help="truth table over input corners")
    p.add_argument("--inputs", type=lambda s: s.split(","), default=None)
    p.add_argument("--low", type=float, default=None)
    p.add_argument("--high", type=float, default=None)
    p.add_argument("--threshold", type=float, default=None)
    p.add_argument("--output", default=None)
    p.add_argument("--calibrate", choices=("or", "and", "OR", "AND"), default=None,
                   help="first match the output neuron's threshold for this gate")
    p.add_argument("--margin", type=float, default=0.25)
    p = sub.add_parser("hazard", parents=[common], help="transient glitch report")
    p.add_argument("--output", default=None, help="neuron or label to watch")
    p.add_argument("--threshold", type=float, default=None)
    p.add_argument("--settle-time", type=float, default=None)
    p.add_argument("--watch", type=lambda s: s.split(","), default=None)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        try:
            raw = Path(args.net).read_bytes()
        except OSError as exc:
            raise CLIError(EXIT_IO, f"cannot read {args.net}: {exc.strerror or exc}") from None
        try:
            doc = parse(raw)
        except ParseError as exc:
            for d in exc.diagnostics:
                print(f"{args.net}:{d}", file=sys.stderr)
            return EXIT_PARSE
        try:
            doc = apply_sets(doc, args.set)
            spec = validate(doc)
            cfg = run_config(doc, t_end=args.t_end, rel_tol=args.tol)
        except (SpecificationError, ValueError) as exc:
            raise CLIError(EXIT_VALIDATION, str(exc)) from None
        if args.workers < 1:
            raise CLIError(EXIT_VALIDATION, "--workers must be >= 1")
        opts = _sweep_opts(doc, args.command, args.sweep)
        run = Run(args, raw, spec, cfg, opts)
        try:
            return COMMANDS[args.command](run, args)
        except NumericError as exc:
            raise CLIError(EXIT_NUMERIC, str(exc)) from None
        except (SpecificationError, CalibrationError, ValueError) as exc:
            raise CLIError(EXIT_VALIDATION, str(exc)) from None
    except CLIError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
