"""Acceptance criteria 1-10, each at its stated tolerance and time budget.

Run alone with ``pytest tests/test_acceptance.py -s`` (or execute this file);
one PASS/FAIL line per criterion is printed and repeated in the terminal
summary.
"""

import time

import numpy as np
import pytest
from hypothesis import HealthCheck, given, settings

from grnneuron import IntegrationConfig, Pin, integrate, network_rhs, networks
from grnneuron import netdef as nd
from grnneuron import single_neuron_spec, steady_state
from grnneuron.analysis import (Stability, decision_boundary, detect_hazards, gate_truth_table,
                                resting_state, toggle_fixed_points, transfer_function)
from grnneuron.analysis.sweeps import boundary_cells, distance_from

import reference
from strategies import documents, fuzz_inputs

# smallest state seen by any criterion below (criterion 9 positivity)
MIN_STATE = [np.inf]


def seen(states):
    MIN_STATE[0] = min(MIN_STATE[0], float(np.min(states)))
    return states


class Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.s = time.perf_counter() - self.t0


def test_criterion_01_state_dimension(report):
    with Timer() as tm:
        spec = nd.validate(networks.load("two_layer_or"))
        d = network_rhs(np.zeros(spec.dim), spec, 0.0)
    ok = spec.dim == 30 and d.shape == (30,) and tm.s < 1.0
    report(1, ok, f"dim={spec.dim} (want 30)", tm.s)
    assert ok


def test_criterion_02_bistability(report, defaults):
    with Timer() as tm:
        fps = toggle_fixed_points(defaults)
        brute = np.array(reference.brute_force_fixed_points(defaults, 2000))
    kinds = [f.stability for f in fps]
    pts = np.array([[f.rep1, f.rep2] for f in fps])
    err = np.max(np.abs(brute - pts)) if brute.shape == pts.shape else np.inf
    ok = (len(fps) == 3 and kinds.count(Stability.STABLE_NODE) == 2
          and kinds.count(Stability.SADDLE) == 1 and err <= 1e-6 and tm.s < 30)
    report(2, ok, f"{len(fps)} fixed points {[k.value for k in kinds]}, "
                  f"max |analytic - brute force| = {err:.1e} nM", tm.s)
    assert ok


def test_criterion_03_saturation(report, defaults):
    with Timer() as tm:
        spec = single_neuron_spec(defaults).with_pins([Pin("n1", "rep1", 0.0)])
        out = seen(steady_state(spec))[9]
    want = defaults.k_prod_out / defaults.k_deg_out
    ok = abs(out - want) <= 0.02 * want and tm.s < 5
    report(3, ok, f"out={out:.6f} nM vs {want:g} nM", tm.s)
    assert ok


def test_criterion_04_threshold_control(report):
    spec = networks.spec("single_neuron")
    indt = [0.0, 0.2, 0.4, 0.6, 0.7]
    with Timer() as tm:
        curves = transfer_function(spec, "Ind1", np.linspace(0, 12, 121), indt)
    for c in curves:
        seen(c.out)
    th = np.array([c.threshold if c.threshold is not None else np.nan for c in curves])
    slopes = np.array([c.max_slope for c in curves])
    spread = (slopes.max() - slopes.min()) / slopes.max()
    monotone = bool(np.all(np.diff(th) < 0))
    ok = monotone and spread < 0.20 and all(c.converged.all() for c in curves) and tm.s < 300
    report(4, ok, f"thresholds {np.round(th, 3).tolist()} strictly "
                  f"{'decreasing' if monotone else 'NOT monotone'}, max-slope spread "
                  f"{100 * spread:.1f}%", tm.s)
    assert ok


def test_criterion_05_linear_classification(report):
    spec = networks.spec("single_neuron")
    with Timer() as tm:
        r = decision_boundary(spec, "IPTG", "aTc", np.linspace(0, 50, 64))
    seen(r.states)
    sep = r.separation_ratio(min_distance=2)
    ok = (r.fit is not None and r.fit.r2 >= 0.98 and sep is not None and sep >= 10
          and r.converged.all() and tm.s < 600)
    report(5, ok, f"64x64: R^2={r.fit.r2:.4f}, separation {sep:.0f}x, line "
                  f"{r.fit.a:.3f}*IPTG + {r.fit.b:.3f}*aTc = {r.fit.c:.2f}", tm.s)
    assert ok


@pytest.mark.parametrize("gate", ["or", "and"])
def test_criterion_06_two_layer_classification(report, gate):
    spec = networks.spec(f"two_layer_{gate}")
    with Timer() as tm:
        r = decision_boundary(spec, "x", "y", np.linspace(0, 50, 64))
    seen(r.states)
    c1, c2 = r.classes_of("n1"), r.classes_of("n2")
    want = (c1 | c2) if gate == "or" else (c1 & c2)
    interior = ((distance_from(boundary_cells(c1)) > 1) & (distance_from(boundary_cells(c2)) > 1)
                & r.converged)
    agree = float(np.mean(r.classes[interior] == want[interior]))
    ok = agree >= 0.95 and tm.s < 1200
    line = (f"{100 * agree:.2f}% of {int(interior.sum())} interior cells "
            f"match the {'union' if gate == 'or' else 'intersection'}")
    report(f"6 {gate.upper()}", ok, line, tm.s)
    assert ok


@pytest.mark.parametrize("gate, bits", [("or", (0, 1, 1, 1)), ("and", (0, 0, 0, 1))])
def test_criterion_07_gate_tables(report, gate, bits):
    spec = networks.spec(f"two_layer_{gate}")
    t_end = IntegrationConfig().t_end
    with Timer() as tm:
        table = gate_truth_table(spec)
        table2 = gate_truth_table(spec, cfg=IntegrationConfig(t_end=2 * t_end))
        # full horizon, no early stop: the class at 2x t_end must not drift
        x0 = resting_state(spec, ["x", "y"])
        late = []
        for corner in ((0, 0), (0, 50), (50, 0), (50, 50)):
            s = spec.with_source("x", corner[0]).with_source("y", corner[1])
            tr = integrate(s, x0, IntegrationConfig(t_end=2 * t_end), stop_at_steady=False)
            late.append(int(seen(tr.final)[spec.index("n3", "out")] >= table.threshold))
    ok = table.bits == bits and table2.bits == bits and tuple(late) == bits and tm.s < 120
    report(f"7 {gate.upper()}", ok,
           f"{table.bits} ({table.name}); 2x t_end {table2.bits}, "
           f"free run to {2 * t_end:g} s {tuple(late)}", tm.s)
    assert ok


def test_criterion_08_hazard(report, or_spec):
    with Timer() as tm:
        tr = integrate(or_spec)
        rep = detect_hazards(tr, "n3.out", 10.0)
    seen(tr.states)
    kinds = {n: (rep.overshoot_of(f"{n}.rep2").kind if rep and rep.overshoot_of(f"{n}.rep2")
                 else None) for n in ("n1", "n2")}
    glitches = len(rep.glitches) if rep else 0
    ok = all(k == "rise-then-fall" for k in kinds.values()) and glitches == 0 and tm.s < 120
    report(8, ok, f"rep2 transients {kinds}, n3.out double crossings: {glitches}", tm.s)
    assert ok


def test_criterion_09_numerics(report, calibrated):
    with Timer() as tm:
        spec = single_neuron_spec(calibrated, IPTG=20.0, aTc=20.0, fA=0.5, fB=0.5, IndT=0.3)
        x0 = np.linspace(0.5, 5.0, 10)
        T = 40.0
        ref = integrate(spec, x0, IntegrationConfig(t_end=T, rel_tol=1e-10, abs_tol=1e-14,
                                                    max_step=0.05), stop_at_steady=False).final
        errs = []
        for h in (2.0, 1.0, 0.5, 0.25):
            tr = integrate(spec, x0, IntegrationConfig(t_end=T, rel_tol=1.0, abs_tol=1.0,
                                                       max_step=h), stop_at_steady=False)
            seen(tr.states)
            errs.append(np.max(np.abs(tr.final - ref)))
        order = float(np.min(np.log2(np.array(errs[:-1]) / np.array(errs[1:]))))

        two = networks.spec("two_layer_or")
        grid = np.linspace(0, 50, 16)
        csvs = {w: decision_boundary(two, "x", "y", grid, workers=w).to_csv() for w in (1, 2, 3)}
        same = len(set(csvs.values())) == 1
    ok = order >= 4 and MIN_STATE[0] >= 0 and same
    report(9, ok, f"observed order {order:.2f}; min state {MIN_STATE[0]:.3g}; "
                  f"workers 1/2/3 byte-identical: {same}", tm.s)
    assert ok


def test_criterion_10_parser(report):
    failures = []

    @settings(max_examples=1000, deadline=None, database=None,
              suppress_health_check=[HealthCheck.too_slow])
    @given(documents())
    def round_trip(doc):
        text = nd.serialize(doc)
        back = nd.parse(text)
        if back != doc or nd.serialize(back) != text:
            failures.append(text)
        assert back == doc

    with Timer() as tm:
        round_trip()
        slowest = crashes = 0.0
        rng = np.random.default_rng(10)
        for data in fuzz_inputs(rng, 100_000, kinds=("bytes",)):
            t0 = time.perf_counter()
            try:
                nd.parse(data)
            except nd.ParseError:
                pass
            except Exception:
                crashes += 1
            slowest = max(slowest, time.perf_counter() - t0)
    ok = not failures and crashes == 0 and slowest < 1.0
    report(10, ok, f"1000 round trips ({len(failures)} failures); 1e5 random byte inputs: "
                   f"{int(crashes)} crashes, slowest parse {1e3 * slowest:.1f} ms", tm.s)
    assert ok


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-s"]))
