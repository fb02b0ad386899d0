import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grnneuron import (SPECIES, IntegrationConfig, NeuronParameters, NonConvergence, Pin,
                       StepFailure, Termination, integrate, network_rhs, networks,
                       single_neuron_spec, steady_state)
from grnneuron.analysis import toggle_fixed_points

# Resting state of the default neuron with all inputs at zero. Oracle: an
# independent hand-coded RHS integrated with scipy Radau (rtol 1e-12) to
# t = 1e6 s, then polished with fsolve.
GOLDEN_DEFAULT_REST = np.array([0.0, 0.0, 0.0, 0.0, 26.666666666666668, 13.333333333333334,
                                6.059012171726095, 3.6013968291426925, 0.0, 2.4381937219399186])

I = {s: i for i, s in enumerate(SPECIES)}


def test_ind2_closed_form(defaults):
    spec = single_neuron_spec(defaults)
    k, d = defaults.k_prod_Ind2, defaults.k_deg_Ind2
    for t in (5.0, 20.0, 60.0, 60.0 * 5 / 0.15):
        cfg = IntegrationConfig(t_end=t)
        tr = integrate(spec, None, cfg, stop_at_steady=False)
        assert tr.t_final == t
        want = k / d * (1 - math.exp(-d * t))
        assert tr.final[I["Ind2"]] == pytest.approx(want, rel=1e-5)
    assert tr.final[I["Ind2"]] == pytest.approx(2 / 0.15, rel=1e-5)


def test_out_saturates_with_rep1_pinned(defaults):
    spec = single_neuron_spec(defaults).with_pins([Pin("n1", "rep1", 0.0)])
    x = steady_state(spec)
    assert x[I["out"]] == pytest.approx(defaults.k_prod_out / defaults.k_deg_out, rel=1e-6)
    assert x[I["out"]] == pytest.approx(20.0, rel=1e-6)


def test_zero_system_is_fixed_immediately(defaults):
    # production rates must be positive, so the inert system holds every species at 0
    spec = single_neuron_spec(defaults).with_pins([Pin("n1", s, 0.0) for s in SPECIES])
    tr = integrate(spec)
    assert tr.termination is Termination.STEADY_STATE
    assert tr.t_final == 0.0 and np.all(tr.states == 0.0)
    np.testing.assert_array_equal(steady_state(spec), np.zeros(10))


def test_default_resting_state_golden(defaults):
    x = steady_state(single_neuron_spec(defaults))
    np.testing.assert_allclose(x, GOLDEN_DEFAULT_REST, rtol=1e-6, atol=1e-9)


def test_toggle_core_two_steady_states():
    spec = networks.spec("toggle")
    p = spec.params_of("n1")
    stable = [f for f in toggle_fixed_points(p) if f.stability.value == "StableNode"]
    finals = []
    for r1, r2 in ((14.0, 0.0), (0.0, 15.0)):
        x0 = np.zeros(10)
        x0[I["rep1"]], x0[I["rep2"]] = r1, r2
        finals.append(steady_state(spec, x0))
    got = sorted((f[I["rep1"]], f[I["rep2"]]) for f in finals)
    want = sorted((f.rep1, f.rep2) for f in stable)
    assert len(want) == 2
    np.testing.assert_allclose(got, want, rtol=1e-6, atol=1e-6)


def _smooth_case(calibrated):
    spec = single_neuron_spec(calibrated, IPTG=20.0, aTc=20.0, fA=0.5, fB=0.5, IndT=0.3)
    x0 = np.linspace(0.5, 5.0, 10)
    return spec, x0


def test_convergence_order(calibrated):
    """Step-size-limited runs on a smooth window; reference at rel_tol 1e-10."""
    spec, x0 = _smooth_case(calibrated)
    T = 40.0
    ref = integrate(spec, x0, IntegrationConfig(t_end=T, rel_tol=1e-10, abs_tol=1e-14,
                                                max_step=0.05), stop_at_steady=False).final
    errs = []
    hs = (2.0, 1.0, 0.5, 0.25)
    for h in hs:
        cfg = IntegrationConfig(t_end=T, rel_tol=1.0, abs_tol=1.0, max_step=h)
        tr = integrate(spec, x0, cfg, stop_at_steady=False)
        # every step accepted at the cap, apart from the heuristic first step
        assert tr.rejected == 0 and tr.accepted <= round(T / h) + 1
        assert np.allclose(np.diff(tr.t)[1:-1], h)
        errs.append(np.max(np.abs(tr.final - ref)))
    orders = np.log2(np.array(errs[:-1]) / np.array(errs[1:]))
    assert np.all(orders >= 4.0), orders


def test_error_decreases_with_tolerance(calibrated):
    spec, x0 = _smooth_case(calibrated)
    T = 200.0
    ref = integrate(spec, x0, IntegrationConfig(t_end=T, rel_tol=1e-12, abs_tol=1e-15),
                    stop_at_steady=False).final
    errs = []
    for tol in (1e-4, 1e-6, 1e-8):
        cfg = IntegrationConfig(t_end=T, rel_tol=tol, abs_tol=tol * 1e-3)
        errs.append(np.max(np.abs(integrate(spec, x0, cfg, stop_at_steady=False).final - ref)))
    assert errs[0] > errs[1] > errs[2]


def test_event_restart(calibrated):
    spec = single_neuron_spec(calibrated, fA=0.5, fB=0.5).with_inputs(
        {("n1", "IPTG"): [(0.0, 0.0), (100.0, 50.0)]})
    tr = integrate(spec, None, IntegrationConfig(t_end=400.0), stop_at_steady=False)
    assert 100.0 in tr.t
    assert not np.any((tr.t[:-1] < 100.0) & (tr.t[1:] > 100.0))
    x = tr.states[np.flatnonzero(tr.t == 100.0)[0]]
    diff = network_rhs(x, spec, 100.0) - network_rhs(x, spec, 99.0)
    assert diff[I["LacI"]] == pytest.approx(-calibrated.k_seq_LacI * x[I["LacI"]] * 50.0)
    assert np.count_nonzero(diff) == 1


def test_steady_state_waits_for_last_event(defaults):
    spec = single_neuron_spec(defaults).with_inputs({("n1", "IndT"): [(0.0, 0.0), (5000.0, 1.0)]})
    tr = integrate(spec)
    assert tr.termination is Termination.STEADY_STATE and tr.t_final > 5000.0


def test_determinism(or_spec):
    a = integrate(or_spec)
    b = integrate(or_spec)
    np.testing.assert_array_equal(a.t, b.t)
    np.testing.assert_array_equal(a.states, b.states)
    assert a.to_csv() == b.to_csv()


def test_trajectory_invariants(or_spec):
    tr = integrate(or_spec)
    assert tr.t[0] == 0.0 and np.all(np.diff(tr.t) > 0)
    assert np.all(tr.states >= 0)
    assert tr.accepted > 0 and tr.rhs_evals > tr.accepted


@settings(max_examples=40)
@given(st.lists(st.floats(0.2, 5.0), min_size=5, max_size=5),
       st.lists(st.floats(0.0, 60.0), min_size=5, max_size=5),
       st.lists(st.floats(0.0, 30.0), min_size=10, max_size=10))
def test_positivity(scales, inputs, x0):
    names = ("k_prodC", "k_deg_rep1", "k_seq_rep1", "k_seq_LacI", "k_prod_out")
    p = NeuronParameters().replace(**{n: getattr(NeuronParameters(), n) * s
                                      for n, s in zip(names, scales)})
    spec = single_neuron_spec(p, **dict(zip(("IPTG", "aTc", "IndT", "fA", "fB"), inputs)))
    tr = integrate(spec, np.array(x0), IntegrationConfig(t_end=300.0, rel_tol=1e-6))
    assert np.all(tr.states >= 0)


def test_nonconvergence_reports_norm(defaults):
    with pytest.raises(NonConvergence) as exc:
        steady_state(single_neuron_spec(defaults), None, IntegrationConfig(t_end=5.0))
    assert exc.value.deriv_norm > 0 and exc.value.state.shape == (10,)


def test_step_budget_failure(defaults):
    tr = integrate(single_neuron_spec(defaults), None, IntegrationConfig(max_steps=5))
    assert tr.termination is Termination.STEP_FAILURE and "budget" in tr.message
    with pytest.raises(StepFailure):
        steady_state(single_neuron_spec(defaults), None, IntegrationConfig(max_steps=5))


def test_csv_layout(or_spec):
    tr = integrate(or_spec, None, IntegrationConfig(t_end=100.0), stop_at_steady=False)
    lines = tr.to_csv(cadence=10.0).splitlines()
    header = lines[0].split(",")
    assert header[0] == "t" and header[1] == "n1.ActX" and header[-1] == "n3.out"
    assert len(header) == 31
    assert [float(r.split(",")[0]) for r in lines[1:]] == [10.0 * k for k in range(11)]


@pytest.mark.parametrize("kw", [dict(rel_tol=0.0), dict(t_end=-1.0), dict(abs_tol=-1e-9),
                                dict(steady_state_window=-1.0)])
def test_config_validation(kw):
    with pytest.raises(ValueError):
        IntegrationConfig(**kw)


def test_x0_validation(defaults):
    spec = single_neuron_spec(defaults)
    with pytest.raises(ValueError):
        integrate(spec, -np.ones(10))
    with pytest.raises(ValueError):
        integrate(spec, np.zeros(3))
