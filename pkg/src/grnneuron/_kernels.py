"""Compiled right-hand side and Dormand-Prince 5(4) stepping loop.

Everything here works on flat float64 arrays so numba can compile it; the
Python-facing wrappers live in ``core`` and ``integrator``.
"""

import numpy as np
from numba import njit

from ._layout import N_SPECIES, PARAM_ORDER

_P = {name: i for i, name in enumerate(PARAM_ORDER)}

ACTX, ACTY, LACI, TETR, IND1, IND2, REP2, REP1, ACTC, OUT = range(N_SPECIES)
IPTG, ATC, INDT, FA, FB = range(5)

KPA = _P["k_prodA"]
KPB = _P["k_prodB"]
KPC = _P["k_prodC"]
KPD = _P["k_prodD"]
KPE = _P["k_prodE"]
KP_ACTX = _P["k_prod_ActX"]
KP_ACTY = _P["k_prod_ActY"]
KP_LACI = _P["k_prod_LacI"]
KP_TETR = _P["k_prod_TetR"]
KP_IND2 = _P["k_prod_Ind2"]
KP_OUT = _P["k_prod_out"]
KD_ACTX = _P["k_deg_ActX"]
KD_ACTY = _P["k_deg_ActY"]
KD_LACI = _P["k_deg_LacI"]
KD_TETR = _P["k_deg_TetR"]
KD_IND1 = _P["k_deg_Ind1"]
KD_IND2 = _P["k_deg_Ind2"]
KD_REP2 = _P["k_deg_rep2"]
KD_REP1 = _P["k_deg_rep1"]
KD_ACTC = _P["k_deg_ActC"]
KD_OUT = _P["k_deg_out"]
KS_LACI = _P["k_seq_LacI"]
KS_TETR = _P["k_seq_TetR"]
KS_REP1 = _P["k_seq_rep1"]
KS_REP2 = _P["k_seq_rep2"]
K_FA = _P["K_fA"]
K_FB = _P["K_fB"]
K_ACTX = _P["K_ActX"]
K_ACTY = _P["K_ActY"]
K_LACI = _P["K_LacI"]
K_TETR = _P["K_TetR"]
K_INDT = _P["K_IndT"]
K_ACTC = _P["K_ActC"]
K_REP1 = _P["K_rep1"]
K_REP2 = _P["K_rep2"]
K_REP3 = _P["K_rep3"]
N_FA = _P["n_fA"]
N_FB = _P["n_fB"]
N_ACTX = _P["n_ActX"]
N_ACTY = _P["n_ActY"]
N_LACI = _P["n_LacI"]
N_TETR = _P["n_TetR"]
N_INDT = _P["n_IndT"]
N_ACTC = _P["n_ActC"]
N_REP1 = _P["n_rep1"]
N_REP2 = _P["n_rep2"]
N_REP3 = _P["n_rep3"]

# status codes returned by dopri_segment
REACHED_END = 0
STEADY = 1
UNDERFLOW = 2
NONFINITE = 3
TOO_MANY_STEPS = 4


@njit(cache=True)
def hill_act(x, K, n):
    # 1/(1 + (K/x)^n) avoids inf/inf for large x
    if x <= 0.0:
        return 0.0
    return 1.0 / (1.0 + (K / x) ** n)


@njit(cache=True)
def hill_rep(x, K, n):
    if x <= 0.0:
        return 1.0
    return 1.0 / (1.0 + (x / K) ** n)


@njit(cache=True)
def neuron_deriv(s, p, ch, d):
    """Derivatives of one neuron's ten species, written into ``d``."""
    actx = s[ACTX]
    acty = s[ACTY]
    laci = s[LACI]
    tetr = s[TETR]
    ind1 = s[IND1]
    ind2 = s[IND2]
    rep2 = s[REP2]
    rep1 = s[REP1]
    actc = s[ACTC]
    out = s[OUT]

    d[ACTX] = p[KP_ACTX] * hill_act(ch[FA], p[K_FA], p[N_FA]) - p[KD_ACTX] * actx
    d[LACI] = (p[KP_LACI] * hill_act(actx, p[K_ACTX], p[N_ACTX])
               - p[KD_LACI] * laci - p[KS_LACI] * laci * ch[IPTG])
    d[ACTY] = p[KP_ACTY] * hill_act(ch[FB], p[K_FB], p[N_FB]) - p[KD_ACTY] * acty
    d[TETR] = (p[KP_TETR] * hill_act(acty, p[K_ACTY], p[N_ACTY])
               - p[KD_TETR] * tetr - p[KS_TETR] * tetr * ch[ATC])
    d[IND1] = (p[KPA] * hill_rep(laci, p[K_LACI], p[N_LACI])
               + p[KPB] * hill_rep(tetr, p[K_TETR], p[N_TETR])
               - p[KD_IND1] * ind1)
    d[IND2] = p[KP_IND2] - p[KD_IND2] * ind2
    # hybrid promoter: OR(ActC, NOT rep1) as a sum of the two Hill terms
    d[REP2] = (p[KPC] * hill_rep(rep1, p[K_REP1], p[N_REP1])
               + p[KPC] * hill_act(actc, p[K_ACTC], p[N_ACTC])
               - p[KS_REP2] * rep2 * ind2 - p[KD_REP2] * rep2)
    # rep3 shares rep1's operator and state entry
    d[REP1] = (p[KPE] * hill_rep(rep2, p[K_REP2], p[N_REP2])
               - p[KS_REP1] * rep1 * ind1 - p[KD_REP1] * rep1)
    d[OUT] = p[KP_OUT] * hill_rep(rep1, p[K_REP3], p[N_REP3]) - p[KD_OUT] * out
    d[ACTC] = p[KPD] * hill_act(ch[INDT], p[K_INDT], p[N_INDT]) - p[KD_ACTC] * actc


@njit(cache=True)
def resolve_channels(x, clamp, wsrc, wdst, wch, wgain):
    ch = clamp.copy()
    for w in range(wsrc.shape[0]):
        v = x[wsrc[w] * N_SPECIES + OUT]
        if v > 0.0:
            ch[wdst[w], wch[w]] += wgain[w] * v
    return ch


@njit(cache=True)
def network_deriv(x, params, clamp, wsrc, wdst, wch, wgain, pin_idx, dx):
    # stage values may sit a rounding error below zero
    xs = np.maximum(x, 0.0)
    ch = resolve_channels(xs, clamp, wsrc, wdst, wch, wgain)
    for i in range(params.shape[0]):
        lo = i * N_SPECIES
        neuron_deriv(xs[lo:lo + N_SPECIES], params[i], ch[i], dx[lo:lo + N_SPECIES])
    for k in range(pin_idx.shape[0]):
        dx[pin_idx[k]] = 0.0


# Dormand-Prince 5(4) tableau
A21 = 1.0 / 5.0
A31, A32 = 3.0 / 40.0, 9.0 / 40.0
A41, A42, A43 = 44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0
A51, A52, A53, A54 = 19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0
A61, A62, A63, A64, A65 = (9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0,
                           49.0 / 176.0, -5103.0 / 18656.0)
B1, B3, B4, B5, B6 = 35.0 / 384.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0
E1, E3, E4, E5, E6, E7 = (71.0 / 57600.0, -71.0 / 16695.0, 71.0 / 1920.0,
                          -17253.0 / 339200.0, 22.0 / 525.0, -1.0 / 40.0)

# PI controller constants (Hairer & Wanner's DOPRI5 defaults)
BETA = 0.04
EXPO1 = 0.2 - BETA * 0.75
SAFE = 0.9
# h_new/h stays within [FAC_MIN, FAC_MAX]
FAC_MIN = 0.2
FAC_MAX = 10.0
H_MIN = 1e-12


@njit(cache=True)
def _scaled_max(v, x, rtol, atol):
    m = 0.0
    for i in range(v.shape[0]):
        r = abs(v[i]) / (atol + rtol * abs(x[i]))
        if r > m:
            m = r
    return m


@njit(cache=True)
def initial_step(x, f0, t_span, max_step, rtol, atol, params, clamp, wsrc, wdst, wch, wgain, pin_idx):
    d0 = _scaled_max(x, x, rtol, atol)
    d1 = _scaled_max(f0, x, rtol, atol)
    if d0 < 1e-5 or d1 < 1e-5:
        h0 = 1e-6
    else:
        h0 = 0.01 * d0 / d1
    h0 = min(h0, t_span, max_step)
    x1 = x + h0 * f0
    f1 = np.empty_like(x)
    network_deriv(x1, params, clamp, wsrc, wdst, wch, wgain, pin_idx, f1)
    d2 = _scaled_max(f1 - f0, x, rtol, atol) / h0
    dm = max(d1, d2)
    if dm <= 1e-15:
        h1 = max(1e-6, h0 * 1e-3)
    else:
        h1 = (0.01 / dm) ** 0.2
    return min(100.0 * h0, h1, t_span, max_step)


@njit(cache=True)
def _all_finite(v):
    for i in range(v.shape[0]):
        if not np.isfinite(v[i]):
            return False
    return True


@njit(cache=True)
def dopri_segment(x, k1, t, t1, h, params, clamp, wsrc, wdst, wch, wgain, pin_idx,
                  rtol, atol, max_step, ss_tol, ss_window, ss_since, allow_ss,
                  record, ts, xs, n_rec, max_steps):
    """Advance ``x`` from ``t`` to ``t1`` in place.

    ``k1`` must hold f(x) on entry and holds f(x) at the final state on exit.
    Returns (status, t, h, ss_since, n_acc, n_rej, n_eval, ts, xs, n_rec).
    """
    d = x.shape[0]
    k2 = np.empty(d)
    k3 = np.empty(d)
    k4 = np.empty(d)
    k5 = np.empty(d)
    k6 = np.empty(d)
    k7 = np.empty(d)
    y = np.empty(d)
    x_new = np.empty(d)
    err_vec = np.empty(d)
    facold = 1e-4
    n_acc = 0
    n_rej = 0
    n_eval = 0
    reject_prev = False

    while t < t1:
        if n_acc + n_rej >= max_steps:
            return TOO_MANY_STEPS, t, h, ss_since, n_acc, n_rej, n_eval, ts, xs, n_rec
        if h < H_MIN:
            return UNDERFLOW, t, h, ss_since, n_acc, n_rej, n_eval, ts, xs, n_rec
        last = False
        if t + 1.01 * h >= t1:
            h = t1 - t
            last = True

        for i in range(d):
            y[i] = x[i] + h * A21 * k1[i]
        network_deriv(y, params, clamp, wsrc, wdst, wch, wgain, pin_idx, k2)
        for i in range(d):
            y[i] = x[i] + h * (A31 * k1[i] + A32 * k2[i])
        network_deriv(y, params, clamp, wsrc, wdst, wch, wgain, pin_idx, k3)
        for i in range(d):
            y[i] = x[i] + h * (A41 * k1[i] + A42 * k2[i] + A43 * k3[i])
        network_deriv(y, params, clamp, wsrc, wdst, wch, wgain, pin_idx, k4)
        for i in range(d):
            y[i] = x[i] + h * (A51 * k1[i] + A52 * k2[i] + A53 * k3[i] + A54 * k4[i])
        network_deriv(y, params, clamp, wsrc, wdst, wch, wgain, pin_idx, k5)
        for i in range(d):
            y[i] = x[i] + h * (A61 * k1[i] + A62 * k2[i] + A63 * k3[i] + A64 * k4[i] + A65 * k5[i])
        network_deriv(y, params, clamp, wsrc, wdst, wch, wgain, pin_idx, k6)
        for i in range(d):
            x_new[i] = x[i] + h * (B1 * k1[i] + B3 * k3[i] + B4 * k4[i] + B5 * k5[i] + B6 * k6[i])
        network_deriv(x_new, params, clamp, wsrc, wdst, wch, wgain, pin_idx, k7)
        n_eval += 6

        if not (_all_finite(x_new) and _all_finite(k7)):
            return NONFINITE, t, h, ss_since, n_acc, n_rej, n_eval, ts, xs, n_rec

        err = 0.0
        for i in range(d):
            err_vec[i] = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i]
                              + E6 * k6[i] + E7 * k7[i])
            sc = atol + rtol * max(abs(x[i]), abs(x_new[i]))
            r = abs(err_vec[i]) / sc
            if r > err:
                err = r

        fac11 = err ** EXPO1 if err > 0.0 else 0.0
        if err <= 1.0:
            # positivity: tiny undershoot is clamped, anything larger is a rejection
            worst = 0.0
            for i in range(d):
                if x_new[i] < worst:
                    worst = x_new[i]
            if worst < -atol:
                n_rej += 1
                h *= 0.5
                reject_prev = True
                continue
            clamped = False
            if worst < 0.0:
                for i in range(d):
                    if x_new[i] < 0.0:
                        x_new[i] = 0.0
                clamped = True

            facold = max(err, 1e-4)
            fac = fac11 / facold ** BETA
            fac = max(1.0 / FAC_MAX, min(1.0 / FAC_MIN, fac / SAFE))
            h_next = h / fac
            if reject_prev:
                h_next = min(h_next, h)
            reject_prev = False

            t = t1 if last else t + h
            for i in range(d):
                x[i] = x_new[i]
            if clamped:
                network_deriv(x, params, clamp, wsrc, wdst, wch, wgain, pin_idx, k7)
                n_eval += 1
            for i in range(d):
                k1[i] = k7[i]
            n_acc += 1
            h = min(h_next, max_step)

            if record:
                if n_rec == ts.shape[0]:
                    cap = 2 * ts.shape[0]
                    ts2 = np.empty(cap)
                    xs2 = np.empty((cap, d))
                    ts2[:n_rec] = ts[:n_rec]
                    xs2[:n_rec] = xs[:n_rec]
                    ts = ts2
                    xs = xs2
                ts[n_rec] = t
                xs[n_rec] = x
                n_rec += 1

            fnorm = 0.0
            xnorm = 0.0
            for i in range(d):
                fnorm = max(fnorm, abs(k1[i]))
                xnorm = max(xnorm, abs(x[i]))
            if fnorm <= ss_tol * max(xnorm, 1.0):
                if ss_since < 0.0:
                    ss_since = t
                if allow_ss and t - ss_since >= ss_window:
                    return STEADY, t, h, ss_since, n_acc, n_rej, n_eval, ts, xs, n_rec
            else:
                ss_since = -1.0
        else:
            n_rej += 1
            h = h / min(1.0 / FAC_MIN, fac11 / SAFE)
            reject_prev = True

    return REACHED_END, t, h, ss_since, n_acc, n_rej, n_eval, ts, xs, n_rec
