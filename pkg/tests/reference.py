"""Independent hand-written model used as a test oracle.

Written directly from the rate equations, without the package's kernels,
index tables or Hill helpers.
"""

import numpy as np
from scipy.optimize import fsolve


def act(x, K, n):
    return x**n / (K**n + x**n)


def rep(x, K, n):
    return K**n / (K**n + x**n)


def neuron_terms(s, p, IPTG=0.0, aTc=0.0, IndT=0.0, fA=0.0, fB=0.0):
    """Each derivative as a dict keyed by species name."""
    ActX, ActY, LacI, TetR, Ind1, Ind2, rep2, rep1, ActC, out = s
    return {
        "ActX": p.k_prod_ActX * act(fA, p.K_fA, p.n_fA) - p.k_deg_ActX * ActX,
        "LacI": p.k_prod_LacI * act(ActX, p.K_ActX, p.n_ActX) - p.k_deg_LacI * LacI
        - p.k_seq_LacI * LacI * IPTG,
        "ActY": p.k_prod_ActY * act(fB, p.K_fB, p.n_fB) - p.k_deg_ActY * ActY,
        "TetR": p.k_prod_TetR * act(ActY, p.K_ActY, p.n_ActY) - p.k_deg_TetR * TetR
        - p.k_seq_TetR * TetR * aTc,
        "Ind1": p.k_prodA * rep(LacI, p.K_LacI, p.n_LacI) + p.k_prodB * rep(TetR, p.K_TetR, p.n_TetR)
        - p.k_deg_Ind1 * Ind1,
        "Ind2": p.k_prod_Ind2 - p.k_deg_Ind2 * Ind2,
        "rep2": p.k_prodC * rep(rep1, p.K_rep1, p.n_rep1) + p.k_prodC * act(ActC, p.K_ActC, p.n_ActC)
        - p.k_seq_rep2 * rep2 * Ind2 - p.k_deg_rep2 * rep2,
        "rep1": p.k_prodE * rep(rep2, p.K_rep2, p.n_rep2) - p.k_seq_rep1 * rep1 * Ind1
        - p.k_deg_rep1 * rep1,
        "out": p.k_prod_out * rep(rep1, p.K_rep3, p.n_rep3) - p.k_deg_out * out,
        "ActC": p.k_prodD * act(IndT, p.K_IndT, p.n_IndT) - p.k_deg_ActC * ActC,
    }


ORDER = ("ActX", "ActY", "LacI", "TetR", "Ind1", "Ind2", "rep2", "rep1", "ActC", "out")


def neuron_vector(s, p, **inputs):
    d = neuron_terms(np.asarray(s, float), p, **inputs)
    return np.array([d[k] for k in ORDER])


def _toggle_rhs(rep1, rep2, p):
    return (p.k_prodE * rep(rep2, p.K_rep2, p.n_rep2) - p.k_deg_rep1 * rep1,
            p.k_prodC * rep(rep1, p.K_rep1, p.n_rep1) - p.k_deg_rep2 * rep2)


def brute_force_fixed_points(p, n=2000):
    """Fixed points from sign changes of both RHS components on an n x n grid."""
    r1 = np.linspace(0.0, 1.05 * p.k_prodE / p.k_deg_rep1, n)
    r2 = np.linspace(0.0, 1.05 * p.k_prodC / p.k_deg_rep2, n)
    R1, R2 = np.meshgrid(r1, r2, indexing="ij")
    f1, f2 = _toggle_rhs(R1, R2, p)

    def changes(f):
        s = np.sign(f)
        corners = np.stack([s[:-1, :-1], s[1:, :-1], s[:-1, 1:], s[1:, 1:]])
        return corners.min(axis=0) != corners.max(axis=0)

    cells = np.argwhere(changes(f1) & changes(f2))
    found = []
    scale = np.array([r1[-1], r2[-1]])
    for i, j in cells:
        guess = np.array([0.5 * (r1[i] + r1[i + 1]), 0.5 * (r2[j] + r2[j + 1])])
        x, info, _, _ = fsolve(lambda v: _toggle_rhs(v[0], v[1], p), guess, xtol=1e-14,
                               full_output=True)
        if np.max(np.abs(info["fvec"])) > 1e-12 or np.any(x < -1e-12):
            continue
        if not any(np.all(np.abs(x - y) <= 1e-6 * scale) for y in found):
            found.append(x)
    return sorted(found, key=lambda v: v[0])
