"""Fixed index layouts shared by the Python layer and the compiled kernels."""

SPECIES = ("ActX", "ActY", "LacI", "TetR", "Ind1", "Ind2", "rep2", "rep1", "ActC", "out")
N_SPECIES = len(SPECIES)

# IPTG, aTc and IndT may be driven by upstream neurons; fA/fB are weight inducers.
CHANNELS = ("IPTG", "aTc", "IndT", "fA", "fB")
WIRABLE_CHANNELS = ("IPTG", "aTc", "IndT")
N_CHANNELS = len(CHANNELS)

PARAM_ORDER = (
    # production (nM/s)
    "k_prodA", "k_prodB", "k_prodC", "k_prodD", "k_prodE",
    "k_prod_ActX", "k_prod_ActY", "k_prod_LacI", "k_prod_TetR", "k_prod_Ind2", "k_prod_out",
    # first-order degradation (1/s)
    "k_deg_ActX", "k_deg_ActY", "k_deg_LacI", "k_deg_TetR", "k_deg_Ind1",
    "k_deg_Ind2", "k_deg_rep2", "k_deg_rep1", "k_deg_ActC", "k_deg_out",
    # sequestration (1/(nM s))
    "k_seq_LacI", "k_seq_TetR", "k_seq_rep1", "k_seq_rep2",
    # dissociation constants (nM)
    "K_fA", "K_fB", "K_ActX", "K_ActY", "K_LacI", "K_TetR", "K_IndT",
    "K_ActC", "K_rep1", "K_rep2", "K_rep3",
    # Hill coefficients
    "n_fA", "n_fB", "n_ActX", "n_ActY", "n_LacI", "n_TetR", "n_IndT",
    "n_ActC", "n_rep1", "n_rep2", "n_rep3",
)
N_PARAMS = len(PARAM_ORDER)
