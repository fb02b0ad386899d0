"""Calibrated parameter overrides for functional demonstrations.

The default :class:`~grnneuron.core.NeuronParameters` are the reference
table values. Under those values the output promoter barely reads the
toggle state (out stays within 1-3 nM) and IPTG is nearly inert because
LacI is degraded much faster than it is sequestered. ``CALIBRATED`` is the
smallest set of changes found that yields a sharp, full-range neuron:

* ``k_seq_LacI``/``k_deg_LacI`` take the TetR values so both input strands
  have the same sequestration-to-turnover ratio;
* ``k_prodC`` is raised so the toggle has a high state reachable by Ind1;
* ``K_rep3``/``n_rep3`` give the output promoter a switch-like read-out of
  rep1 instead of a graded one.
"""

from __future__ import annotations

from .core import NeuronParameters

CALIBRATED: dict[str, float] = {
    "k_seq_LacI": 0.0116,
    "k_deg_LacI": 0.15,
    "k_prodC": 3.0,
    "K_rep3": 5.0,
    "n_rep3": 9.0,
}


def calibrated_parameters(**extra: float) -> NeuronParameters:
    """Default parameters with ``CALIBRATED`` and then ``extra`` applied."""
    return NeuronParameters().replace(**{**CALIBRATED, **extra})


__all__ = ["CALIBRATED", "calibrated_parameters"]
