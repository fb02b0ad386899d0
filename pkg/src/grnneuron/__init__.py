"""Transcriptional-regulation artificial neurons simulated as coupled ODEs."""

from .core import (
    CHANNELS,
    SPECIES,
    Clamp,
    Neuron,
    NeuronParameters,
    NetworkSpec,
    Pin,
    SpeciesId,
    Wire,
    hill_activation,
    hill_repression,
    network_rhs,
    neuron_rhs,
    single_neuron_spec,
)
from .errors import GRNError, NonConvergence, NumericError, SpecificationError, StepFailure
from .integrator import IntegrationConfig, Termination, Trajectory, integrate, steady_state

__version__ = "0.1.0"

__all__ = [
    "CHANNELS", "SPECIES", "Clamp", "GRNError", "IntegrationConfig", "Neuron",
    "NeuronParameters", "NetworkSpec", "NonConvergence", "NumericError", "Pin",
    "SpecificationError", "SpeciesId", "StepFailure", "Termination", "Trajectory", "Wire",
    "hill_activation", "hill_repression", "integrate", "network_rhs", "neuron_rhs",
    "single_neuron_spec", "steady_state",
]
