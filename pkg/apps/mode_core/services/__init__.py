from apps.mode_core.services.components import cnot_circuit, compose, loss_matrix, mma_matrix, tmddc_matrix
from apps.mode_core.services.evolution import (
    bosonic_output_distribution,
    coincidence_probability,
    evolve_pair,
    permanent,
    postselect,
    postselected_amplitude,
    two_photon_distribution,
)

__all__ = [
    "tmddc_matrix",
    "mma_matrix",
    "loss_matrix",
    "compose",
    "cnot_circuit",
    "evolve_pair",
    "coincidence_probability",
    "two_photon_distribution",
    "postselect",
    "postselected_amplitude",
    "permanent",
    "bosonic_output_distribution",
]
