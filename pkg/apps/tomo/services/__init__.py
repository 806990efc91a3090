from apps.tomo.services.chsh import (
    CHSH_SIGNS,
    DEFAULT_ANGLES,
    ChshResult,
    analyser_correlation,
    analyser_pairs,
    analyser_settings,
    chsh,
    chsh_detailed,
    chsh_from_counts,
    chsh_settings,
    correlation,
    correlation_from_counts,
)
from apps.tomo.services.measurement import (
    CANONICAL_SETTINGS,
    born,
    canonical_input_states,
    canonical_probabilities,
    canonical_projectors,
    probabilities_from_counts,
    projector,
)
from apps.tomo.services.measures import (
    bell_state,
    bell_vector,
    concurrence,
    linear_entropy,
    purity,
    state_fidelity,
    tangle,
)
from apps.tomo.services.process import (
    PAULI_BASIS,
    apply_chi,
    average_gate_fidelity,
    chi_of_unitary,
    pauli_index,
    process_fidelity,
    qpt,
    trace_preservation_residual,
)
from apps.tomo.services.state import (
    MleResult,
    log_likelihood,
    project_psd,
    qst_linear,
    qst_linear_from_counts,
    qst_mle,
    qst_mle_detailed,
)

__all__ = [
    "CANONICAL_SETTINGS",
    "projector",
    "canonical_projectors",
    "born",
    "canonical_probabilities",
    "canonical_input_states",
    "probabilities_from_counts",
    "qst_linear",
    "qst_linear_from_counts",
    "qst_mle",
    "qst_mle_detailed",
    "MleResult",
    "log_likelihood",
    "project_psd",
    "bell_state",
    "bell_vector",
    "state_fidelity",
    "purity",
    "linear_entropy",
    "concurrence",
    "tangle",
    "DEFAULT_ANGLES",
    "CHSH_SIGNS",
    "ChshResult",
    "correlation",
    "analyser_correlation",
    "chsh",
    "chsh_detailed",
    "analyser_pairs",
    "analyser_settings",
    "chsh_settings",
    "correlation_from_counts",
    "chsh_from_counts",
    "PAULI_BASIS",
    "pauli_index",
    "qpt",
    "chi_of_unitary",
    "apply_chi",
    "process_fidelity",
    "average_gate_fidelity",
    "trace_preservation_residual",
]
