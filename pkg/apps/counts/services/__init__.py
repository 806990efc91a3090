from apps.counts.services.hom import (
    dip_model,
    fit_hom,
    hom_coincidence_probability,
    hom_exact_counts,
    hom_probabilities,
    hom_scan,
    indistinguishability_of_delay,
)
from apps.counts.services.montecarlo import DEFAULT_TRIALS, MonteCarloResult, monte_carlo, monte_carlo_many
from apps.counts.services.sampling import (
    draw,
    exact_counts,
    expected_counts,
    make_rng,
    resample,
    sample_counts,
)

__all__ = [
    "make_rng",
    "draw",
    "expected_counts",
    "sample_counts",
    "exact_counts",
    "resample",
    "indistinguishability_of_delay",
    "hom_coincidence_probability",
    "hom_probabilities",
    "hom_scan",
    "hom_exact_counts",
    "dip_model",
    "fit_hom",
    "DEFAULT_TRIALS",
    "MonteCarloResult",
    "monte_carlo",
    "monte_carlo_many",
]
