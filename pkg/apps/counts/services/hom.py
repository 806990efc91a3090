"""
Hong-Ou-Mandel delay scans and the Gaussian dip fit.

Both photons enter in TE1, one per rail. The post-selected coincidence rate falls from its
distinguishable-photon level as the photon overlap grows, ideally to a fifth of it.
"""

import logging
from collections.abc import Sequence

import numpy as np
from scipy.optimize import least_squares

from apps.counts.exceptions import DomainError, HomFitError
from apps.counts.services.sampling import exact_counts, sample_counts
from apps.counts.types import CountModel, CountRecord, HomFit, HomFitErrors
from apps.mode_core.services import cnot_circuit, evolve_pair, postselect
from apps.mode_core.types import NUM_MODES, NoiseModel, Rail, Transverse, mode_index

logger = logging.getLogger(__name__)

MIN_DISTINCT_DELAYS = 5
MAX_EVALUATIONS = 500
PARAMETER_TOLERANCE = 1e-9
MAX_VISIBILITY = 1.0001


def indistinguishability_of_delay(delay: float, sigma: float) -> float:
    if sigma <= 0:
        raise DomainError(f"coherence width sigma must be positive, got {sigma}")
    return float(np.exp(-(delay**2) / (2 * sigma**2)))


def _te1_input(rail: Rail) -> np.ndarray:
    vector = np.zeros(NUM_MODES, dtype=complex)
    vector[mode_index(rail, Transverse.TE1)] = 1
    return vector


def hom_coincidence_probability(noise: NoiseModel, x: float) -> float:
    """Probability of one photon per rail for TE1 inputs on both rails at overlap ``x``."""
    A = evolve_pair(cnot_circuit(noise), _te1_input(Rail.CONTROL), _te1_input(Rail.TARGET))
    return postselect(A, x).success_probability


def hom_probabilities(noise: NoiseModel, delays: Sequence[float]) -> np.ndarray:
    """Exact coincidence probability at each delay; the zero-delay overlap is ``noise.x``."""
    if len(delays) == 0:
        raise DomainError("a HOM scan needs at least one delay")
    return np.array(
        [hom_coincidence_probability(noise, noise.x * indistinguishability_of_delay(d, noise.sigma)) for d in delays]
    )


def hom_scan(
    noise: NoiseModel, delays: Sequence[float], seed=0, model: CountModel = CountModel.POISSON
) -> list[CountRecord]:
    probabilities = hom_probabilities(noise, delays)
    return sample_counts(
        probabilities, noise.shots, background=noise.background, model=model, seed=seed, delays=list(delays)
    )


def hom_exact_counts(noise: NoiseModel, delays: Sequence[float]) -> list[CountRecord]:
    probabilities = hom_probabilities(noise, delays)
    return exact_counts(probabilities, noise.shots, background=noise.background, delays=list(delays))


def dip_model(delay, amplitude, visibility, center, width):
    delay = np.asarray(delay, dtype=float)
    return amplitude * (1 - visibility * np.exp(-((delay - center) ** 2) / (2 * width**2)))


def _initial_guess(delays: np.ndarray, counts: np.ndarray) -> np.ndarray:
    top = max(1, int(np.ceil(0.2 * len(counts))))
    amplitude = float(np.mean(np.sort(counts)[-top:]))
    if amplitude <= 0:
        raise DomainError("all counts are zero; there is no dip to fit")
    center = float(delays[np.argmin(counts)])
    visibility = float(np.clip((amplitude - counts.min()) / amplitude, 0.0, 1.0))
    width = float((delays.max() - delays.min()) / 4)
    return np.array([amplitude, visibility, center, width])


def fit_hom(records: Sequence[CountRecord], counts=None) -> HomFit:
    """
    Least-squares Gaussian dip fit with Poisson weights.

    ``counts`` overrides the record counts, which lets Monte Carlo trials refit resampled data.
    """
    delays = np.array([record.delay for record in records], dtype=float)
    counts = np.asarray(counts if counts is not None else [record.counts for record in records], dtype=float)
    if len(np.unique(delays)) < MIN_DISTINCT_DELAYS:
        raise DomainError(f"a dip fit needs at least {MIN_DISTINCT_DELAYS} distinct delays")

    weights = 1 / np.sqrt(np.maximum(counts, 1.0))
    guess = _initial_guess(delays, counts)
    span = delays.max() - delays.min()

    def residuals(parameters):
        return (dip_model(delays, *parameters) - counts) * weights

    lower = [0.0, 0.0, delays.min() - span, span * 1e-6]
    upper = [np.inf, MAX_VISIBILITY, delays.max() + span, np.inf]
    result = least_squares(
        residuals,
        np.clip(guess, lower, upper),
        bounds=(lower, upper),
        method="trf",
        x_scale="jac",
        xtol=PARAMETER_TOLERANCE,
        ftol=1e-12,
        gtol=1e-12,
        max_nfev=MAX_EVALUATIONS,
    )
    residual = float(np.sqrt(np.mean(((dip_model(delays, *result.x) - counts)) ** 2)))
    if result.status <= 0:
        raise HomFitError(f"dip fit did not converge: {result.message}", last_iterate=result.x, residual=residual)

    amplitude, visibility, center, width = (float(v) for v in result.x)
    if amplitude <= 0:
        raise HomFitError("dip fit collapsed to zero amplitude", last_iterate=result.x, residual=residual)

    dof = max(len(counts) - len(result.x), 1)
    variance = 2 * result.cost / dof
    covariance = np.linalg.pinv(result.jac.T @ result.jac) * variance
    errors = np.sqrt(np.clip(np.diag(covariance), 0.0, None))
    logger.debug("HOM fit V=%.6f after %d evaluations", visibility, result.nfev)
    return HomFit(
        amplitude=amplitude,
        visibility=visibility,
        center=center,
        width=abs(width),
        residual=residual,
        stderr=HomFitErrors(*(float(e) for e in errors)),
        evaluations=int(result.nfev),
    )
