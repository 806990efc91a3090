"""
Two-qubit state tomography from the 16 canonical projections.
"""

import logging
from dataclasses import dataclass

import numpy as np
from django.conf import settings
from scipy.optimize import minimize

from apps.tomo.exceptions import DomainError, ReconstructionError
from apps.tomo.services.measurement import (
    CANONICAL_SETTINGS,
    as_matrix,
    canonical_projectors,
    probabilities_from_counts,
)
from apps.tomo.types import DensityMatrix

logger = logging.getLogger(__name__)

INITIAL_DILUTION = 0.1
MIN_DILUTION = 1e-12
MAX_DILUTION = 1e3
GRADIENT_TOLERANCE = 1e-7


def _inversion_matrix() -> np.ndarray:
    # Row k maps row-major vec(rho) to Tr(P_k rho).
    return np.array([P.T.reshape(-1) for P in canonical_projectors()])


def _hermitize(matrix: np.ndarray) -> np.ndarray:
    return (matrix + matrix.conj().T) / 2


def qst_linear(probabilities) -> DensityMatrix:
    """
    Linear inversion of the canonical Born probabilities.

    The result is Hermitian with unit trace but may have negative eigenvalues for noisy data.
    """
    probabilities = np.asarray(probabilities, dtype=float)
    if probabilities.shape != (len(CANONICAL_SETTINGS),):
        raise DomainError(f"expected {len(CANONICAL_SETTINGS)} probabilities, got shape {probabilities.shape}")
    try:
        vec = np.linalg.solve(_inversion_matrix(), probabilities.astype(complex))
    except np.linalg.LinAlgError as exc:
        raise ReconstructionError(f"tomography system is singular: {exc}") from exc

    rho = _hermitize(vec.reshape(4, 4))
    trace = np.real(np.trace(rho))
    if trace <= 0:
        raise ReconstructionError(f"linear inversion produced non-positive trace {trace:.3g}")
    estimate = DensityMatrix(rho / trace)
    if not estimate.is_psd:
        logger.debug("Linear inversion is not positive (min eigenvalue %.3g)", estimate.min_eigenvalue)
    return estimate


def project_psd(rho) -> DensityMatrix:
    """Nearest unit-trace PSD matrix by clipping negative eigenvalues."""
    try:
        values, vectors = np.linalg.eigh(_hermitize(as_matrix(rho)))
    except np.linalg.LinAlgError as exc:
        raise ReconstructionError(f"cannot diagonalize the estimate: {exc}") from exc
    values = np.clip(values, 0.0, None)
    if values.sum() <= 0:
        raise ReconstructionError("matrix has no positive eigenvalue")
    clipped = (vectors * values) @ vectors.conj().T
    return DensityMatrix(_hermitize(clipped) / values.sum())


def _counts_array(counts) -> np.ndarray:
    values = np.asarray([getattr(c, "counts", c) for c in counts], dtype=float)
    if values.shape != (len(CANONICAL_SETTINGS),):
        raise DomainError(f"expected {len(CANONICAL_SETTINGS)} counts, got {values.shape[0]}")
    if np.any(values < 0):
        raise DomainError("counts must be non-negative")
    if values.sum() <= 0:
        raise DomainError("all counts are zero")
    return values


def _profile_log_likelihood(probabilities: np.ndarray, counts: np.ndarray) -> float:
    observed = counts > 0
    with np.errstate(divide="ignore"):
        return float(np.sum(counts[observed] * np.log(probabilities[observed] / probabilities.sum())))


def log_likelihood(rho, counts) -> float:
    """
    Poisson log-likelihood of ``counts`` with the unknown source rate profiled out:
    ``sum_k n_k log(p_k / sum_j p_j)`` with ``p_k = Tr(P_k rho)``.
    """
    counts = _counts_array(counts)
    rho = as_matrix(rho)
    probabilities = np.clip(np.real(np.einsum("kij,ji->k", canonical_projectors(), rho)), 0.0, None)
    return _profile_log_likelihood(probabilities, counts)


@dataclass(frozen=True)
class MleResult:
    rho: DensityMatrix
    log_likelihood: float
    iterations: int
    converged: bool


def _inverse_sqrt(matrix: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    values, vectors = np.linalg.eigh(matrix)
    root = (vectors * np.sqrt(values)) @ vectors.conj().T
    inverse_root = (vectors / np.sqrt(values)) @ vectors.conj().T
    return root, inverse_root


def _diluted_iteration(counts: np.ndarray, max_iterations: int, tolerance: float) -> tuple[np.ndarray, int, bool]:
    """
    Diluted ``R rho R`` iteration on the rescaled state ``G^{1/2} rho G^{1/2}``.

    ``G`` is the projector sum; the rescaled projectors form a complete measurement, so the
    profile likelihood becomes an ordinary multinomial one. Returns the unnormalized estimate.
    """
    projectors = canonical_projectors()
    root, inverse_root = _inverse_sqrt(projectors.sum(axis=0))
    scaled = inverse_root @ projectors @ inverse_root
    frequencies = counts / counts.sum()
    identity = np.eye(4)

    def probabilities_of(sigma):
        return np.clip(np.real(np.einsum("kij,ji->k", scaled, sigma)), 0.0, None)

    def likelihood_of(sigma):
        return _profile_log_likelihood(probabilities_of(sigma), counts)

    sigma = root @ (identity / 4) @ root
    sigma = sigma / np.real(np.trace(sigma))
    current = likelihood_of(sigma)
    dilution = INITIAL_DILUTION
    converged = False
    iteration = 0

    while iteration < max_iterations:
        iteration += 1
        probabilities = probabilities_of(sigma)
        weights = np.divide(frequencies, probabilities, out=np.zeros_like(frequencies), where=probabilities > 0)
        R = np.einsum("k,kij->ij", weights, scaled)
        step = (identity + dilution * R) / (1 + dilution)
        candidate = _hermitize(step @ sigma @ step.conj().T)
        trace = np.real(np.trace(candidate))
        proposed = -np.inf
        if np.isfinite(trace) and trace > 0:
            candidate = candidate / trace
            proposed = likelihood_of(candidate)

        if not np.isfinite(proposed) or proposed < current:
            dilution /= 2
            if dilution < MIN_DILUTION:
                converged = True
                break
            continue

        improvement = proposed - current
        sigma, current = candidate, proposed
        dilution = min(2 * dilution, MAX_DILUTION)
        if improvement < tolerance:
            converged = True
            break

    if not np.all(np.isfinite(sigma)):
        raise ReconstructionError(f"maximum-likelihood iteration diverged after {iteration} iterations")
    return _hermitize(inverse_root @ sigma @ inverse_root), iteration, converged


def _polish(rho: np.ndarray, counts: np.ndarray) -> tuple[np.ndarray, bool]:
    """
    Quasi-Newton ascent of the profile likelihood over ``rho = T T^† / Tr(T T^†)``.

    Starts from the diluted-iteration estimate, which approaches rank-deficient optima slowly.
    """
    projectors = canonical_projectors()
    projector_sum = projectors.sum(axis=0)
    frequencies = counts / counts.sum()
    observed = counts > 0

    values, vectors = np.linalg.eigh(rho / np.real(np.trace(rho)))
    start = vectors * np.sqrt(np.clip(values, 0.0, None))

    def negative_likelihood(parameters):
        T = (parameters[:16] + 1j * parameters[16:]).reshape(4, 4)
        product = T @ T.conj().T
        probabilities = np.real(np.einsum("kij,ji->k", projectors, product))
        total = np.real(np.trace(projector_sum @ product))
        if total <= 0 or np.any(probabilities[observed] <= 0):
            return np.inf, np.zeros_like(parameters)
        value = np.sum(frequencies[observed] * np.log(probabilities[observed])) - np.log(total)
        ratios = np.divide(frequencies, probabilities, out=np.zeros_like(frequencies), where=observed)
        gradient = np.einsum("k,kij->ij", ratios, projectors) @ T - projector_sum @ T / total
        return -value, -2 * np.concatenate([gradient.real.ravel(), gradient.imag.ravel()])

    initial = np.concatenate([start.real.ravel(), start.imag.ravel()])
    with np.errstate(divide="ignore", invalid="ignore"):
        result = minimize(
            negative_likelihood, initial, jac=True, method="BFGS", options={"gtol": GRADIENT_TOLERANCE}
        )
    if not np.all(np.isfinite(result.x)) or not np.isfinite(result.fun):
        return rho, False

    T = (result.x[:16] + 1j * result.x[16:]).reshape(4, 4)
    converged = bool(result.success or np.max(np.abs(result.jac)) <= 10 * GRADIENT_TOLERANCE)
    return _hermitize(T @ T.conj().T), converged


def qst_mle_detailed(counts, max_iterations: int | None = None, tolerance: float | None = None) -> MleResult:
    """
    Maximum-likelihood state from canonical counts.

    A diluted ``R rho R`` iteration brings the estimate close to the optimum, then a quasi-Newton
    search over ``rho = T T^†`` settles it. The better of the two estimates under
    :func:`log_likelihood` is returned.
    """
    counts = _counts_array(counts)
    max_iterations = settings.CNOT_MLE_MAX_ITERATIONS if max_iterations is None else max_iterations
    tolerance = settings.CNOT_MLE_TOLERANCE if tolerance is None else tolerance

    iterated, iterations, iteration_converged = _diluted_iteration(counts, max_iterations, tolerance)
    iterated = DensityMatrix(iterated / np.real(np.trace(iterated)))
    best, best_likelihood = iterated, log_likelihood(iterated, counts)

    polished, polish_converged = _polish(iterated.entries, counts)
    trace = np.real(np.trace(polished))
    if np.all(np.isfinite(polished)) and trace > 0:
        candidate = DensityMatrix(polished / trace)
        candidate_likelihood = log_likelihood(candidate, counts)
        if candidate_likelihood >= best_likelihood:
            best, best_likelihood = candidate, candidate_likelihood

    converged = iteration_converged or polish_converged
    if not converged:
        logger.warning("MLE stopped after %d iterations without converging", iterations)
    return MleResult(rho=best, log_likelihood=best_likelihood, iterations=iterations, converged=converged)


def qst_mle(counts, **kwargs) -> DensityMatrix:
    return qst_mle_detailed(counts, **kwargs).rho


def qst_linear_from_counts(counts) -> DensityMatrix:
    return qst_linear(probabilities_from_counts(counts))
