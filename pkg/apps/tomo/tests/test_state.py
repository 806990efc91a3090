import numpy as np
from django.test import SimpleTestCase
from numpy.testing import assert_allclose

from apps.counts.services import sample_counts
from apps.tomo.exceptions import DomainError
from apps.tomo.services import (
    bell_state,
    canonical_probabilities,
    canonical_projectors,
    log_likelihood,
    project_psd,
    qst_linear,
    qst_linear_from_counts,
    qst_mle,
    qst_mle_detailed,
    state_fidelity,
)
from apps.tomo.tests.utils import random_density_matrix
from apps.tomo.types import BellState, DensityMatrix


def _unclipped_probabilities(matrix):
    return np.real(np.einsum("kij,ji->k", canonical_projectors(), matrix))


def _sampled_counts(rho, shots, seed):
    return np.array([record.counts for record in sample_counts(canonical_probabilities(rho), shots, seed=seed)])


class QstLinearTestCase(SimpleTestCase):
    """Tests for linear-inversion state tomography."""

    def test_computational_state(self):
        """|00><00| is recovered from its probabilities."""
        rho = DensityMatrix.from_vector([1, 0, 0, 0])
        assert_allclose(qst_linear(canonical_probabilities(rho)).entries, rho.entries, atol=1e-10)

    def test_bell_state(self):
        """Phi+ is recovered from its probabilities."""
        rho = bell_state(BellState.PHI_PLUS)
        assert_allclose(qst_linear(canonical_probabilities(rho)).entries, rho.entries, atol=1e-10)

    def test_informational_completeness(self):
        """Exact probabilities of random mixed states invert exactly."""
        rng = np.random.default_rng(101)
        for _ in range(100):
            rho = random_density_matrix(rng, rank=int(rng.integers(1, 5)))
            estimate = qst_linear(canonical_probabilities(rho))
            self.assertLess(np.max(np.abs(estimate.entries - rho.entries)), 1e-10)

    def test_negative_eigenvalue_is_flagged(self):
        """Inconsistent data yields a non-positive estimate without raising."""
        non_physical = (
            bell_state(BellState.PHI_PLUS).entries
            - 0.05 * bell_state(BellState.PHI_MINUS).entries
            + 0.05 * bell_state(BellState.PSI_PLUS).entries
        )
        estimate = qst_linear(_unclipped_probabilities(non_physical))
        self.assertFalse(estimate.is_psd)
        self.assertAlmostEqual(estimate.min_eigenvalue, -0.05, places=10)

    def test_wrong_length(self):
        """Exactly 16 probabilities are required."""
        with self.assertRaises(DomainError):
            qst_linear(np.ones(15) / 4)


class ProjectPsdTestCase(SimpleTestCase):
    def test_clips_negative_eigenvalues(self):
        """Clipping leaves a unit-trace PSD matrix."""
        matrix = np.diag([0.6, 0.5, -0.05, -0.05])
        projected = project_psd(matrix)
        assert_allclose(np.diag(projected.entries).real, [0.6 / 1.1, 0.5 / 1.1, 0, 0], atol=1e-12)
        self.assertTrue(projected.is_psd)


class QstMleTestCase(SimpleTestCase):
    """Tests for maximum-likelihood state tomography."""

    def test_exact_full_rank_counts(self):
        """Counts proportional to a full-rank state's probabilities recover it."""
        rho = DensityMatrix(0.6 * bell_state(BellState.PHI_PLUS).entries + 0.1 * np.eye(4))
        counts = canonical_probabilities(rho) * 1e6
        assert_allclose(qst_mle(counts).entries, rho.entries, atol=1e-6)

    def test_uniform_counts(self):
        """Uniform counts give the maximally mixed state."""
        result = qst_mle_detailed(np.full(16, 2500.0))
        assert_allclose(result.rho.entries, np.eye(4) / 4, atol=1e-6)
        self.assertTrue(result.converged)

    def test_zero_counts(self):
        """All-zero counts are rejected."""
        with self.assertRaises(DomainError):
            qst_mle(np.zeros(16))

    def test_output_is_physical(self):
        """Sampled data always gives a unit-trace PSD estimate."""
        rho = bell_state(BellState.PSI_MINUS)
        for seed in range(5):
            estimate = qst_mle(_sampled_counts(rho, 1000, seed))
            self.assertGreaterEqual(estimate.min_eigenvalue, -1e-8)
            self.assertAlmostEqual(estimate.trace, 1, places=10)

    def test_likelihood_dominates_projected_linear(self):
        """The MLE is at least as likely as the clipped linear estimate."""
        rng = np.random.default_rng(55)
        for seed in range(10):
            rho = random_density_matrix(rng, rank=int(rng.integers(1, 3)))
            counts = _sampled_counts(rho, 2000, seed)
            linear = project_psd(qst_linear_from_counts(counts))
            self.assertGreaterEqual(log_likelihood(qst_mle(counts), counts), log_likelihood(linear, counts) - 1e-4)

    def test_low_rank_sampled_data(self):
        """Sampled counts of rank-1 and rank-2 states give finite, converged, physical estimates."""
        rng = np.random.default_rng(2024)
        for seed in range(10):
            rho = random_density_matrix(rng, rank=1 + seed % 2)
            result = qst_mle_detailed(_sampled_counts(rho, 2000, seed))
            self.assertTrue(np.all(np.isfinite(result.rho.entries)))
            self.assertTrue(np.isfinite(result.log_likelihood))
            self.assertTrue(result.converged)
            self.assertGreaterEqual(result.rho.min_eigenvalue, -1e-8)
            self.assertAlmostEqual(result.rho.trace, 1, places=10)
            self.assertGreaterEqual(state_fidelity(result.rho, rho), 0.9)

    def test_long_iteration_stays_finite(self):
        """Thousands of accepted steps on a pure state do not overflow the dilution."""
        counts = _sampled_counts(bell_state(BellState.PSI_PLUS), 2000, 3)
        result = qst_mle_detailed(counts, max_iterations=3000, tolerance=0.0)
        self.assertLessEqual(result.iterations, 3000)
        self.assertTrue(np.all(np.isfinite(result.rho.entries)))
        self.assertGreaterEqual(state_fidelity(result.rho, bell_state(BellState.PSI_PLUS)), 0.98)

    def test_statistical_accuracy(self):
        """With 1e5 shots per setting the Phi+ estimate has fidelity of at least 0.999."""
        rho = bell_state(BellState.PHI_PLUS)
        fidelities = [state_fidelity(qst_mle(_sampled_counts(rho, 100_000, seed)), rho) for seed in range(20)]
        self.assertGreaterEqual(np.median(fidelities), 0.999)
