import math

import numpy as np
from django.test import SimpleTestCase

from apps.tomo.exceptions import DomainError
from apps.tomo.services import (
    CHSH_SIGNS,
    analyser_correlation,
    bell_state,
    born,
    chsh,
    chsh_detailed,
    chsh_from_counts,
    chsh_settings,
    correlation,
    correlation_from_counts,
    projector,
)
from apps.tomo.tests.utils import random_density_matrix, random_product_state
from apps.tomo.types import BellState, DensityMatrix

TSIRELSON = 2 * math.sqrt(2)
SIGN_PATTERNS = list(CHSH_SIGNS.values())


class CorrelationTestCase(SimpleTestCase):
    """Tests for two-qubit correlations."""

    def test_aligned_phi_plus(self):
        """Phi+ is perfectly correlated at zero phases."""
        self.assertAlmostEqual(correlation(bell_state(BellState.PHI_PLUS), 0, 0), 1, places=12)

    def test_maximally_mixed(self):
        """The maximally mixed state has no correlations."""
        rng = np.random.default_rng(90)
        for phase_a, phase_b in rng.uniform(0, 2 * math.pi, size=(10, 2)):
            self.assertAlmostEqual(correlation(DensityMatrix.maximally_mixed(), phase_a, phase_b), 0, places=12)

    def test_cosine_law(self):
        """For Phi+ the analyser correlation is cos 2(theta_a - theta_b)."""
        rho = bell_state(BellState.PHI_PLUS)
        self.assertAlmostEqual(analyser_correlation(rho, 0, 45), 0, places=12)
        self.assertAlmostEqual(analyser_correlation(rho, 10, 10), 1, places=12)
        self.assertAlmostEqual(analyser_correlation(rho, 45, 22.5), math.cos(math.radians(45)), places=12)


class ChshTestCase(SimpleTestCase):
    """Tests for the CHSH combination."""

    def test_bell_states_reach_tsirelson(self):
        """Each Bell state reaches 2 sqrt(2) with its sign pattern."""
        for name, signs in CHSH_SIGNS.items():
            self.assertAlmostEqual(chsh(bell_state(name), signs=signs), TSIRELSON, places=9)

    def test_correlations_reported(self):
        """The detailed result carries the four correlations."""
        result = chsh_detailed(bell_state(BellState.PHI_PLUS))
        half = math.sqrt(2) / 2
        np.testing.assert_allclose(result.correlations, [half, -half, half, half], atol=1e-12)
        self.assertEqual(result.signs, (1, -1, 1, 1))

    def test_product_state(self):
        """|00> stays within the local bound."""
        self.assertLessEqual(abs(chsh(DensityMatrix.from_vector([1, 0, 0, 0]))), 2)

    def test_maximally_mixed(self):
        """The maximally mixed state gives S = 0."""
        self.assertAlmostEqual(chsh(DensityMatrix.maximally_mixed()), 0, places=12)

    def test_classical_mixture(self):
        """An equal mixture of |00> and |11> has no equatorial correlations."""
        self.assertAlmostEqual(chsh(np.diag([0.5, 0, 0, 0.5])), 0, places=12)

    def test_tsirelson_bound(self):
        """No state and no angle choice exceeds 2 sqrt(2)."""
        rng = np.random.default_rng(91)
        for _ in range(1000):
            rho = random_density_matrix(rng, rank=int(rng.integers(1, 5)))
            angles = tuple(rng.uniform(0, 180, size=4))
            signs = SIGN_PATTERNS[rng.integers(4)]
            self.assertLessEqual(abs(chsh(rho, angles, signs)), TSIRELSON + 1e-9)

    def test_local_bound_for_product_states(self):
        """Product states never exceed 2."""
        rng = np.random.default_rng(92)
        for _ in range(1000):
            angles = tuple(rng.uniform(0, 180, size=4))
            signs = SIGN_PATTERNS[rng.integers(4)]
            self.assertLessEqual(abs(chsh(random_product_state(rng), angles, signs)), 2 + 1e-9)


class ChshFromCountsTestCase(SimpleTestCase):
    """Tests for CHSH values computed from analyser coincidences."""

    def _counts(self, rho, shots=9000, background=0.0):
        return [shots * born(rho, projector(setting)) + background for setting in chsh_settings()]

    def test_matches_density_matrix(self):
        """Expected counts reproduce the density-matrix value for every Bell state."""
        for name, signs in CHSH_SIGNS.items():
            result = chsh_from_counts(self._counts(bell_state(name)), signs)
            self.assertAlmostEqual(result.S, TSIRELSON, places=9)

    def test_background_scales_correlations(self):
        """A flat background shrinks S by the signal fraction."""
        result = chsh_from_counts(self._counts(bell_state(BellState.PHI_PLUS), shots=1000, background=50))
        self.assertAlmostEqual(result.S, TSIRELSON * 1000 / 1200, places=9)

    def test_correlation_from_counts(self):
        """Equal outcomes are fully correlated."""
        self.assertEqual(correlation_from_counts([10, 0, 0, 10]), 1)
        self.assertEqual(correlation_from_counts([0, 5, 5, 0]), -1)

    def test_empty_pair(self):
        """A pair without coincidences is rejected."""
        with self.assertRaises(DomainError):
            correlation_from_counts([0, 0, 0, 0])

    def test_wrong_length(self):
        """Sixteen counts are required."""
        with self.assertRaises(DomainError):
            chsh_from_counts([1] * 15)
