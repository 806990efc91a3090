import math

import numpy as np
from django.test import SimpleTestCase
from numpy.testing import assert_allclose

from apps.tomo.exceptions import DomainError
from apps.tomo.services import (
    CANONICAL_SETTINGS,
    bell_state,
    born,
    canonical_probabilities,
    probabilities_from_counts,
    projector,
)
from apps.tomo.tests.utils import random_density_matrix
from apps.tomo.types import BellState, DensityMatrix, MeasurementSetting, QubitProjector

ZERO = QubitProjector.computational(0)
PLUS = QubitProjector.equatorial(0)


class QubitProjectorTestCase(SimpleTestCase):
    def test_phase_is_wrapped(self):
        """Equatorial phases are stored in [0, 2pi)."""
        self.assertAlmostEqual(QubitProjector.equatorial(-math.pi / 2).phase, 3 * math.pi / 2)
        self.assertAlmostEqual(QubitProjector.equatorial(5 * math.pi).phase, math.pi)

    def test_orthogonal_partner(self):
        """The orthogonal projector is shifted by pi or flips the bit."""
        self.assertEqual(ZERO.orthogonal(), QubitProjector.computational(1))
        self.assertAlmostEqual(abs(PLUS.vector().conj() @ PLUS.orthogonal().vector()), 0, places=12)

    def test_invalid_bit(self):
        """Computational projectors only accept bits 0 and 1."""
        with self.assertRaises(DomainError):
            QubitProjector.computational(2)


class ProjectorTestCase(SimpleTestCase):
    """Tests for two-qubit projectors."""

    def test_computational(self):
        """Computational zeros on both qubits give |00><00|."""
        expected = np.zeros((4, 4))
        expected[0, 0] = 1
        assert_allclose(projector(MeasurementSetting(ZERO, ZERO)), expected)

    def test_equatorial(self):
        """Zero-phase equatorial projectors give |++><++|."""
        assert_allclose(projector(MeasurementSetting(PLUS, PLUS)), np.full((4, 4), 0.25), atol=1e-15)

    def test_rank_one(self):
        """Every projector is idempotent with unit trace."""
        rng = np.random.default_rng(2)
        settings = list(CANONICAL_SETTINGS) + [
            MeasurementSetting(QubitProjector.equatorial(a), QubitProjector.equatorial(b))
            for a, b in rng.uniform(0, 2 * math.pi, size=(10, 2))
        ]
        for setting in settings:
            P = projector(setting)
            assert_allclose(P @ P, P, atol=1e-12)
            self.assertAlmostEqual(np.trace(P).real, 1, places=12)

    def test_canonical_ordering(self):
        """The canonical list is control major over {0, 1, +, +i}."""
        self.assertEqual(len(CANONICAL_SETTINGS), 16)
        self.assertEqual(CANONICAL_SETTINGS[1], MeasurementSetting(ZERO, QubitProjector.computational(1)))
        self.assertEqual(CANONICAL_SETTINGS[4].control, QubitProjector.computational(1))
        self.assertAlmostEqual(CANONICAL_SETTINGS[15].target.phase, math.pi / 2)


class BornTestCase(SimpleTestCase):
    """Tests for Born probabilities."""

    def test_bell_state(self):
        """Phi+ is found in |00> half of the time."""
        self.assertAlmostEqual(born(bell_state(BellState.PHI_PLUS), projector(MeasurementSetting(ZERO, ZERO))), 0.5)

    def test_pure_state_on_itself(self):
        """A pure state projected on itself gives one."""
        rho = DensityMatrix.from_vector([1, 1j, 0, 1])
        self.assertAlmostEqual(born(rho, rho.entries), 1, places=12)

    def test_maximally_mixed(self):
        """The maximally mixed state gives 1/4 for every rank-1 projector."""
        assert_allclose(canonical_probabilities(DensityMatrix.maximally_mixed()), np.full(16, 0.25), atol=1e-12)


class ProbabilitiesFromCountsTestCase(SimpleTestCase):
    """Tests for count normalisation."""

    def test_normalised_by_computational_counts(self):
        """Frequencies of an exact state equal its Born probabilities."""
        rho = random_density_matrix(np.random.default_rng(8))
        probabilities = canonical_probabilities(rho)
        assert_allclose(probabilities_from_counts(probabilities * 12345), probabilities, atol=1e-12)

    def test_zero_counts(self):
        """All-zero computational counts cannot be normalised."""
        with self.assertRaises(DomainError):
            probabilities_from_counts(np.zeros(16))

    def test_negative_counts(self):
        """Negative counts are rejected."""
        counts = np.ones(16)
        counts[3] = -1
        with self.assertRaises(DomainError):
            probabilities_from_counts(counts)
