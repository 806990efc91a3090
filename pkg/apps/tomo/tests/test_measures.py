import numpy as np
from django.test import SimpleTestCase

from apps.tomo.exceptions import DomainError
from apps.tomo.services import bell_state, concurrence, linear_entropy, purity, state_fidelity, tangle
from apps.tomo.tests.utils import random_density_matrix, random_product_state
from apps.tomo.types import BellState, DensityMatrix


def _werner(p):
    return DensityMatrix(p * bell_state(BellState.PHI_PLUS).entries + (1 - p) * np.eye(4) / 4)


class StateFidelityTestCase(SimpleTestCase):
    """Tests for the Uhlmann fidelity."""

    def test_self_fidelity(self):
        """A state has unit fidelity with itself."""
        rng = np.random.default_rng(71)
        for _ in range(20):
            rho = random_density_matrix(rng)
            self.assertAlmostEqual(state_fidelity(rho, rho), 1, places=9)

    def test_orthogonal_bell_states(self):
        """Orthogonal pure states have zero fidelity."""
        self.assertAlmostEqual(state_fidelity(bell_state("phi_plus"), bell_state("psi_minus")), 0, places=12)

    def test_pure_against_mixed(self):
        """Against the maximally mixed state a pure state has fidelity 1/4."""
        self.assertAlmostEqual(state_fidelity(bell_state("phi_plus"), DensityMatrix.maximally_mixed()), 0.25, places=12)

    def test_symmetry_and_bounds(self):
        """Fidelity is symmetric and lies in [0, 1]."""
        rng = np.random.default_rng(72)
        for _ in range(50):
            rho, sigma = random_density_matrix(rng), random_density_matrix(rng)
            forward, backward = state_fidelity(rho, sigma), state_fidelity(sigma, rho)
            self.assertAlmostEqual(forward, backward, places=9)
            self.assertTrue(0 <= forward <= 1)

    def test_non_positive_argument(self):
        """A clearly negative eigenvalue is rejected."""
        with self.assertRaises(DomainError):
            state_fidelity(np.diag([1.1, -0.1, 0, 0]), DensityMatrix.maximally_mixed())


class MixednessTestCase(SimpleTestCase):
    """Tests for purity and linear entropy."""

    def test_pure_state(self):
        """Pure states have zero linear entropy."""
        self.assertAlmostEqual(linear_entropy(bell_state("psi_plus")), 0, places=12)
        self.assertAlmostEqual(purity(bell_state("psi_plus")), 1, places=12)

    def test_maximally_mixed(self):
        """The maximally mixed state has unit linear entropy."""
        self.assertAlmostEqual(linear_entropy(DensityMatrix.maximally_mixed()), 1, places=12)

    def test_equal_bell_mixture(self):
        """An equal mixture of two Bell states has linear entropy 2/3."""
        rho = (bell_state("phi_plus").entries + bell_state("psi_plus").entries) / 2
        self.assertAlmostEqual(linear_entropy(rho), 2 / 3, places=12)


class TangleTestCase(SimpleTestCase):
    """Tests for concurrence and tangle."""

    def test_bell_states(self):
        """Every Bell state is maximally entangled."""
        for name in BellState:
            self.assertAlmostEqual(tangle(bell_state(name)), 1, places=10)

    def test_product_states(self):
        """Product pure states carry no entanglement."""
        rng = np.random.default_rng(73)
        for _ in range(20):
            self.assertAlmostEqual(tangle(random_product_state(rng)), 0, places=10)

    def test_maximally_mixed(self):
        """The maximally mixed state is separable."""
        self.assertAlmostEqual(tangle(DensityMatrix.maximally_mixed()), 0, places=12)

    def test_werner_states(self):
        """Werner states have concurrence max(0, (3p - 1) / 2)."""
        for p in (0.2, 1 / 3, 0.5, 0.8, 0.95):
            self.assertAlmostEqual(concurrence(_werner(p)), max(0.0, (3 * p - 1) / 2), places=10)

    def test_bounds(self):
        """Tangle of random states lies in [0, 1]."""
        rng = np.random.default_rng(74)
        for _ in range(50):
            value = tangle(random_density_matrix(rng, rank=int(rng.integers(1, 5))))
            self.assertTrue(0 <= value <= 1)
