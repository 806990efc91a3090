"""
Unit tests for the physical mode layer.
"""

import itertools

import numpy as np
from django.test import SimpleTestCase
from numpy.testing import assert_allclose
from scipy.stats import unitary_group

from apps.mode_core.exceptions import DomainError, PassivityError
from apps.mode_core.services import (
    bosonic_output_distribution,
    cnot_circuit,
    coincidence_probability,
    compose,
    evolve_pair,
    loss_matrix,
    mma_matrix,
    permanent,
    postselect,
    tmddc_matrix,
    two_photon_distribution,
)
from apps.mode_core.types import NUM_MODES, ModeId, NoiseModel, PostSelectedState, Rail, TransferMatrix, Transverse

E = np.eye(4, dtype=complex)


def _random_unitaries(count, seed=20240):
    rng = np.random.default_rng(seed)
    return [TransferMatrix(unitary_group.rvs(4, random_state=rng), lossless=True) for _ in range(count)]


class ModeIdTestCase(SimpleTestCase):
    """Tests for the mode ordering."""

    def test_fixed_ordering(self):
        """Control TE0, Control TE1, Target TE0, Target TE1 map to 0..3."""
        self.assertEqual(ModeId(Rail.CONTROL, Transverse.TE0).index, 0)
        self.assertEqual(ModeId(Rail.CONTROL, Transverse.TE1).index, 1)
        self.assertEqual(ModeId(Rail.TARGET, Transverse.TE0).index, 2)
        self.assertEqual(ModeId(Rail.TARGET, Transverse.TE1).index, 3)

    def test_from_index_is_inverse(self):
        """from_index inverts index for every mode."""
        for index in range(NUM_MODES):
            self.assertEqual(ModeId.from_index(index).index, index)

    def test_out_of_range_index(self):
        """Indices outside 0..3 are rejected."""
        with self.assertRaises(DomainError):
            ModeId.from_index(4)


class TransferMatrixTestCase(SimpleTestCase):
    """Tests for the transfer matrix invariants."""

    def test_gain_is_rejected(self):
        """A singular value above one raises a passivity error."""
        with self.assertRaises(PassivityError):
            TransferMatrix(2 * np.eye(4))

    def test_lossless_flag_checks_unitarity(self):
        """A lossy matrix cannot be flagged lossless."""
        with self.assertRaises(DomainError):
            TransferMatrix(0.5 * np.eye(4), lossless=True)

    def test_entries_are_read_only(self):
        """Entries cannot be modified in place."""
        matrix = TransferMatrix.identity()
        with self.assertRaises(ValueError):
            matrix.entries[0, 0] = 0


class TmddcMatrixTestCase(SimpleTestCase):
    """Tests for the transverse-mode-dependent directional coupler."""

    def test_two_thirds_amplitudes(self):
        """TE1 through and cross amplitudes are sqrt(1/3) and i*sqrt(2/3)."""
        U = tmddc_matrix(2 / 3).entries
        self.assertAlmostEqual(U[1, 1], np.sqrt(1 / 3), places=12)
        self.assertAlmostEqual(U[3, 3], np.sqrt(1 / 3), places=12)
        self.assertAlmostEqual(U[3, 1], 1j * np.sqrt(2 / 3), places=12)
        self.assertAlmostEqual(U[1, 3], 1j * np.sqrt(2 / 3), places=12)
        self.assertAlmostEqual(abs(U[1, 1]), 0.57735, places=5)
        self.assertAlmostEqual(abs(U[3, 1]), 0.81650, places=5)

    def test_te0_untouched(self):
        """Modes 0 and 2 pass straight through."""
        U = tmddc_matrix(2 / 3).entries
        assert_allclose(U[:, 0], E[:, 0], atol=1e-15)
        assert_allclose(U[:, 2], E[:, 2], atol=1e-15)

    def test_zero_ratio_is_identity(self):
        """No coupling gives the identity."""
        assert_allclose(tmddc_matrix(0).entries, E, atol=1e-15)

    def test_balanced_coupler_is_unitary(self):
        """A 50/50 coupler is unitary with equal split."""
        matrix = tmddc_matrix(0.5)
        U = matrix.entries
        self.assertTrue(matrix.lossless)
        self.assertAlmostEqual(abs(U[1, 1]) ** 2, 0.5, places=12)
        self.assertAlmostEqual(abs(U[3, 1]) ** 2, 0.5, places=12)
        assert_allclose(U.conj().T @ U, E, atol=1e-12)

    def test_residual_te0_coupling(self):
        """A residual TE0 ratio couples modes 0 and 2 with the same convention."""
        U = tmddc_matrix(2 / 3, te0_cross_ratio=0.01).entries
        self.assertAlmostEqual(U[2, 0], 1j * 0.1, places=12)
        self.assertAlmostEqual(U[0, 0], np.sqrt(0.99), places=12)

    def test_ratio_out_of_range(self):
        """Ratios outside [0, 1] are rejected."""
        for ratio in (-0.1, 1.1):
            with self.assertRaises(DomainError):
                tmddc_matrix(ratio)


class MmaMatrixTestCase(SimpleTestCase):
    """Tests for the multimode attenuator."""

    def test_control_attenuator(self):
        """TE0 of the control rail keeps a third of its power."""
        matrix = mma_matrix(Rail.CONTROL, 1 / 3, 1)
        assert_allclose(np.diag(matrix.entries), [np.sqrt(1 / 3), 1, 1, 1], atol=1e-15)
        self.assertAlmostEqual(matrix.entries[0, 0].real, 0.57735, places=5)
        self.assertFalse(matrix.lossless)

    def test_transparent_attenuator(self):
        """Full transmission on both modes is the identity and lossless."""
        matrix = mma_matrix(Rail.TARGET, 1, 1)
        assert_allclose(matrix.entries, E)
        self.assertTrue(matrix.lossless)

    def test_blocked_te0(self):
        """Blocking target TE0 leaves singular values {0, 1, 1, 1}."""
        values = sorted(mma_matrix(Rail.TARGET, 0, 1).singular_values())
        assert_allclose(values, [0, 1, 1, 1], atol=1e-15)

    def test_out_of_range(self):
        """Transmissions above one are rejected."""
        with self.assertRaises(DomainError):
            mma_matrix(Rail.CONTROL, 1.5, 1)


class LossMatrixTestCase(SimpleTestCase):
    """Tests for phenomenological loss."""

    def test_unit_amplitudes(self):
        """Unit amplitudes give the identity."""
        assert_allclose(loss_matrix((1, 1, 1, 1)).entries, E)

    def test_te1_loss(self):
        """Amplitude 0.9 on TE1 transmits 0.81 of the power on both rails."""
        U = loss_matrix((1, 0.9, 1, 0.9)).entries
        self.assertAlmostEqual(abs(U[1, 1]) ** 2, 0.81, places=12)
        self.assertAlmostEqual(abs(U[3, 3]) ** 2, 0.81, places=12)

    def test_uniform_loss(self):
        """Uniform half amplitude is passive and not lossless."""
        matrix = loss_matrix((0.5, 0.5, 0.5, 0.5))
        self.assertFalse(matrix.lossless)
        self.assertLessEqual(max(matrix.singular_values()), 1)

    def test_wrong_length(self):
        """Exactly four amplitudes are required."""
        with self.assertRaises(DomainError):
            loss_matrix((1, 1, 1))


class ComposeTestCase(SimpleTestCase):
    """Tests for circuit composition."""

    def test_identities(self):
        """Two identities compose to the identity."""
        matrix = compose([TransferMatrix.identity(), TransferMatrix.identity()])
        assert_allclose(matrix.entries, E)
        self.assertTrue(matrix.lossless)

    def test_disjoint_stages_commute(self):
        """Coupler and attenuators compose to the same matrix in any order."""
        stages = [tmddc_matrix(2 / 3), mma_matrix(Rail.CONTROL, 1 / 3, 1), mma_matrix(Rail.TARGET, 1 / 3, 1)]
        reference = compose(stages).entries
        for order in itertools.permutations(stages):
            self.assertLess(np.max(np.abs(compose(list(order)).entries - reference)), 1e-12)

    def test_propagation_order(self):
        """The first stage acts first."""
        first, second = _random_unitaries(2, seed=7)
        assert_allclose(compose([first, second]).entries, second.entries @ first.entries, atol=1e-12)

    def test_associativity(self):
        """Grouping of stages does not matter."""
        a, b, c = _random_unitaries(3, seed=11)
        left = compose([compose([a, b]), c]).entries
        right = compose([a, compose([b, c])]).entries
        self.assertLess(np.max(np.abs(left - right)), 1e-12)

    def test_lossy_stage_stays_passive(self):
        """Composing lossless and lossy stages is passive and not lossless."""
        matrix = compose([tmddc_matrix(2 / 3), loss_matrix((0.5, 0.9, 1, 0.2))])
        self.assertFalse(matrix.lossless)
        self.assertLessEqual(max(matrix.singular_values()), 1 + 1e-12)

    def test_empty_list(self):
        """Composing nothing is an error."""
        with self.assertRaises(DomainError):
            compose([])


class CnotCircuitTestCase(SimpleTestCase):
    """Tests for the composed CNOT chip."""

    def test_ideal_singular_values(self):
        """The ideal circuit has singular values {sqrt(1/3), sqrt(1/3), 1, 1}."""
        values = sorted(cnot_circuit(NoiseModel()).singular_values())
        assert_allclose(values, [np.sqrt(1 / 3), np.sqrt(1 / 3), 1, 1], atol=1e-12)

    def test_ideal_te1_block(self):
        """TE1 block equals the two-thirds coupler."""
        U = cnot_circuit(NoiseModel()).entries
        self.assertAlmostEqual(U[1, 1], np.sqrt(1 / 3), places=12)
        self.assertAlmostEqual(U[3, 1], 1j * np.sqrt(2 / 3), places=12)

    def test_total_loss(self):
        """Zero transmission everywhere blocks every photon."""
        noise = NoiseModel(transmissions=(0, 0, 0, 0))
        U = cnot_circuit(noise)
        assert_allclose(U.entries, np.zeros((4, 4)))
        A = evolve_pair(U, E[0], E[2])
        self.assertEqual(postselect(A, 1).success_probability, 0)


class EvolvePairTestCase(SimpleTestCase):
    """Tests for two-photon propagation."""

    def test_identity(self):
        """Through the identity the amplitude is the input outer product."""
        A = evolve_pair(TransferMatrix.identity(), E[1], E[3])
        expected = np.zeros((4, 4))
        expected[1, 3] = 1
        assert_allclose(A.entries, expected)

    def test_ideal_circuit_te1_inputs(self):
        """Both photons in TE1 give the hand-derived labeled amplitudes."""
        A = evolve_pair(cnot_circuit(NoiseModel()), E[1], E[3])
        self.assertAlmostEqual(A[1, 3], 1 / 3, places=12)
        self.assertAlmostEqual(A[3, 1], -2 / 3, places=12)
        self.assertAlmostEqual(A[1, 1], 1j * np.sqrt(2) / 3, places=12)
        self.assertAlmostEqual(A[3, 3], 1j * np.sqrt(2) / 3, places=12)

    def test_lossless_norm(self):
        """Lossless circuits conserve the labeled norm and give rank one."""
        rng = np.random.default_rng(3)
        for U in _random_unitaries(10, seed=5):
            u = rng.normal(size=4) + 1j * rng.normal(size=4)
            v = rng.normal(size=4) + 1j * rng.normal(size=4)
            A = evolve_pair(U, u / np.linalg.norm(u), v / np.linalg.norm(v))
            self.assertAlmostEqual(A.total_probability, 1, places=12)
            self.assertEqual(np.linalg.matrix_rank(A.entries, tol=1e-10), 1)

    def test_unnormalized_input(self):
        """Unnormalized inputs are rejected."""
        with self.assertRaises(DomainError):
            evolve_pair(TransferMatrix.identity(), 2 * E[0], E[2])


class CoincidenceProbabilityTestCase(SimpleTestCase):
    """Tests for two-photon detection probabilities."""

    def test_hom_through_two_thirds_coupler(self):
        """Coincidence of the TE1 pair follows (5 - 4x) / 9."""
        A = evolve_pair(tmddc_matrix(2 / 3), E[1], E[3])
        for x in (0, 0.25, 0.5, 1):
            self.assertAlmostEqual(coincidence_probability(A, 1, 3, x), (5 - 4 * x) / 9, places=12)
        ratio = coincidence_probability(A, 1, 3, 1) / coincidence_probability(A, 1, 3, 0)
        self.assertAlmostEqual(ratio, 0.2, places=12)

    def test_balanced_beamsplitter(self):
        """A 50/50 coupler with identical photons never gives a coincidence."""
        A = evolve_pair(tmddc_matrix(0.5), E[1], E[3])
        self.assertAlmostEqual(coincidence_probability(A, 1, 3, 1), 0, places=12)
        self.assertAlmostEqual(coincidence_probability(A, 1, 1, 1), 0.5, places=12)
        self.assertAlmostEqual(coincidence_probability(A, 3, 3, 1), 0.5, places=12)

    def test_accepts_mode_ids(self):
        """ModeId arguments give the same result as indices."""
        A = evolve_pair(tmddc_matrix(2 / 3), E[1], E[3])
        control = ModeId(Rail.CONTROL, Transverse.TE1)
        target = ModeId(Rail.TARGET, Transverse.TE1)
        self.assertEqual(coincidence_probability(A, control, target, 0.3), coincidence_probability(A, 1, 3, 0.3))

    def test_probability_conservation(self):
        """Outcome probabilities sum to one for lossless circuits and orthogonal inputs."""
        rng = np.random.default_rng(17)
        for U in _random_unitaries(20, seed=13):
            i, j = rng.choice(4, size=2, replace=False)
            A = evolve_pair(U, E[i], E[j])
            for x in (0, 0.5, 1, rng.uniform()):
                self.assertAlmostEqual(sum(two_photon_distribution(A, x).values()), 1, places=12)

    def test_monotone_dip(self):
        """For ratios between 1/2 and 1 coincidences fall strictly with x."""
        grid = np.linspace(0, 1, 21)
        for ratio in (0.55, 2 / 3, 0.9):
            A = evolve_pair(tmddc_matrix(ratio), E[1], E[3])
            values = [coincidence_probability(A, 1, 3, x) for x in grid]
            self.assertTrue(all(later < earlier for earlier, later in itertools.pairwise(values)))

    def test_overlap_out_of_range(self):
        """x outside [0, 1] is rejected."""
        A = evolve_pair(TransferMatrix.identity(), E[0], E[2])
        with self.assertRaises(DomainError):
            coincidence_probability(A, 0, 2, 1.2)


class PostselectTestCase(SimpleTestCase):
    """Tests for post-selection on one photon per rail."""

    def test_ideal_success_probability(self):
        """Every logical computational input succeeds with probability 1/9."""
        U = cnot_circuit(NoiseModel())
        target_zero = (E[2] + E[3]) / np.sqrt(2)
        target_one = (E[2] - E[3]) / np.sqrt(2)
        for control in (E[0], E[1]):
            for target in (target_zero, target_one):
                state = postselect(evolve_pair(U, control, target), 1)
                self.assertAlmostEqual(state.success_probability, 1 / 9, places=12)

    def test_identity_passthrough(self):
        """Through the identity TE0/TE0 stays put with certainty."""
        for x in (0, 0.4, 1):
            state = postselect(evolve_pair(TransferMatrix.identity(), E[0], E[2]), x)
            expected = np.zeros((4, 4))
            expected[0, 0] = 1
            assert_allclose(state.rho, expected, atol=1e-15)
            self.assertAlmostEqual(state.success_probability, 1, places=12)

    def test_diagonal_matches_coincidences(self):
        """Diagonal entries equal the rail-split coincidence probabilities."""
        rng = np.random.default_rng(29)
        for U in _random_unitaries(20, seed=23):
            u = rng.normal(size=4) + 1j * rng.normal(size=4)
            v = rng.normal(size=4) + 1j * rng.normal(size=4)
            A = evolve_pair(U, u / np.linalg.norm(u), v / np.linalg.norm(v))
            state = postselect(A, 0.7)
            expected = [coincidence_probability(A, c, t, 0.7) for c in (0, 1) for t in (2, 3)]
            assert_allclose(np.real(np.diag(state.rho)), expected, atol=1e-12)
            self.assertAlmostEqual(state.success_probability, sum(expected), places=12)

    def test_normalized_zero_trace(self):
        """Normalizing a zero state is an error."""
        with self.assertRaises(DomainError):
            PostSelectedState(np.zeros((4, 4))).normalized()


class BosonicOracleTestCase(SimpleTestCase):
    """Tests against the permanent-based two-photon formula."""

    def test_permanent_small_cases(self):
        """Ryser's formula matches the permanent definition."""
        self.assertAlmostEqual(permanent([[1, 2], [3, 4]]), 10)
        self.assertAlmostEqual(permanent(np.ones((3, 3))), 6)
        self.assertEqual(permanent(np.zeros((0, 0))), 1)

    def test_matches_labeled_model_at_full_overlap(self):
        """Labeled-photon probabilities at x=1 match the permanent formula for random unitaries."""
        for U in _random_unitaries(100):
            for i, j in itertools.combinations(range(4), 2):
                labeled = two_photon_distribution(evolve_pair(U, E[i], E[j]), 1)
                bosonic = bosonic_output_distribution(U, (i, j))
                for pair, probability in bosonic.items():
                    self.assertAlmostEqual(labeled[pair], probability, places=12)
