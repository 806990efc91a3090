"""
Unit tests for the logical-qubit layer.
"""

import numpy as np
from django.test import SimpleTestCase
from numpy.testing import assert_allclose

from apps.logical.exceptions import DomainError, LogicalError
from apps.logical.services import (
    decode_density,
    decode_density_normalized,
    encode_control,
    encode_target,
    gate_overlap,
    ideal_gate,
    logical_map,
    run_gate,
    truth_table,
)
from apps.logical.types import GateName, LogicalQubitState, TwoQubitOperator
from apps.mode_core.services import evolve_pair, postselect
from apps.mode_core.types import NoiseModel, PostSelectedState, TransferMatrix

E = np.eye(4, dtype=complex)
SQRT_HALF = 1 / np.sqrt(2)

BELL_VECTORS = {
    "phi_plus": np.array([1, 0, 0, 1]) * SQRT_HALF,
    "phi_minus": np.array([1, 0, 0, -1]) * SQRT_HALF,
    "psi_plus": np.array([0, 1, 1, 0]) * SQRT_HALF,
    "psi_minus": np.array([0, 1, -1, 0]) * SQRT_HALF,
}


def _projector(vector):
    vector = np.asarray(vector, dtype=complex)
    return np.outer(vector, vector.conj())


class LogicalQubitStateTestCase(SimpleTestCase):
    """Tests for single logical qubits."""

    def test_unnormalized_state(self):
        """Amplitudes must be normalized."""
        with self.assertRaises(DomainError):
            LogicalQubitState((1, 1))

    def test_labels(self):
        """Named states have the expected amplitudes."""
        assert_allclose(LogicalQubitState.from_label("-").vector(), [SQRT_HALF, -SQRT_HALF])
        assert_allclose(LogicalQubitState.from_label("+i").vector(), [SQRT_HALF, 1j * SQRT_HALF])

    def test_unknown_label(self):
        """Unknown labels are a domain error."""
        with self.assertRaises(DomainError):
            LogicalQubitState.from_label("2")


class EncodingTestCase(SimpleTestCase):
    """Tests for logical to physical encoding."""

    def test_control_encoding(self):
        """Control |0>, |1>, |+> land on the control-rail modes."""
        assert_allclose(encode_control(LogicalQubitState.zero()), E[0])
        assert_allclose(encode_control(LogicalQubitState.one()), E[1])
        assert_allclose(encode_control(LogicalQubitState.plus()), (E[0] + E[1]) * SQRT_HALF)

    def test_target_encoding(self):
        """Target qubits are stored in the rotated transverse basis."""
        assert_allclose(encode_target(LogicalQubitState.zero()), (E[2] + E[3]) * SQRT_HALF)
        assert_allclose(encode_target(LogicalQubitState.one()), (E[2] - E[3]) * SQRT_HALF)
        assert_allclose(encode_target(LogicalQubitState.plus()), E[2], atol=1e-15)

    def test_roundtrip_through_identity(self):
        """Encode, pass through the identity and decode returns the product input."""
        rng = np.random.default_rng(41)
        for _ in range(100):
            pair = []
            for _qubit in range(2):
                amplitudes = rng.normal(size=2) + 1j * rng.normal(size=2)
                pair.append(LogicalQubitState(tuple(amplitudes / np.linalg.norm(amplitudes))))
            control, target = pair
            A = evolve_pair(TransferMatrix.identity(), encode_control(control), encode_target(target))
            rho = decode_density_normalized(postselect(A, 1))
            expected = np.kron(_projector(control.vector()), _projector(target.vector()))
            assert_allclose(rho, expected, atol=1e-12)

    def test_maximally_mixed_is_invariant(self):
        """Decoding preserves the maximally mixed state."""
        rho = decode_density(PostSelectedState(np.eye(4) / 4))
        assert_allclose(rho, np.eye(4) / 4, atol=1e-12)

    def test_decode_preserves_trace(self):
        """The basis change keeps the success probability as the trace."""
        state = run_gate(NoiseModel(x=0.4), LogicalQubitState.plus(), LogicalQubitState.one())
        self.assertAlmostEqual(np.trace(decode_density(state)).real, state.success_probability, places=12)

    def test_normalized_zero_state(self):
        """The normalized decode of a zero state is a domain error."""
        with self.assertRaises(DomainError):
            decode_density_normalized(PostSelectedState(np.zeros((4, 4))))


class IdealGateTestCase(SimpleTestCase):
    """Tests for the reference gates."""

    def test_cnot_flips_target(self):
        """CNOT maps |10> to |11>."""
        assert_allclose(ideal_gate(GateName.CNOT) @ E[2], E[3])

    def test_cnot_from_cphase(self):
        """(I ⊗ H) CPhase (I ⊗ H) equals CNOT."""
        h = ideal_gate(GateName.HADAMARD_ON_TARGET)
        built = h @ ideal_gate(GateName.CPHASE) @ h
        self.assertLess(np.max(np.abs(built.entries - ideal_gate(GateName.CNOT).entries)), 1e-12)

    def test_cphase_diagonal(self):
        """CPhase is diag(1, 1, 1, -1)."""
        assert_allclose(np.diag(ideal_gate("cphase").entries), [1, 1, 1, -1])

    def test_all_gates_unitary(self):
        """Every reference gate is unitary."""
        for name in GateName:
            self.assertTrue(ideal_gate(name).is_unitary())


class LogicalMapTestCase(SimpleTestCase):
    """Tests for the extracted logical operator."""

    def test_ideal_map_is_scaled_cnot(self):
        """The ideal chip acts as CNOT / 3."""
        G = logical_map(NoiseModel())
        assert_allclose(G.entries, ideal_gate(GateName.CNOT).entries / 3, atol=1e-12)
        self.assertAlmostEqual(gate_overlap(G, ideal_gate(GateName.CNOT)), 1, places=12)

    def test_te1_loss_breaks_proportionality(self):
        """Equal TE1 loss on both rails gives diag(1, t, t, -t^2) / 3 in the physical basis."""
        t = 0.9
        G = logical_map(NoiseModel(transmissions=(1, t, 1, t)))
        h = ideal_gate(GateName.HADAMARD_ON_TARGET).entries
        expected = h @ np.diag([1, t, t, -(t**2)]) @ h / 3
        assert_allclose(G.entries, expected, atol=1e-12)
        self.assertLess(gate_overlap(G, ideal_gate(GateName.CNOT)), 1 - 1e-4)

    def test_balanced_coupler_deviates(self):
        """A 50/50 coupler no longer implements CNOT."""
        G = logical_map(NoiseModel(cross_ratio=0.5))
        self.assertLess(gate_overlap(G, ideal_gate(GateName.CNOT)), 1 - 1e-3)

    def test_requires_full_overlap(self):
        """Partially distinguishable photons have no logical operator."""
        with self.assertRaises(DomainError):
            logical_map(NoiseModel(x=0.9))

    def test_overlap_is_phase_invariant(self):
        """A global phase and scale do not change the overlap."""
        cnot = ideal_gate(GateName.CNOT)
        scaled = TwoQubitOperator(0.3j * cnot.entries)
        self.assertAlmostEqual(gate_overlap(scaled, cnot), 1, places=12)
        self.assertAlmostEqual(gate_overlap(ideal_gate(GateName.IDENTITY), cnot), 0.25, places=12)


class BellGenerationTestCase(SimpleTestCase):
    """Tests for superposition inputs producing Bell states."""

    def test_input_to_bell_labeling(self):
        """|+0>, |-0>, |+1>, |-1> produce Phi+, Phi-, Psi+, Psi-."""
        pairs = {
            ("+", "0"): "phi_plus",
            ("-", "0"): "phi_minus",
            ("+", "1"): "psi_plus",
            ("-", "1"): "psi_minus",
        }
        for (control, target), bell in pairs.items():
            state = run_gate(
                NoiseModel(), LogicalQubitState.from_label(control), LogicalQubitState.from_label(target)
            )
            self.assertAlmostEqual(state.success_probability, 1 / 9, places=12)
            assert_allclose(decode_density_normalized(state), _projector(BELL_VECTORS[bell]), atol=1e-12)

    def test_eleven_input_flips_target(self):
        """|11> leaves the gate as |10>."""
        state = run_gate(NoiseModel(), LogicalQubitState.one(), LogicalQubitState.one())
        assert_allclose(decode_density_normalized(state), _projector(E[2]), atol=1e-12)


class TruthTableTestCase(SimpleTestCase):
    """Tests for computational-basis truth tables."""

    def test_ideal_is_cnot_permutation(self):
        """The ideal chip gives the CNOT permutation matrix."""
        table = truth_table(NoiseModel())
        assert_allclose(table.as_matrix(), np.real(ideal_gate(GateName.CNOT).entries.T), atol=1e-12)
        self.assertEqual(list(np.argmax(table.as_matrix(), axis=1)), [0, 1, 3, 2])
        for row in table.rows:
            self.assertAlmostEqual(row.success_probability, 1 / 9, places=12)

    def test_distinguishable_photons(self):
        """Without interference the control-one rows mix; control-zero rows stay exact."""
        matrix = truth_table(NoiseModel(x=0)).as_matrix()
        assert_allclose(matrix[0], [1, 0, 0, 0], atol=1e-12)
        assert_allclose(matrix[1], [0, 1, 0, 0], atol=1e-12)
        assert_allclose(matrix[2], [0, 0, 2 / 3, 1 / 3], atol=1e-12)
        assert_allclose(matrix[3], [0, 0, 1 / 3, 2 / 3], atol=1e-12)

    def test_blocked_control_te1(self):
        """Blocking control TE1 leaves the control-one rows undefined."""
        table = truth_table(NoiseModel(transmissions=(1, 0, 1, 1)))
        self.assertEqual([row.is_defined for row in table.rows], [True, True, False, False])
        self.assertIsNone(table.rows[2].probabilities)
        self.assertEqual(table.rows[3].success_probability, 0)
        self.assertFalse(table.is_complete)
        with self.assertRaises(LogicalError):
            table.as_matrix()
