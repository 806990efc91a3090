from unittest import mock

import numpy as np
from django.test import SimpleTestCase
from numpy.testing import assert_allclose
from scipy.stats import unitary_group

from apps.tomo.exceptions import DomainError, ReconstructionError
from apps.tomo.services import (
    apply_chi,
    average_gate_fidelity,
    canonical_input_states,
    chi_of_unitary,
    pauli_index,
    process_fidelity,
    qpt,
    trace_preservation_residual,
)

CNOT = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex)


def _unitary_outputs(U):
    return [U @ state.entries @ U.conj().T for state in canonical_input_states()]


class QptTestCase(SimpleTestCase):
    """Tests for process tomography."""

    def test_identity_channel(self):
        """The identity channel has a single II entry."""
        chi = qpt([state.entries for state in canonical_input_states()])
        expected = np.zeros((16, 16))
        expected[0, 0] = 1
        assert_allclose(chi.entries, expected, atol=1e-8)

    def test_cnot_support(self):
        """CNOT has support on II, IX, ZI and ZX with entries of magnitude 1/4."""
        chi = qpt(_unitary_outputs(CNOT)).entries
        support = [pauli_index(label) for label in ("II", "IX", "ZI", "ZX")]
        self.assertEqual(support, [0, 1, 12, 13])
        coefficients = np.array([1, 1, 1, -1]) / 2
        expected = np.zeros((16, 16))
        expected[np.ix_(support, support)] = np.outer(coefficients, coefficients)
        assert_allclose(chi, expected, atol=1e-8)

    def test_random_unitaries(self):
        """Unitary channels give the rank-1 chi of the unitary."""
        for seed in range(5):
            U = unitary_group.rvs(4, random_state=seed)
            chi = qpt(_unitary_outputs(U))
            assert_allclose(chi.entries, chi_of_unitary(U).entries, atol=1e-8)
            self.assertLess(trace_preservation_residual(chi), 1e-6)
            self.assertEqual(np.linalg.matrix_rank(chi.entries, tol=1e-8), 1)

    def test_depolarized_channel(self):
        """A partially depolarizing channel gives a PSD unit-trace chi below unit fidelity."""
        outputs = [0.9 * state + 0.1 * np.eye(4) / 4 for state in _unitary_outputs(CNOT)]
        chi = qpt(outputs)
        self.assertAlmostEqual(chi.trace, 1, places=10)
        self.assertGreaterEqual(chi.min_eigenvalue, -1e-8)
        self.assertLess(process_fidelity(chi, chi_of_unitary(CNOT)), 1)
        self.assertLess(trace_preservation_residual(chi), 1e-6)

    def test_wrong_number_of_outputs(self):
        """Exactly 16 outputs are required."""
        with self.assertRaises(DomainError):
            qpt(_unitary_outputs(CNOT)[:15])

    @mock.patch("apps.tomo.services.process.np.linalg.eigh", side_effect=np.linalg.LinAlgError("no convergence"))
    def test_diagonalization_failure(self, eigh):
        """A failed eigendecomposition surfaces as a reconstruction error."""
        with self.assertRaises(ReconstructionError):
            qpt(_unitary_outputs(CNOT))


class ChiTestCase(SimpleTestCase):
    def test_apply_chi(self):
        """A unitary chi acts as conjugation by the unitary."""
        U = unitary_group.rvs(4, random_state=9)
        rho = canonical_input_states()[7].entries
        assert_allclose(apply_chi(chi_of_unitary(U), rho), U @ rho @ U.conj().T, atol=1e-12)


class ProcessFidelityTestCase(SimpleTestCase):
    """Tests for process fidelity."""

    def test_self_fidelity(self):
        """A process has unit fidelity with itself."""
        chi = chi_of_unitary(CNOT)
        self.assertAlmostEqual(process_fidelity(chi, chi), 1, places=10)

    def test_cnot_against_identity(self):
        """CNOT and the identity overlap with fidelity 1/4."""
        self.assertAlmostEqual(process_fidelity(chi_of_unitary(CNOT), chi_of_unitary(np.eye(4))), 0.25, places=12)

    def test_average_gate_fidelity(self):
        """Average gate fidelity is (4F + 1) / 5."""
        self.assertAlmostEqual(average_gate_fidelity(chi_of_unitary(CNOT), chi_of_unitary(CNOT)), 1, places=10)
        self.assertAlmostEqual(average_gate_fidelity(chi_of_unitary(CNOT), chi_of_unitary(np.eye(4))), 0.4, places=10)
