"""
Process tomography in the two-qubit Pauli product basis.

``chi`` describes ``rho -> sum_mn chi_mn E_m rho E_n^†`` with ``E_{4a+b} = sigma_a ⊗ sigma_b``.
"""

import logging
from itertools import product

import numpy as np

from apps.tomo.exceptions import DomainError, ReconstructionError
from apps.tomo.services.measurement import as_matrix, canonical_input_states
from apps.tomo.services.measures import uhlmann_fidelity
from apps.tomo.types import ChiMatrix

logger = logging.getLogger(__name__)

PAULI_LABELS = ("I", "X", "Y", "Z")
PAULIS = (
    np.eye(2, dtype=complex),
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)
PAULI_BASIS = np.array([np.kron(a, b) for a, b in product(PAULIS, repeat=2)])
PAULI_BASIS_LABELS = tuple(a + b for a, b in product(PAULI_LABELS, repeat=2))

PROCESS_PSD_TOLERANCE = 1e-6


def pauli_index(label: str) -> int:
    return PAULI_BASIS_LABELS.index(label)


def _vec(matrix: np.ndarray) -> np.ndarray:
    return np.asarray(matrix).reshape(-1)


def _clip_to_chi(matrix: np.ndarray) -> ChiMatrix:
    matrix = (matrix + matrix.conj().T) / 2
    try:
        values, vectors = np.linalg.eigh(matrix)
    except np.linalg.LinAlgError as exc:
        raise ReconstructionError(f"cannot diagonalize the process matrix: {exc}") from exc
    if values[0] < -PROCESS_PSD_TOLERANCE:
        logger.debug("Clipping process matrix eigenvalue %.3g", values[0])
    values = np.clip(values, 0.0, None)
    if values.sum() <= 0:
        raise ReconstructionError("process matrix has no positive eigenvalue")
    clipped = (vectors * values) @ vectors.conj().T
    clipped = (clipped + clipped.conj().T) / 2
    return ChiMatrix(clipped / values.sum())


def superoperator_to_chi(superoperator: np.ndarray) -> np.ndarray:
    """Unconstrained chi of a row-major superoperator ``vec(out) = S vec(in)``."""
    chi = np.empty((16, 16), dtype=complex)
    for m, n in product(range(16), repeat=2):
        basis_element = np.kron(PAULI_BASIS[m], PAULI_BASIS[n].conj())
        chi[m, n] = np.trace(basis_element.conj().T @ superoperator) / 16
    return chi


def qpt(output_states) -> ChiMatrix:
    """
    Process matrix from the outputs of the 16 canonical product inputs.

    Linear inversion on the input span, then Hermitian part, eigenvalue clipping and unit trace.
    """
    outputs = list(output_states)
    if len(outputs) != 16:
        raise DomainError(f"process tomography needs 16 output states, got {len(outputs)}")

    inputs = np.column_stack([_vec(state.entries) for state in canonical_input_states()])
    results = np.column_stack([_vec(as_matrix(state)) for state in outputs])
    try:
        superoperator = results @ np.linalg.inv(inputs)
    except np.linalg.LinAlgError as exc:
        raise ReconstructionError(f"canonical inputs do not span the operator space: {exc}") from exc
    return _clip_to_chi(superoperator_to_chi(superoperator))


def chi_of_unitary(U) -> ChiMatrix:
    """Rank-1 process matrix of ``rho -> U rho U^†``."""
    U = as_matrix(U)
    coefficients = np.array([np.trace(E.conj().T @ U) / 4 for E in PAULI_BASIS])
    return ChiMatrix(np.outer(coefficients, coefficients.conj()))


def apply_chi(chi, rho) -> np.ndarray:
    chi, rho = as_matrix(chi), as_matrix(rho)
    return np.einsum("mn,mij,jk,nlk->il", chi, PAULI_BASIS, rho, PAULI_BASIS.conj())


def process_fidelity(chi_exp, chi_ideal) -> float:
    return uhlmann_fidelity(chi_exp, chi_ideal, tolerance=PROCESS_PSD_TOLERANCE)


def average_gate_fidelity(chi_exp, chi_ideal) -> float:
    """``(d F_p + 1) / (d + 1)`` with ``d = 4``."""
    return (4 * process_fidelity(chi_exp, chi_ideal) + 1) / 5


def trace_preservation_residual(chi) -> float:
    """Largest entry of ``sum_mn chi_mn E_n^† E_m - I``."""
    chi = as_matrix(chi)
    total = np.einsum("mn,nji,mjk->ik", chi, PAULI_BASIS.conj(), PAULI_BASIS)
    return float(np.max(np.abs(total - np.eye(4))))
