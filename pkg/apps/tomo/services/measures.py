"""
Fidelities, mixedness and entanglement of two-qubit states.
"""

import numpy as np

from apps.tomo.exceptions import DomainError
from apps.tomo.services.measurement import as_matrix
from apps.tomo.types import PSD_TOLERANCE, BellState, DensityMatrix

# States whose purity is this close to one are treated as pure.
PURITY_TOLERANCE = 1e-10
NORMALIZATION_TOLERANCE = 1e-6

PAULI_Y = np.array([[0, -1j], [1j, 0]])
SPIN_FLIP = np.real(np.kron(PAULI_Y, PAULI_Y))

_BELL_VECTORS = {
    BellState.PHI_PLUS: np.array([1, 0, 0, 1]),
    BellState.PHI_MINUS: np.array([1, 0, 0, -1]),
    BellState.PSI_PLUS: np.array([0, 1, 1, 0]),
    BellState.PSI_MINUS: np.array([0, 1, -1, 0]),
}


def bell_vector(name: BellState | str) -> np.ndarray:
    return _BELL_VECTORS[BellState(name)].astype(complex) / np.sqrt(2)


def bell_state(name: BellState | str) -> DensityMatrix:
    return DensityMatrix.from_vector(bell_vector(name))


def _hermitize(matrix: np.ndarray) -> np.ndarray:
    return (matrix + matrix.conj().T) / 2


def _checked_state(value, name: str, tolerance: float) -> np.ndarray:
    matrix = _hermitize(as_matrix(value))
    trace = np.real(np.trace(matrix))
    if abs(trace - 1) > NORMALIZATION_TOLERANCE:
        raise DomainError(f"{name} must have unit trace, got {trace:.6g}")
    smallest = np.linalg.eigvalsh(matrix)[0]
    if smallest < -tolerance:
        raise DomainError(f"{name} is not positive semidefinite (min eigenvalue {smallest:.3g})")
    return matrix


def _sqrt_psd(matrix: np.ndarray) -> np.ndarray:
    values, vectors = np.linalg.eigh(matrix)
    return (vectors * np.sqrt(np.clip(values, 0.0, None))) @ vectors.conj().T


def _pure_vector(matrix: np.ndarray) -> np.ndarray | None:
    if abs(np.real(np.trace(matrix @ matrix)) - 1) > PURITY_TOLERANCE:
        return None
    values, vectors = np.linalg.eigh(matrix)
    return vectors[:, -1]


def uhlmann_fidelity(rho, sigma, tolerance: float = PSD_TOLERANCE) -> float:
    """``[Tr sqrt(sqrt(rho) sigma sqrt(rho))]^2`` for unit-trace PSD matrices of any dimension."""
    rho = _checked_state(rho, "first argument", tolerance)
    sigma = _checked_state(sigma, "second argument", tolerance)

    for pure, other in ((rho, sigma), (sigma, rho)):
        vector = _pure_vector(pure)
        if vector is not None:
            return float(np.clip(np.real(vector.conj() @ other @ vector), 0.0, 1.0))

    root = _sqrt_psd(rho)
    values = np.linalg.eigvalsh(_hermitize(root @ sigma @ root))
    fidelity = np.sum(np.sqrt(np.clip(values, 0.0, None))) ** 2
    return float(np.clip(fidelity, 0.0, 1.0))


def state_fidelity(rho, sigma) -> float:
    return uhlmann_fidelity(rho, sigma)


def purity(rho) -> float:
    rho = as_matrix(rho)
    return float(np.real(np.trace(rho @ rho)))


def linear_entropy(rho) -> float:
    """``(4/3)(1 - Tr rho^2)``: 0 for pure states, 1 for the maximally mixed state."""
    return float(np.clip(4 / 3 * (1 - purity(rho)), 0.0, 1.0))


def concurrence(rho) -> float:
    """Wootters concurrence."""
    rho = _checked_state(rho, "state", PSD_TOLERANCE)

    vector = _pure_vector(rho)
    if vector is not None:
        return float(np.clip(abs(vector @ SPIN_FLIP @ vector), 0.0, 1.0))

    # Singular values of sqrt(rho) (Y⊗Y) conj(sqrt(rho)) are the square roots of the eigenvalues
    # of rho (Y⊗Y) conj(rho) (Y⊗Y).
    root = _sqrt_psd(rho)
    values = np.linalg.svd(root @ SPIN_FLIP @ root.conj(), compute_uv=False)
    return float(np.clip(values[0] - values[1:].sum(), 0.0, 1.0))


def tangle(rho) -> float:
    return concurrence(rho) ** 2
