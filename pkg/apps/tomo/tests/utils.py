import numpy as np

from apps.tomo.types import DensityMatrix


def random_density_matrix(rng: np.random.Generator, rank: int = 4) -> DensityMatrix:
    """Random two-qubit state of the given rank from a complex Ginibre matrix."""
    ginibre = rng.normal(size=(4, rank)) + 1j * rng.normal(size=(4, rank))
    rho = ginibre @ ginibre.conj().T
    return DensityMatrix(rho / np.real(np.trace(rho)))


def random_qubit(rng: np.random.Generator) -> np.ndarray:
    amplitudes = rng.normal(size=2) + 1j * rng.normal(size=2)
    return amplitudes / np.linalg.norm(amplitudes)


def random_product_state(rng: np.random.Generator) -> DensityMatrix:
    return DensityMatrix.from_vector(np.kron(random_qubit(rng), random_qubit(rng)))
