"""
Projective measurements and the canonical tomography setting list.
"""

import math
from itertools import product

import numpy as np

from apps.tomo.exceptions import DomainError
from apps.tomo.types import DensityMatrix, MeasurementSetting, QubitProjector

CANONICAL_QUBIT_PROJECTORS = (
    QubitProjector.computational(0),
    QubitProjector.computational(1),
    QubitProjector.equatorial(0.0),
    QubitProjector.equatorial(math.pi / 2),
)

CANONICAL_SETTINGS = tuple(MeasurementSetting(c, t) for c, t in product(CANONICAL_QUBIT_PROJECTORS, repeat=2))

# Settings whose projectors sum to the identity: both qubits measured in the computational basis.
COMPUTATIONAL_INDICES = tuple(
    k
    for k, setting in enumerate(CANONICAL_SETTINGS)
    if setting.control in CANONICAL_QUBIT_PROJECTORS[:2] and setting.target in CANONICAL_QUBIT_PROJECTORS[:2]
)


def as_matrix(value) -> np.ndarray:
    """Entries of a matrix value type, or the array itself."""
    return np.asarray(getattr(value, "entries", value), dtype=complex)


def projector(setting: MeasurementSetting) -> np.ndarray:
    vector = setting.vector()
    return np.outer(vector, vector.conj())


def canonical_projectors() -> np.ndarray:
    """Stack of the 16 canonical projectors, shape (16, 4, 4)."""
    return np.array([projector(setting) for setting in CANONICAL_SETTINGS])


def born(rho, projector_matrix) -> float:
    probability = np.real(np.trace(as_matrix(projector_matrix) @ as_matrix(rho)))
    return float(np.clip(probability, 0.0, 1.0))


def canonical_probabilities(rho) -> np.ndarray:
    """Born probabilities of ``rho`` for the canonical setting list."""
    return np.array([born(rho, P) for P in canonical_projectors()])


def canonical_input_states() -> list[DensityMatrix]:
    """The 16 product inputs used for process tomography, in canonical setting order."""
    return [DensityMatrix(projector(setting)) for setting in CANONICAL_SETTINGS]


def probabilities_from_counts(counts) -> np.ndarray:
    """
    Relative frequencies for the canonical settings.

    Counts are normalised by the total of the computational-basis settings, whose projectors form
    a complete measurement.
    """
    counts = np.asarray([getattr(c, "counts", c) for c in counts], dtype=float)
    if counts.shape != (len(CANONICAL_SETTINGS),):
        raise DomainError(f"expected {len(CANONICAL_SETTINGS)} counts, got {counts.shape[0]}")
    if np.any(counts < 0):
        raise DomainError("counts must be non-negative")
    total = counts[list(COMPUTATIONAL_INDICES)].sum()
    if total <= 0:
        raise DomainError("computational-basis counts are all zero")
    return counts / total
