"""
Two-photon propagation, coincidence probabilities and post-selection.

Photons are labeled: photon 1 is launched as the control photon and photon 2 as the target photon.
Partial distinguishability enters through a single overlap ``x`` that weights the exchange term.
"""

import itertools

import numpy as np

from apps.mode_core.exceptions import DomainError
from apps.mode_core.types import (
    JointAmplitude,
    ModeId,
    PostSelectedState,
    Rail,
    TransferMatrix,
    Transverse,
    mode_index,
)


NORMALIZATION_TOLERANCE = 1e-9


def _check_overlap(x: float):
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"indistinguishability x must lie in [0, 1], got {x}")


def _as_index(mode) -> int:
    return mode.index if isinstance(mode, ModeId) else int(mode)


def _normalized_input(name: str, vector, dim: int) -> np.ndarray:
    vector = np.asarray(vector, dtype=complex)
    if vector.shape != (dim,):
        raise DomainError(f"{name} must have {dim} components, got shape {vector.shape}")
    norm = np.linalg.norm(vector)
    if abs(norm - 1) > NORMALIZATION_TOLERANCE:
        raise DomainError(f"{name} is not normalized (norm {norm:.12g})")
    return vector


def evolve_pair(U: TransferMatrix, u, v) -> JointAmplitude:
    """Propagate photon 1 (mode vector ``u``) and photon 2 (``v``) through ``U``."""
    u = _normalized_input("u", u, U.dim)
    v = _normalized_input("v", v, U.dim)
    return JointAmplitude(np.outer(U.apply(u), U.apply(v)))


def coincidence_probability(A: JointAmplitude, m, n, x: float) -> float:
    """
    Probability of detecting one photon in mode ``m`` and one in mode ``n``
    (both in ``m`` when ``m == n``).
    """
    _check_overlap(x)
    m, n = _as_index(m), _as_index(n)
    if m == n:
        probability = (1 + x) * abs(A[m, m]) ** 2
    else:
        direct, exchanged = A[m, n], A[n, m]
        probability = abs(direct) ** 2 + abs(exchanged) ** 2 + 2 * x * np.real(direct * np.conj(exchanged))
    return float(max(probability, 0.0))


def two_photon_distribution(A: JointAmplitude, x: float) -> dict[tuple[int, int], float]:
    """Coincidence probability for every unordered output pair ``(m, n)`` with ``m <= n``."""
    pairs = itertools.combinations_with_replacement(range(A.dim), 2)
    return {(m, n): coincidence_probability(A, m, n, x) for m, n in pairs}


def _rail_amplitudes(A: JointAmplitude) -> tuple[np.ndarray, np.ndarray]:
    """
    Amplitudes with one photon per rail, flattened over (control mode, target mode).

    The first array has photon 1 in the control rail, the second has photon 2 there.
    """
    kept = np.zeros(4, dtype=complex)
    swapped = np.zeros(4, dtype=complex)
    for c, t in itertools.product(Transverse, Transverse):
        control, target = mode_index(Rail.CONTROL, c), mode_index(Rail.TARGET, t)
        flat = 2 * int(c) + int(t)
        kept[flat] = A[control, target]
        swapped[flat] = A[target, control]
    return kept, swapped


def postselected_amplitude(A: JointAmplitude) -> np.ndarray:
    """
    Coherent one-photon-per-rail amplitude for identical photons.

    Only meaningful at x = 1, where ``postselect(A, 1).rho`` is its outer product.
    """
    kept, swapped = _rail_amplitudes(A)
    return kept + swapped


def postselect(A: JointAmplitude, x: float) -> PostSelectedState:
    _check_overlap(x)
    kept, swapped = _rail_amplitudes(A)
    coherent = kept + swapped
    rho = x * np.outer(coherent, coherent.conj()) + (1 - x) * (
        np.outer(kept, kept.conj()) + np.outer(swapped, swapped.conj())
    )
    # Remove rounding asymmetry before validation.
    rho = (rho + rho.conj().T) / 2
    return PostSelectedState(rho)


def permanent(matrix) -> complex:
    """Permanent by Ryser's inclusion-exclusion formula."""
    matrix = np.asarray(matrix, dtype=complex)
    n = matrix.shape[0]
    if matrix.shape != (n, n):
        raise DomainError(f"permanent needs a square matrix, got shape {matrix.shape}")
    if n == 0:
        return 1.0 + 0.0j

    total = 0.0 + 0.0j
    for size in range(1, n + 1):
        for columns in itertools.combinations(range(n), size):
            total += (-1) ** size * np.prod(matrix[:, columns].sum(axis=1))
    return (-1) ** n * total


def bosonic_output_distribution(U: TransferMatrix, input_modes: tuple[int, int]) -> dict[tuple[int, int], float]:
    """
    Output distribution of two indistinguishable photons from the permanent formula.

    Keys are unordered output pairs ``(m, n)`` with ``m <= n``; doubly occupied outputs carry the
    bosonic 1/2 normalisation.
    """
    i, j = input_modes
    distribution = {}
    for m, n in itertools.combinations_with_replacement(range(U.dim), 2):
        sub = U.entries[np.ix_([m, n], [i, j])]
        amplitude = permanent(sub)
        if m == n:
            amplitude /= np.sqrt(2)
        if i == j:
            amplitude /= np.sqrt(2)
        distribution[(m, n)] = float(abs(amplitude) ** 2)
    return distribution
