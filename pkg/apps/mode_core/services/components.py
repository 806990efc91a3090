"""
Transfer matrices of the chip components and of the composed CNOT circuit.

Couplers use the symmetric beamsplitter convention: the through amplitude is real and the
cross amplitude carries a factor ``i``.
"""

from collections.abc import Sequence
from functools import reduce

import numpy as np

from apps.mode_core.exceptions import DomainError
from apps.mode_core.types import NUM_MODES, NoiseModel, Rail, TransferMatrix, Transverse, mode_index


def _check_ratio(name: str, value: float):
    if not 0.0 <= value <= 1.0:
        raise DomainError(f"{name} must lie in [0, 1], got {value}")


def _couple(matrix: np.ndarray, upper: int, lower: int, cross_ratio: float):
    through = np.sqrt(1 - cross_ratio)
    cross = 1j * np.sqrt(cross_ratio)
    matrix[upper, upper] = matrix[lower, lower] = through
    matrix[upper, lower] = matrix[lower, upper] = cross


def tmddc_matrix(cross_ratio: float, te0_cross_ratio: float = 0.0) -> TransferMatrix:
    """
    Transverse-mode-dependent directional coupler.

    TE1 is split between the rails with the given power ``cross_ratio``; TE0 stays in its
    waveguide unless a residual ``te0_cross_ratio`` is given.
    """
    _check_ratio("cross_ratio", cross_ratio)
    _check_ratio("te0_cross_ratio", te0_cross_ratio)

    matrix = np.eye(NUM_MODES, dtype=complex)
    _couple(
        matrix,
        mode_index(Rail.CONTROL, Transverse.TE1),
        mode_index(Rail.TARGET, Transverse.TE1),
        cross_ratio,
    )
    if te0_cross_ratio:
        _couple(
            matrix,
            mode_index(Rail.CONTROL, Transverse.TE0),
            mode_index(Rail.TARGET, Transverse.TE0),
            te0_cross_ratio,
        )
    return TransferMatrix(matrix, lossless=True)


def mma_matrix(rail: Rail, te0_power_transmission: float, te1_power_transmission: float) -> TransferMatrix:
    """Multimode attenuator on one rail: independent power transmission for TE0 and TE1."""
    _check_ratio("te0_power_transmission", te0_power_transmission)
    _check_ratio("te1_power_transmission", te1_power_transmission)

    amplitudes = np.ones(NUM_MODES)
    amplitudes[mode_index(rail, Transverse.TE0)] = np.sqrt(te0_power_transmission)
    amplitudes[mode_index(rail, Transverse.TE1)] = np.sqrt(te1_power_transmission)
    lossless = te0_power_transmission == 1 and te1_power_transmission == 1
    return TransferMatrix(np.diag(amplitudes).astype(complex), lossless=lossless)


def loss_matrix(per_mode_amplitude: Sequence[float]) -> TransferMatrix:
    amplitudes = np.asarray(per_mode_amplitude, dtype=float)
    if amplitudes.shape != (NUM_MODES,):
        raise DomainError(f"expected {NUM_MODES} amplitudes, got shape {amplitudes.shape}")
    if np.any(amplitudes < 0) or np.any(amplitudes > 1):
        raise DomainError(f"amplitude transmissions must lie in [0, 1], got {amplitudes.tolist()}")
    return TransferMatrix(np.diag(amplitudes).astype(complex), lossless=bool(np.all(amplitudes == 1)))


def compose(stages: Sequence[TransferMatrix]) -> TransferMatrix:
    """Cascade stages in propagation order: ``stages[0]`` acts first."""
    if not stages:
        raise DomainError("cannot compose an empty list of stages")
    dims = {stage.dim for stage in stages}
    if len(dims) != 1:
        raise DomainError(f"stages act on different mode counts: {sorted(dims)}")

    entries = reduce(lambda acc, stage: stage.entries @ acc, stages[1:], stages[0].entries)
    return TransferMatrix(entries, lossless=all(stage.lossless for stage in stages))


def cnot_circuit(noise: NoiseModel) -> TransferMatrix:
    """TMDDC followed by an MMA on each rail and the phenomenological output loss."""
    return compose(
        [
            tmddc_matrix(noise.cross_ratio, noise.te0_cross_ratio),
            mma_matrix(Rail.CONTROL, noise.mma_te0_transmission, noise.mma_te1_transmission),
            mma_matrix(Rail.TARGET, noise.mma_te0_transmission, noise.mma_te1_transmission),
            loss_matrix(noise.transmissions),
        ]
    )
