"""
Mapping between logical qubits and the physical transverse modes.

The control qubit is stored directly in the transverse mode of the control rail. The target qubit
is stored in the Hadamard-rotated transverse basis of the target rail, so decoding applies ``I ⊗ H``.
"""

import numpy as np

from apps.logical.exceptions import DomainError
from apps.logical.types import LogicalQubitState
from apps.mode_core.exceptions import DomainError as ModeDomainError
from apps.mode_core.services import cnot_circuit, evolve_pair, postselect
from apps.mode_core.types import NUM_MODES, NoiseModel, PostSelectedState, Rail, Transverse, mode_index

HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
TARGET_DECODER = np.kron(np.eye(2), HADAMARD)


def _place(rail: Rail, te0: complex, te1: complex) -> np.ndarray:
    vector = np.zeros(NUM_MODES, dtype=complex)
    vector[mode_index(rail, Transverse.TE0)] = te0
    vector[mode_index(rail, Transverse.TE1)] = te1
    return vector


def encode_control(q: LogicalQubitState) -> np.ndarray:
    return _place(Rail.CONTROL, q.alpha, q.beta)


def encode_target(q: LogicalQubitState) -> np.ndarray:
    return _place(Rail.TARGET, (q.alpha + q.beta) / np.sqrt(2), (q.alpha - q.beta) / np.sqrt(2))


def decode_density(ps: PostSelectedState) -> np.ndarray:
    """Unnormalized logical density matrix; the trace is the success probability."""
    return TARGET_DECODER @ ps.rho @ TARGET_DECODER.conj().T


def decode_density_normalized(ps: PostSelectedState) -> np.ndarray:
    try:
        return TARGET_DECODER @ ps.normalized() @ TARGET_DECODER.conj().T
    except ModeDomainError as exc:
        raise DomainError(str(exc)) from exc


def run_gate(noise: NoiseModel, control: LogicalQubitState, target: LogicalQubitState) -> PostSelectedState:
    """Encode a product input, send it through the chip and post-select at the noise model's overlap."""
    A = evolve_pair(cnot_circuit(noise), encode_control(control), encode_target(target))
    return postselect(A, noise.x)
