import logging
from itertools import product

import numpy as np

from apps.logical.exceptions import DomainError
from apps.logical.services.encoding import (
    HADAMARD,
    TARGET_DECODER,
    decode_density,
    encode_control,
    encode_target,
    run_gate,
)
from apps.logical.types import (
    LOGICAL_BASIS_LABELS,
    GateName,
    LogicalQubitState,
    TruthTable,
    TruthTableRow,
    TwoQubitOperator,
)
from apps.mode_core.services import cnot_circuit, evolve_pair, postselected_amplitude
from apps.mode_core.types import NoiseModel

logger = logging.getLogger(__name__)

# Below this success probability an input is treated as never post-selected.
SUCCESS_FLOOR = 1e-15

_IDEAL_GATES = {
    GateName.CNOT: np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex),
    GateName.CPHASE: np.diag([1, 1, 1, -1]).astype(complex),
    GateName.IDENTITY: np.eye(4, dtype=complex),
    GateName.HADAMARD_ON_TARGET: np.kron(np.eye(2), HADAMARD),
}


def ideal_gate(name: GateName | str) -> TwoQubitOperator:
    return TwoQubitOperator(_IDEAL_GATES[GateName(name)])


def _computational_inputs():
    basis = (LogicalQubitState.zero(), LogicalQubitState.one())
    return product(basis, basis)


def logical_map(noise: NoiseModel) -> TwoQubitOperator:
    """
    Linear map of the post-selected gate on logical amplitudes.

    Column ``k`` is the decoded coherent output for computational input ``k``. The map is only an
    operator on pure states when the photons are indistinguishable, so ``noise.x`` must be 1.
    """
    if noise.x != 1:
        raise DomainError(f"logical_map requires x = 1, got x = {noise.x}")

    U = cnot_circuit(noise)
    columns = [
        TARGET_DECODER @ postselected_amplitude(evolve_pair(U, encode_control(c), encode_target(t)))
        for c, t in _computational_inputs()
    ]
    return TwoQubitOperator(np.column_stack(columns))


def gate_overlap(G: TwoQubitOperator, R: TwoQubitOperator) -> float:
    """
    Global-phase and scale invariant overlap ``|Tr(G^† R)|^2 / (Tr(G^† G) Tr(R^† R))``.

    Equals 1 exactly when ``G`` is proportional to ``R``; for unitary ``R`` and ``G`` it is the
    process fidelity between them.
    """
    g, r = G.entries, R.entries
    norm = np.real(np.trace(g.conj().T @ g)) * np.real(np.trace(r.conj().T @ r))
    if norm <= 0:
        raise DomainError("gate overlap is undefined for a zero operator")
    return float(abs(np.trace(g.conj().T @ r)) ** 2 / norm)


def truth_table(noise: NoiseModel) -> TruthTable:
    """Outcome distribution over the logical basis for every computational input, at any overlap."""
    rows = []
    for label, (c, t) in zip(LOGICAL_BASIS_LABELS, _computational_inputs(), strict=True):
        state = run_gate(noise, c, t)
        success = state.success_probability
        if success <= SUCCESS_FLOOR:
            logger.warning("Input |%s> is never post-selected; truth table row is undefined", label)
            rows.append(TruthTableRow(input_label=label, success_probability=0.0, probabilities=None))
            continue
        probabilities = np.clip(np.real(np.diag(decode_density(state))) / success, 0.0, 1.0)
        rows.append(
            TruthTableRow(
                input_label=label,
                success_probability=success,
                probabilities=tuple(float(p) for p in probabilities),
            )
        )
    return TruthTable(rows=tuple(rows))
