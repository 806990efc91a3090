"""
Two-qubit correlations and the CHSH combination.

An analyser angle ``theta`` (degrees) selects the equatorial projector pair with phases
``(2 theta, 2 theta + pi)`` on the control qubit and ``(-2 theta, -2 theta + pi)`` on the target
qubit, so that ``E(theta_a, theta_b) = cos 2(theta_a - theta_b)`` for ``Phi+``.
"""

import math
from dataclasses import dataclass

import numpy as np

from apps.tomo.exceptions import DomainError
from apps.tomo.services.measurement import as_matrix, born, projector
from apps.tomo.types import BellState, MeasurementSetting, QubitProjector

# Control analysers a, a' and target analysers b, b'. The listed phases of each pair are the
# angle and its orthogonal output: 0/180, 45/225 and 22.5/202.5, 67.5/247.5.
DEFAULT_ANGLES = (0.0, 45.0, 22.5, 67.5)

# Signs of E(a, b), E(a, b'), E(a', b), E(a', b') giving +2 sqrt(2) for each Bell state.
CHSH_SIGNS = {
    BellState.PHI_PLUS: (1, -1, 1, 1),
    BellState.PHI_MINUS: (-1, 1, -1, -1),
    BellState.PSI_PLUS: (1, -1, -1, -1),
    BellState.PSI_MINUS: (-1, 1, 1, 1),
}

# Parity of the four outcomes of analyser_settings().
OUTCOME_PARITY = (1, -1, -1, 1)


@dataclass(frozen=True)
class ChshResult:
    S: float
    correlations: tuple[float, float, float, float]
    signs: tuple[int, int, int, int]


def _settings_for_phases(phase_a: float, phase_b: float) -> tuple[MeasurementSetting, ...]:
    control = QubitProjector.equatorial(phase_a)
    target = QubitProjector.equatorial(phase_b)
    return tuple(
        MeasurementSetting(first, second)
        for first in (control, control.orthogonal())
        for second in (target, target.orthogonal())
    )


def analyser_settings(theta_a: float, theta_b: float) -> tuple[MeasurementSetting, ...]:
    """The four coincidence settings ``(++, +-, -+, --)`` of one analyser pair in degrees."""
    return _settings_for_phases(2 * math.radians(theta_a), -2 * math.radians(theta_b))


def analyser_pairs(angles=DEFAULT_ANGLES) -> tuple[tuple[float, float], ...]:
    """``(a, b), (a, b'), (a', b), (a', b')`` in the order the CHSH signs refer to."""
    a, a_prime, b, b_prime = angles
    return (a, b), (a, b_prime), (a_prime, b), (a_prime, b_prime)


def chsh_settings(angles=DEFAULT_ANGLES) -> tuple[MeasurementSetting, ...]:
    """All 16 settings of a CHSH measurement, four per analyser pair."""
    return tuple(setting for pair in analyser_pairs(angles) for setting in analyser_settings(*pair))


def correlation(rho, phase_a: float, phase_b: float) -> float:
    """
    ``E = P(a, b) - P(a, b') - P(a', b) + P(a', b')`` for equatorial projectors at ``phase_a`` on the
    control and ``phase_b`` on the target (radians), primes denoting the phase shifted by pi.
    """
    rho = as_matrix(rho)
    value = sum(
        parity * born(rho, projector(setting))
        for parity, setting in zip(OUTCOME_PARITY, _settings_for_phases(phase_a, phase_b), strict=True)
    )
    return float(max(-1.0, min(1.0, value)))


def analyser_correlation(rho, theta_a: float, theta_b: float) -> float:
    """Correlation for control analyser ``theta_a`` and target analyser ``theta_b`` in degrees."""
    return correlation(rho, 2 * math.radians(theta_a), -2 * math.radians(theta_b))


def correlation_from_counts(counts) -> float:
    """Correlation from the four coincidence counts of :func:`analyser_settings`."""
    counts = np.asarray([getattr(c, "counts", c) for c in counts], dtype=float)
    if counts.shape != (4,):
        raise DomainError(f"a correlation needs 4 counts, got {counts.shape[0]}")
    total = counts.sum()
    if total <= 0:
        raise DomainError("no coincidences recorded for this analyser pair")
    return float(np.dot(OUTCOME_PARITY, counts) / total)


def chsh_detailed(rho, angles=DEFAULT_ANGLES, signs=CHSH_SIGNS[BellState.PHI_PLUS]) -> ChshResult:
    correlations = tuple(analyser_correlation(rho, theta_a, theta_b) for theta_a, theta_b in analyser_pairs(angles))
    S = sum(sign * value for sign, value in zip(signs, correlations, strict=True))
    return ChshResult(S=float(S), correlations=correlations, signs=tuple(signs))


def chsh(rho, angles=DEFAULT_ANGLES, signs=CHSH_SIGNS[BellState.PHI_PLUS]) -> float:
    """``S = E(a, b) - E(a, b') + E(a', b) + E(a', b')`` with per-state signs available in ``CHSH_SIGNS``."""
    return chsh_detailed(rho, angles, signs).S


def chsh_from_counts(counts, signs=CHSH_SIGNS[BellState.PHI_PLUS]) -> ChshResult:
    """CHSH value from 16 coincidence counts ordered as :func:`chsh_settings`."""
    counts = [getattr(c, "counts", c) for c in counts]
    if len(counts) != 16:
        raise DomainError(f"a CHSH measurement needs 16 counts, got {len(counts)}")
    correlations = tuple(correlation_from_counts(counts[4 * k : 4 * k + 4]) for k in range(4))
    S = sum(sign * value for sign, value in zip(signs, correlations, strict=True))
    return ChshResult(S=float(S), correlations=correlations, signs=tuple(signs))
