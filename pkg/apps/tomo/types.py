"""
Value types for measurement and reconstruction.

Two-qubit matrices are over {|00>, |01>, |10>, |11>} with the control qubit major. Process
matrices are over the Pauli products ``sigma_a ⊗ sigma_b`` with index ``4a + b`` and
``sigma = (I, X, Y, Z)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from django.db import models
from django.utils.translation import gettext_lazy as _

from .exceptions import DomainError

HERMITICITY_TOLERANCE = 1e-10
TRACE_TOLERANCE = 1e-10
PSD_TOLERANCE = 1e-8


class ProjectorKind(models.TextChoices):
    COMPUTATIONAL = "computational", _("Computational")
    EQUATORIAL = "equatorial", _("Equatorial")


class BellState(models.TextChoices):
    PHI_PLUS = "phi_plus", _("Φ+")
    PHI_MINUS = "phi_minus", _("Φ-")
    PSI_PLUS = "psi_plus", _("Ψ+")
    PSI_MINUS = "psi_minus", _("Ψ-")


@dataclass(frozen=True)
class QubitProjector:
    """
    Single-qubit rank-1 projector: ``|bit>`` or ``(|0> + e^{i phase}|1>) / sqrt(2)``.
    """

    kind: ProjectorKind
    bit: int = 0
    phase: float = 0.0

    def __post_init__(self):
        kind = ProjectorKind(self.kind)
        object.__setattr__(self, "kind", kind)
        if kind == ProjectorKind.COMPUTATIONAL:
            if self.bit not in (0, 1):
                raise DomainError(f"computational projector needs bit 0 or 1, got {self.bit}")
            object.__setattr__(self, "phase", 0.0)
        else:
            object.__setattr__(self, "bit", 0)
            object.__setattr__(self, "phase", float(self.phase) % (2 * math.pi))

    @classmethod
    def computational(cls, bit: int) -> QubitProjector:
        return cls(ProjectorKind.COMPUTATIONAL, bit=bit)

    @classmethod
    def equatorial(cls, phase: float) -> QubitProjector:
        return cls(ProjectorKind.EQUATORIAL, phase=phase)

    def orthogonal(self) -> QubitProjector:
        if self.kind == ProjectorKind.COMPUTATIONAL:
            return QubitProjector.computational(1 - self.bit)
        return QubitProjector.equatorial(self.phase + math.pi)

    def vector(self) -> np.ndarray:
        if self.kind == ProjectorKind.COMPUTATIONAL:
            return np.eye(2, dtype=complex)[self.bit]
        return np.array([1, np.exp(1j * self.phase)], dtype=complex) / np.sqrt(2)

    def __str__(self):
        if self.kind == ProjectorKind.COMPUTATIONAL:
            return str(self.bit)
        return f"eq({math.degrees(self.phase):g})"


@dataclass(frozen=True)
class MeasurementSetting:
    control: QubitProjector
    target: QubitProjector

    def vector(self) -> np.ndarray:
        return np.kron(self.control.vector(), self.target.vector())

    @property
    def label(self) -> str:
        return f"{self.control}|{self.target}"


def _frozen(values, shape) -> np.ndarray:
    array = np.array(values, dtype=complex)
    if array.shape != shape:
        raise DomainError(f"expected shape {shape}, got {array.shape}")
    array.setflags(write=False)
    return array


class _HermitianMatrix:
    """Shared spectral helpers of density and process matrices."""

    entries: np.ndarray

    @property
    def trace(self) -> float:
        return float(np.real(np.trace(self.entries)))

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.entries)

    @property
    def min_eigenvalue(self) -> float:
        return float(self.eigenvalues()[0])

    @property
    def is_psd(self) -> bool:
        return self.min_eigenvalue >= -PSD_TOLERANCE

    def _check_hermitian(self, name: str):
        deviation = np.max(np.abs(self.entries - self.entries.conj().T))
        if deviation > HERMITICITY_TOLERANCE:
            raise DomainError(f"{name} is not Hermitian (deviation {deviation:.3g})")


@dataclass(frozen=True)
class DensityMatrix(_HermitianMatrix):
    """
    Two-qubit density matrix. Linear inversion may produce a negative eigenvalue; such a matrix is
    still a valid value and is flagged through :attr:`is_psd`.
    """

    entries: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "entries", _frozen(self.entries, (4, 4)))
        self._check_hermitian("density matrix")

    @classmethod
    def from_vector(cls, vector) -> DensityMatrix:
        vector = np.asarray(vector, dtype=complex)
        vector = vector / np.linalg.norm(vector)
        return cls(np.outer(vector, vector.conj()))

    @classmethod
    def maximally_mixed(cls) -> DensityMatrix:
        return cls(np.eye(4) / 4)

    @property
    def is_normalized(self) -> bool:
        return abs(self.trace - 1) <= TRACE_TOLERANCE


@dataclass(frozen=True)
class ChiMatrix(_HermitianMatrix):
    entries: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "entries", _frozen(self.entries, (16, 16)))
        self._check_hermitian("process matrix")
