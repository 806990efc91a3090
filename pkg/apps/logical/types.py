"""
Logical-qubit value types.

Two-qubit objects use the logical basis {|00>, |01>, |10>, |11>}, control qubit major.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from django.db import models
from django.utils.translation import gettext_lazy as _

from .exceptions import DomainError, LogicalError

NORMALIZATION_TOLERANCE = 1e-9

LOGICAL_BASIS_LABELS = ("00", "01", "10", "11")


class GateName(models.TextChoices):
    CNOT = "cnot", _("CNOT")
    CPHASE = "cphase", _("CPhase")
    IDENTITY = "identity", _("Identity")
    HADAMARD_ON_TARGET = "hadamard_on_target", _("I ⊗ H")


@dataclass(frozen=True)
class LogicalQubitState:
    """Single logical qubit ``alpha|0> + beta|1>``."""

    amplitudes: tuple[complex, complex]

    def __post_init__(self):
        amplitudes = tuple(complex(a) for a in self.amplitudes)
        if len(amplitudes) != 2:
            raise DomainError(f"a qubit has two amplitudes, got {len(amplitudes)}")
        norm = np.sqrt(sum(abs(a) ** 2 for a in amplitudes))
        if abs(norm - 1) > NORMALIZATION_TOLERANCE:
            raise DomainError(f"qubit state is not normalized (norm {norm:.12g})")
        object.__setattr__(self, "amplitudes", amplitudes)

    @property
    def alpha(self) -> complex:
        return self.amplitudes[0]

    @property
    def beta(self) -> complex:
        return self.amplitudes[1]

    def vector(self) -> np.ndarray:
        return np.array(self.amplitudes, dtype=complex)

    @classmethod
    def zero(cls) -> LogicalQubitState:
        return cls((1, 0))

    @classmethod
    def one(cls) -> LogicalQubitState:
        return cls((0, 1))

    @classmethod
    def plus(cls) -> LogicalQubitState:
        return cls((1 / np.sqrt(2), 1 / np.sqrt(2)))

    @classmethod
    def minus(cls) -> LogicalQubitState:
        return cls((1 / np.sqrt(2), -1 / np.sqrt(2)))

    @classmethod
    def plus_i(cls) -> LogicalQubitState:
        return cls((1 / np.sqrt(2), 1j / np.sqrt(2)))

    @classmethod
    def from_label(cls, label: str) -> LogicalQubitState:
        """Build one of ``0``, ``1``, ``+``, ``-``, ``+i``."""
        builders = {"0": cls.zero, "1": cls.one, "+": cls.plus, "-": cls.minus, "+i": cls.plus_i}
        try:
            return builders[label]()
        except KeyError:
            raise DomainError(f"unknown qubit label {label!r}") from None


@dataclass(frozen=True)
class TwoQubitOperator:
    entries: np.ndarray

    def __post_init__(self):
        entries = np.array(self.entries, dtype=complex)
        if entries.shape != (4, 4):
            raise DomainError(f"two-qubit operator must be 4x4, got shape {entries.shape}")
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    def __matmul__(self, other):
        if isinstance(other, TwoQubitOperator):
            return TwoQubitOperator(self.entries @ other.entries)
        return self.entries @ np.asarray(other, dtype=complex)

    def is_unitary(self, tolerance: float = 1e-12) -> bool:
        return bool(np.max(np.abs(self.entries.conj().T @ self.entries - np.eye(4))) <= tolerance)


@dataclass(frozen=True)
class TruthTableRow:
    """
    Outcome distribution for one computational input.

    ``probabilities`` is ``None`` when the input is never post-selected; such a row is undefined
    rather than filled with NaN.
    """

    input_label: str
    success_probability: float
    probabilities: tuple[float, float, float, float] | None

    @property
    def is_defined(self) -> bool:
        return self.probabilities is not None


@dataclass(frozen=True)
class TruthTable:
    rows: tuple[TruthTableRow, ...]

    @property
    def is_complete(self) -> bool:
        return all(row.is_defined for row in self.rows)

    def as_matrix(self) -> np.ndarray:
        """4x4 conditional probabilities; only available when every row is defined."""
        if not self.is_complete:
            undefined = [row.input_label for row in self.rows if not row.is_defined]
            raise LogicalError(f"truth table rows {undefined} are undefined (zero success probability)")
        return np.array([row.probabilities for row in self.rows], dtype=float)
