"""
Value types of the physical layer.

The optical mode space has four modes: two rails (control, target) each carrying two transverse
modes (TE0, TE1). Every matrix in the project uses the ordering fixed by :meth:`ModeId.index`.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

import numpy as np
from django.db import models
from django.utils.translation import gettext_lazy as _

from .exceptions import DomainError, PassivityError

NUM_MODES = 4

PASSIVITY_TOLERANCE = 1e-9
UNITARITY_TOLERANCE = 1e-12
HERMITICITY_TOLERANCE = 1e-12
POSITIVITY_TOLERANCE = 1e-10


class Rail(models.IntegerChoices):
    CONTROL = 0, _("Control")
    TARGET = 1, _("Target")


class Transverse(models.IntegerChoices):
    TE0 = 0, _("TE0")
    TE1 = 1, _("TE1")


@dataclass(frozen=True)
class ModeId:
    rail: Rail
    transverse: Transverse

    @property
    def index(self) -> int:
        return 2 * int(self.rail) + int(self.transverse)

    @classmethod
    def from_index(cls, index: int) -> ModeId:
        if not 0 <= index < NUM_MODES:
            raise DomainError(f"mode index {index} outside 0..{NUM_MODES - 1}")
        return cls(Rail(index // 2), Transverse(index % 2))

    def __str__(self):
        return f"{self.rail.label}/{self.transverse.label}"


def mode_index(rail: Rail, transverse: Transverse) -> int:
    return ModeId(rail, transverse).index


def _frozen_array(values, dtype=complex) -> np.ndarray:
    array = np.array(values, dtype=dtype)
    array.setflags(write=False)
    return array


@dataclass(frozen=True)
class TransferMatrix:
    """
    Complex amplitude transfer matrix of a passive linear optical element.

    ``entries[m, n]`` is the amplitude for a photon entering mode ``n`` to leave in mode ``m``.
    Loss is allowed, gain is not. ``lossless`` marks matrices that are unitary.
    """

    entries: np.ndarray
    lossless: bool = False

    def __post_init__(self):
        entries = _frozen_array(self.entries)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise DomainError(f"transfer matrix must be square, got shape {entries.shape}")
        object.__setattr__(self, "entries", entries)

        largest = np.linalg.norm(entries, ord=2) if entries.size else 0.0
        if largest > 1 + PASSIVITY_TOLERANCE:
            raise PassivityError(f"largest singular value {largest:.12g} exceeds 1 (gain is not allowed)")
        if self.lossless:
            deviation = np.max(np.abs(entries.conj().T @ entries - np.eye(self.dim)))
            if deviation > UNITARITY_TOLERANCE:
                raise DomainError(f"matrix flagged lossless deviates from unitarity by {deviation:.3g}")

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @classmethod
    def identity(cls, dim: int = NUM_MODES) -> TransferMatrix:
        return cls(np.eye(dim, dtype=complex), lossless=True)

    def singular_values(self) -> np.ndarray:
        return np.linalg.svd(self.entries, compute_uv=False)

    def apply(self, vector) -> np.ndarray:
        return self.entries @ np.asarray(vector, dtype=complex)


@dataclass(frozen=True)
class JointAmplitude:
    """
    Labeled two-photon amplitude: ``entries[m, n]`` is the amplitude for photon 1 in mode ``m``
    and photon 2 in mode ``n``.
    """

    entries: np.ndarray

    def __post_init__(self):
        entries = _frozen_array(self.entries)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise DomainError(f"joint amplitude must be square, got shape {entries.shape}")
        object.__setattr__(self, "entries", entries)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @property
    def total_probability(self) -> float:
        """Labeled-photon norm; equals 1 for lossless circuits and normalized inputs."""
        return float(np.sum(np.abs(self.entries) ** 2))

    def __getitem__(self, key):
        return self.entries[key]


def _check_unit_interval(name: str, value: float):
    if not 0.0 <= value <= 1.0:
        raise DomainError(f"{name} must lie in [0, 1], got {value}")


@dataclass(frozen=True)
class NoiseModel:
    """
    Phenomenological imperfections of the source and the chip.

    The defaults reproduce the ideal device. ``transmissions`` are per-mode amplitude
    transmissions in :class:`ModeId` order; ``background`` is in counts per setting.
    """

    x: float = 1.0
    transmissions: tuple[float, ...] = (1.0, 1.0, 1.0, 1.0)
    background: float = 0.0
    shots: int = 10_000
    sigma: float = 1.0
    cross_ratio: float = 2 / 3
    te0_cross_ratio: float = 0.0
    mma_te0_transmission: float = 1 / 3
    mma_te1_transmission: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "transmissions", tuple(float(t) for t in self.transmissions))
        _check_unit_interval("indistinguishability x", self.x)
        if len(self.transmissions) != NUM_MODES:
            raise DomainError(f"expected {NUM_MODES} per-mode transmissions, got {len(self.transmissions)}")
        for i, t in enumerate(self.transmissions):
            _check_unit_interval(f"transmission of mode {i}", t)
        if self.background < 0:
            raise DomainError(f"background must be non-negative, got {self.background}")
        if int(self.shots) != self.shots or self.shots <= 0:
            raise DomainError(f"shots must be a positive integer, got {self.shots}")
        if self.sigma <= 0:
            raise DomainError(f"coherence width sigma must be positive, got {self.sigma}")
        _check_unit_interval("cross_ratio", self.cross_ratio)
        _check_unit_interval("te0_cross_ratio", self.te0_cross_ratio)
        _check_unit_interval("mma_te0_transmission", self.mma_te0_transmission)
        _check_unit_interval("mma_te1_transmission", self.mma_te1_transmission)

    def replace(self, **changes) -> NoiseModel:
        return dataclasses.replace(self, **changes)


@dataclass(frozen=True)
class PostSelectedState:
    """
    Unnormalized two-photon state after keeping one photon per rail.

    ``rho`` is over the physical basis (control mode, target mode) in
    {(TE0, TE0), (TE0, TE1), (TE1, TE0), (TE1, TE1)}; its trace is the success probability.
    """

    rho: np.ndarray

    def __post_init__(self):
        rho = _frozen_array(self.rho)
        if rho.shape != (4, 4):
            raise DomainError(f"post-selected state must be 4x4, got shape {rho.shape}")
        if np.max(np.abs(rho - rho.conj().T)) > HERMITICITY_TOLERANCE:
            raise DomainError("post-selected state is not Hermitian")
        if np.min(np.linalg.eigvalsh(rho)) < -POSITIVITY_TOLERANCE:
            raise DomainError("post-selected state has a negative eigenvalue")
        object.__setattr__(self, "rho", rho)

    @property
    def success_probability(self) -> float:
        return float(np.real(np.trace(self.rho)))

    def normalized(self) -> np.ndarray:
        p = self.success_probability
        if p <= 0:
            raise DomainError("post-selected state has zero success probability")
        return self.rho / p
