from __future__ import annotations

from dataclasses import dataclass

from django.db import models
from django.utils.translation import gettext_lazy as _

from apps.tomo.types import MeasurementSetting

from .exceptions import DomainError


class CountModel(models.TextChoices):
    POISSON = "poisson", _("Poisson")
    GAUSSIAN = "gaussian", _("Gaussian")


@dataclass(frozen=True)
class CountRecord:
    """
    Coincidences recorded for one projection setting or one HOM delay.

    Sampled records hold integer counts. In exact mode ``counts`` is the real-valued expectation.
    """

    counts: float
    shots: int
    probability: float | None = None
    setting: MeasurementSetting | None = None
    delay: float | None = None

    def __post_init__(self):
        if self.counts < 0:
            raise DomainError(f"counts must be non-negative, got {self.counts}")

    def with_counts(self, counts) -> CountRecord:
        return CountRecord(
            counts=counts, shots=self.shots, probability=self.probability, setting=self.setting, delay=self.delay
        )


@dataclass(frozen=True)
class HomFitErrors:
    amplitude: float
    visibility: float
    center: float
    width: float


@dataclass(frozen=True)
class HomFit:
    """Gaussian dip ``C(tau) = C_max (1 - V exp(-(tau - tau0)^2 / (2 w^2)))``."""

    amplitude: float
    visibility: float
    center: float
    width: float
    residual: float
    stderr: HomFitErrors
    evaluations: int = 0

    @property
    def c_max(self) -> float:
        return self.amplitude

    @property
    def c_min(self) -> float:
        return self.amplitude * (1 - self.visibility)
