from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from django.db import models
from django.utils.translation import gettext_lazy as _

from apps.counts.services import MonteCarloResult
from apps.counts.types import CountModel, CountRecord, HomFit
from apps.logical.types import LogicalQubitState, TruthTable
from apps.mode_core.types import NoiseModel
from apps.tomo.types import BellState, ChiMatrix, DensityMatrix

from .exceptions import ConfigurationError

SCHEMA_VERSION = 1


class ExperimentKind(models.TextChoices):
    HOM = "hom", _("HOM scan")
    BELL = "bell", _("Bell-state tomography")
    CHSH = "chsh", _("CHSH test")
    QPT = "qpt", _("Process tomography")
    TRUTH_TABLE = "truth_table", _("Truth table")


class BellInput(models.TextChoices):
    """Product inputs ``|control, target>`` that the gate maps onto the four Bell states."""

    PLUS_ZERO = "plus0", _("|+0>")
    MINUS_ZERO = "minus0", _("|-0>")
    PLUS_ONE = "plus1", _("|+1>")
    MINUS_ONE = "minus1", _("|-1>")

    @classmethod
    def from_token(cls, token: str) -> BellInput:
        """Accept ``plus0`` style names as well as the short ``+0`` form."""
        token = token.strip()
        aliases = {"+0": cls.PLUS_ZERO, "-0": cls.MINUS_ZERO, "+1": cls.PLUS_ONE, "-1": cls.MINUS_ONE}
        if token in aliases:
            return aliases[token]
        try:
            return cls(token)
        except ValueError:
            raise ConfigurationError(f"unknown Bell input {token!r}; use one of {', '.join(cls.values)}") from None

    @property
    def control_label(self) -> str:
        return "+" if self.value.startswith("plus") else "-"

    @property
    def target_label(self) -> str:
        return self.value[-1]

    def qubits(self) -> tuple[LogicalQubitState, LogicalQubitState]:
        return LogicalQubitState.from_label(self.control_label), LogicalQubitState.from_label(self.target_label)

    @property
    def bell_state(self) -> BellState:
        return {
            BellInput.PLUS_ZERO: BellState.PHI_PLUS,
            BellInput.MINUS_ZERO: BellState.PHI_MINUS,
            BellInput.PLUS_ONE: BellState.PSI_PLUS,
            BellInput.MINUS_ONE: BellState.PSI_MINUS,
        }[BellInput(self)]


@dataclass(frozen=True)
class HomScan:
    """Evenly spaced delay grid, in the same units as the coherence width ``sigma``."""

    start: float = -4.0
    stop: float = 4.0
    points: int = 41

    def delays(self) -> list[float]:
        return [float(d) for d in np.linspace(self.start, self.stop, self.points)]


@dataclass(frozen=True)
class ExperimentConfig:
    """Validated experiment manifest with command-line overrides applied."""

    noise: NoiseModel
    seed: int = 0
    trials: int = 100
    exact: bool = False
    count_model: CountModel = CountModel.POISSON
    hom: HomScan = field(default_factory=HomScan)
    output_dir: Path | None = None
    name: str = ""
    description: str = ""

    @property
    def schema_version(self) -> int:
        return SCHEMA_VERSION

    @property
    def shots(self) -> int:
        return self.noise.shots

    def seed_sequence(self, *keys: int) -> np.random.SeedSequence:
        """Independent stream for one stage of an experiment, derived from the manifest seed."""
        return np.random.SeedSequence([self.seed, *keys])


@dataclass(frozen=True)
class Spread:
    """Monte Carlo standard deviation of a reported value; zero in exact mode."""

    value: float
    std: float = 0.0

    @classmethod
    def of(cls, value: float, monte_carlo: MonteCarloResult | None) -> Spread:
        return cls(value=float(value), std=monte_carlo.std if monte_carlo is not None else 0.0)


@dataclass(frozen=True)
class HomResult:
    config: ExperimentConfig
    records: tuple[CountRecord, ...]
    fit: HomFit
    visibility: Spread


@dataclass(frozen=True)
class BellResult:
    config: ExperimentConfig
    bell_input: BellInput
    rho: DensityMatrix
    success_probability: float
    fidelity: Spread
    purity: Spread
    linear_entropy: Spread
    concurrence: Spread
    tangle: Spread
    reconstruction: str
    counts: tuple[float, ...]

    @property
    def bell_state(self) -> BellState:
        return self.bell_input.bell_state


@dataclass(frozen=True)
class ChshRun:
    config: ExperimentConfig
    bell_input: BellInput
    S: Spread
    correlations: tuple[Spread, Spread, Spread, Spread]
    signs: tuple[int, int, int, int]
    angles: tuple[float, float, float, float]
    counts: tuple[float, ...]

    @property
    def bell_state(self) -> BellState:
        return self.bell_input.bell_state


@dataclass(frozen=True)
class QptResult:
    config: ExperimentConfig
    chi: ChiMatrix
    process_fidelity: Spread
    average_gate_fidelity: float
    trace_preservation_residual: float
    success_probabilities: tuple[float, ...]
    reconstruction: str


@dataclass(frozen=True)
class TruthTableResult:
    config: ExperimentConfig
    table: TruthTable
