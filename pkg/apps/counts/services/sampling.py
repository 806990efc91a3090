"""
Coincidence-count sampling.

Every operation draws from its own PCG64 stream seeded through ``numpy.random.SeedSequence``, so a
given seed reproduces the same counts on every platform.
"""

from collections.abc import Sequence

import numpy as np

from apps.counts.exceptions import DomainError
from apps.counts.types import CountModel, CountRecord
from apps.tomo.types import MeasurementSetting


def make_rng(seed) -> np.random.Generator:
    """PCG64 generator from an integer seed or a spawned ``SeedSequence``."""
    sequence = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)
    return np.random.Generator(np.random.PCG64(sequence))


def _check_inputs(probabilities: np.ndarray, shots: int, background: float):
    if np.any(~np.isfinite(probabilities)) or np.any(probabilities < 0) or np.any(probabilities > 1):
        raise DomainError(f"probabilities must lie in [0, 1], got {probabilities.tolist()}")
    if int(shots) != shots or shots <= 0:
        raise DomainError(f"shots must be a positive integer, got {shots}")
    if background < 0:
        raise DomainError(f"background must be non-negative, got {background}")


def draw(means, model: CountModel, rng: np.random.Generator) -> np.ndarray:
    """One count per mean: Poisson, or a rounded normal with variance equal to the mean clamped at 0."""
    means = np.asarray(means, dtype=float)
    if CountModel(model) == CountModel.POISSON:
        return rng.poisson(means)
    return np.rint(np.maximum(0.0, rng.normal(means, np.sqrt(means)))).astype(np.int64)


def expected_counts(probabilities, shots: int, background: float = 0.0) -> np.ndarray:
    probabilities = np.asarray(probabilities, dtype=float)
    _check_inputs(probabilities, shots, background)
    return probabilities * shots + background


def _records(counts, probabilities, shots, settings, delays) -> list[CountRecord]:
    settings = settings if settings is not None else [None] * len(counts)
    delays = delays if delays is not None else [None] * len(counts)
    return [
        CountRecord(counts=c, shots=shots, probability=float(p), setting=s, delay=d)
        for c, p, s, d in zip(counts, probabilities, settings, delays, strict=True)
    ]


def sample_counts(
    probabilities,
    shots: int,
    background: float = 0.0,
    model: CountModel = CountModel.POISSON,
    seed=0,
    settings: Sequence[MeasurementSetting] | None = None,
    delays: Sequence[float] | None = None,
) -> list[CountRecord]:
    """Counts with mean ``p * shots + background`` for each probability."""
    probabilities = np.asarray(probabilities, dtype=float)
    means = expected_counts(probabilities, shots, background)
    counts = draw(means, model, make_rng(seed))
    return _records([int(c) for c in counts], probabilities, shots, settings, delays)


def exact_counts(
    probabilities,
    shots: int,
    background: float = 0.0,
    settings: Sequence[MeasurementSetting] | None = None,
    delays: Sequence[float] | None = None,
) -> list[CountRecord]:
    """Expected counts in place of samples."""
    probabilities = np.asarray(probabilities, dtype=float)
    means = expected_counts(probabilities, shots, background)
    return _records([float(m) for m in means], probabilities, shots, settings, delays)


def resample(counts, model: CountModel, rng: np.random.Generator) -> np.ndarray:
    """Redraw each observed count around itself."""
    counts = np.asarray(counts, dtype=float)
    if np.any(counts < 0):
        raise DomainError("counts must be non-negative")
    return draw(counts, model, rng)
