import logging
from collections.abc import Callable, Iterator, Mapping, Sequence
from dataclasses import dataclass

import numpy as np

from apps.counts.exceptions import DomainError, MonteCarloTrialError
from apps.counts.services.sampling import make_rng, resample
from apps.counts.types import CountModel

logger = logging.getLogger(__name__)

DEFAULT_TRIALS = 100


@dataclass(frozen=True)
class MonteCarloResult:
    mean: float
    std: float
    values: tuple[float, ...]

    @classmethod
    def from_values(cls, values) -> "MonteCarloResult":
        values = np.asarray(values, dtype=float)
        return cls(mean=float(values.mean()), std=float(values.std(ddof=1)), values=tuple(values.tolist()))


def _resampled(records: Sequence, trials: int, model: CountModel, seed) -> Iterator[tuple[int, np.ndarray]]:
    """
    Yield ``(trial, counts)`` for resampled copies of the observed counts.

    Trial ``i`` draws from the ``i``-th child of ``SeedSequence(seed)``, so every trial is
    reproducible on its own and the result does not depend on evaluation order.
    """
    if trials < 2:
        raise DomainError(f"Monte Carlo needs at least 2 trials, got {trials}")
    observed = np.array([getattr(record, "counts", record) for record in records], dtype=float)
    sequence = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)
    for trial, child in enumerate(sequence.spawn(trials)):
        yield trial, resample(observed, model, make_rng(child))


def monte_carlo(
    estimator: Callable[[np.ndarray], float],
    records: Sequence,
    trials: int = DEFAULT_TRIALS,
    model: CountModel = CountModel.POISSON,
    seed=0,
) -> MonteCarloResult:
    """Spread of ``estimator`` over resampled copies of the observed counts."""
    values = []
    for trial, counts in _resampled(records, trials, model, seed):
        try:
            values.append(float(estimator(counts)))
        except Exception as exc:
            raise MonteCarloTrialError(trial, exc) from exc

    result = MonteCarloResult.from_values(values)
    logger.debug("Monte Carlo over %d trials: mean %.6g, std %.3g", trials, result.mean, result.std)
    return result


def monte_carlo_many(
    estimator: Callable[[np.ndarray], Mapping[str, float]],
    records: Sequence,
    trials: int = DEFAULT_TRIALS,
    model: CountModel = CountModel.POISSON,
    seed=0,
) -> dict[str, MonteCarloResult]:
    """
    Like :func:`monte_carlo` for an estimator returning several named quantities from one
    resampled data set, e.g. every metric of one reconstructed state.
    """
    values: dict[str, list[float]] = {}
    for trial, counts in _resampled(records, trials, model, seed):
        try:
            estimates = estimator(counts)
            for name, value in estimates.items():
                values.setdefault(name, []).append(float(value))
        except Exception as exc:
            raise MonteCarloTrialError(trial, exc) from exc
    return {name: MonteCarloResult.from_values(series) for name, series in values.items()}
