"""
End-to-end experiment pipelines.

Each runner prepares logical inputs, sends them through the chip model, post-selects, turns the
post-selected probabilities into coincidence counts and analyses the counts exactly as measured
data would be. With ``config.exact`` the counts are expectation values, reconstruction is linear
inversion and every Monte Carlo spread is zero.
"""

import logging

import numpy as np

from apps.counts.services import (
    exact_counts,
    fit_hom,
    hom_exact_counts,
    hom_scan,
    monte_carlo,
    monte_carlo_many,
    sample_counts,
)
from apps.counts.types import CountRecord
from apps.experiments.types import (
    BellInput,
    BellResult,
    ChshRun,
    ExperimentConfig,
    ExperimentKind,
    HomResult,
    QptResult,
    Spread,
    TruthTableResult,
)
from apps.logical.services import decode_density, ideal_gate, run_gate, truth_table
from apps.logical.services.gates import SUCCESS_FLOOR
from apps.logical.types import GateName, LogicalQubitState, TruthTable, TruthTableRow
from apps.tomo.services import (
    CANONICAL_SETTINGS,
    CHSH_SIGNS,
    DEFAULT_ANGLES,
    average_gate_fidelity,
    bell_state,
    born,
    canonical_probabilities,
    chi_of_unitary,
    chsh_from_counts,
    chsh_settings,
    concurrence,
    linear_entropy,
    process_fidelity,
    projector,
    purity,
    qpt,
    qst_linear_from_counts,
    qst_mle,
    state_fidelity,
    tangle,
    trace_preservation_residual,
)
from apps.tomo.types import DensityMatrix

logger = logging.getLogger(__name__)

# Seed-sequence keys of the two random stages of every experiment.
DATA = 0
MONTE_CARLO = 1

LINEAR = "linear"
MLE = "mle"


def _seed(config: ExperimentConfig, kind: ExperimentKind, item: int, stage: int) -> np.random.SeedSequence:
    return config.seed_sequence(list(ExperimentKind).index(kind), item, stage)


def _counts(config: ExperimentConfig, probabilities, seed, settings=None) -> list[CountRecord]:
    noise = config.noise
    if config.exact:
        return exact_counts(probabilities, noise.shots, background=noise.background, settings=settings)
    return sample_counts(
        probabilities,
        noise.shots,
        background=noise.background,
        model=config.count_model,
        seed=seed,
        settings=settings,
    )


def _reconstruct(config: ExperimentConfig, counts) -> DensityMatrix:
    return qst_linear_from_counts(counts) if config.exact else qst_mle(counts)


def _gate_output(config: ExperimentConfig, control: LogicalQubitState, target: LogicalQubitState):
    """Success probability and unnormalized logical output state."""
    state = run_gate(config.noise, control, target)
    return state.success_probability, decode_density(state)


def run_hom(config: ExperimentConfig) -> HomResult:
    noise = config.noise
    delays = config.hom.delays()
    logger.info("HOM scan over %d delays, exact=%s", len(delays), config.exact)
    if config.exact:
        records = hom_exact_counts(noise, delays)
    else:
        records = hom_scan(noise, delays, seed=_seed(config, ExperimentKind.HOM, 0, DATA), model=config.count_model)

    fit = fit_hom(records)
    spread = None
    if not config.exact:
        spread = monte_carlo(
            lambda counts: fit_hom(records, counts=counts).visibility,
            records,
            trials=config.trials,
            model=config.count_model,
            seed=_seed(config, ExperimentKind.HOM, 0, MONTE_CARLO),
        )
    logger.info("HOM visibility %.4f", fit.visibility)
    return HomResult(config=config, records=tuple(records), fit=fit, visibility=Spread.of(fit.visibility, spread))


def _state_metrics(rho, target) -> dict[str, float]:
    return {
        "fidelity": state_fidelity(rho, target),
        "purity": purity(rho),
        "linear_entropy": linear_entropy(rho),
        "concurrence": concurrence(rho),
        "tangle": tangle(rho),
    }


def run_bell(config: ExperimentConfig, bell_input: BellInput) -> BellResult:
    bell_input = BellInput(bell_input)
    item = list(BellInput).index(bell_input)
    success, raw = _gate_output(config, *bell_input.qubits())
    records = _counts(
        config, canonical_probabilities(raw), _seed(config, ExperimentKind.BELL, item, DATA), CANONICAL_SETTINGS
    )
    rho = _reconstruct(config, records)
    target = bell_state(bell_input.bell_state)
    metrics = _state_metrics(rho, target)

    spreads = {}
    if not config.exact:
        spreads = monte_carlo_many(
            lambda counts: _state_metrics(_reconstruct(config, counts), target),
            records,
            trials=config.trials,
            model=config.count_model,
            seed=_seed(config, ExperimentKind.BELL, item, MONTE_CARLO),
        )
    logger.info("Bell input %s: fidelity %.4f to %s", bell_input, metrics["fidelity"], bell_input.bell_state)
    return BellResult(
        config=config,
        bell_input=bell_input,
        rho=rho,
        success_probability=success,
        reconstruction=LINEAR if config.exact else MLE,
        counts=tuple(float(record.counts) for record in records),
        **{name: Spread.of(value, spreads.get(name)) for name, value in metrics.items()},
    )


def run_chsh(config: ExperimentConfig, bell_input: BellInput, angles=DEFAULT_ANGLES) -> ChshRun:
    """CHSH value from coincidences at the analyser settings, with the sign pattern of the expected Bell state."""
    bell_input = BellInput(bell_input)
    item = list(BellInput).index(bell_input)
    _, raw = _gate_output(config, *bell_input.qubits())
    settings = chsh_settings(angles)
    probabilities = [born(raw, projector(setting)) for setting in settings]
    records = _counts(config, probabilities, _seed(config, ExperimentKind.CHSH, item, DATA), settings)
    signs = CHSH_SIGNS[bell_input.bell_state]
    result = chsh_from_counts(records, signs)

    def estimates(counts):
        trial = chsh_from_counts(counts, signs)
        return {"S": trial.S, **{f"E{k}": value for k, value in enumerate(trial.correlations)}}

    spreads = {}
    if not config.exact:
        spreads = monte_carlo_many(
            estimates,
            records,
            trials=config.trials,
            model=config.count_model,
            seed=_seed(config, ExperimentKind.CHSH, item, MONTE_CARLO),
        )
    logger.info("CHSH input %s: S = %.4f", bell_input, result.S)
    return ChshRun(
        config=config,
        bell_input=bell_input,
        S=Spread.of(result.S, spreads.get("S")),
        correlations=tuple(Spread.of(value, spreads.get(f"E{k}")) for k, value in enumerate(result.correlations)),
        signs=result.signs,
        angles=tuple(float(angle) for angle in angles),
        counts=tuple(float(record.counts) for record in records),
    )


def _process_chi(config: ExperimentConfig, counts):
    settings_count = len(CANONICAL_SETTINGS)
    outputs = [
        _reconstruct(config, counts[k * settings_count : (k + 1) * settings_count]) for k in range(settings_count)
    ]
    return qpt(outputs)


def run_qpt(config: ExperimentConfig) -> QptResult:
    """Process tomography over the 16 canonical product inputs, 16 projections each."""
    records, successes = [], []
    for k, setting in enumerate(CANONICAL_SETTINGS):
        control = LogicalQubitState(tuple(setting.control.vector()))
        target = LogicalQubitState(tuple(setting.target.vector()))
        success, raw = _gate_output(config, control, target)
        successes.append(success)
        records += _counts(
            config, canonical_probabilities(raw), _seed(config, ExperimentKind.QPT, k, DATA), CANONICAL_SETTINGS
        )

    counts = [record.counts for record in records]
    chi = _process_chi(config, counts)
    ideal = chi_of_unitary(ideal_gate(GateName.CNOT))
    fidelity = process_fidelity(chi, ideal)

    spread = None
    if not config.exact:
        spread = monte_carlo(
            lambda resampled: process_fidelity(_process_chi(config, resampled), ideal),
            records,
            trials=config.trials,
            model=config.count_model,
            seed=_seed(config, ExperimentKind.QPT, 0, MONTE_CARLO),
        )
    logger.info("Process fidelity %.4f over %d measurements", fidelity, len(records))
    return QptResult(
        config=config,
        chi=chi,
        process_fidelity=Spread.of(fidelity, spread),
        average_gate_fidelity=average_gate_fidelity(chi, ideal),
        trace_preservation_residual=trace_preservation_residual(chi),
        success_probabilities=tuple(successes),
        reconstruction=LINEAR if config.exact else MLE,
    )


def _sampled_row(config: ExperimentConfig, row: TruthTableRow, item: int) -> TruthTableRow:
    raw = [row.success_probability * p for p in row.probabilities]
    counts = np.array([r.counts for r in _counts(config, raw, _seed(config, ExperimentKind.TRUTH_TABLE, item, DATA))])
    if counts.sum() <= 0:
        logger.warning("No coincidences recorded for input |%s>; truth table row is undefined", row.input_label)
        return TruthTableRow(
            input_label=row.input_label, success_probability=row.success_probability, probabilities=None
        )
    return TruthTableRow(
        input_label=row.input_label,
        success_probability=row.success_probability,
        probabilities=tuple(float(c) for c in counts / counts.sum()),
    )


def run_truth_table(config: ExperimentConfig) -> TruthTableResult:
    """Computational-basis truth table; sampled mode reports measured frequencies including background."""
    table = truth_table(config.noise)
    if not config.exact:
        rows = [
            _sampled_row(config, row, k) if row.is_defined and row.success_probability > SUCCESS_FLOOR else row
            for k, row in enumerate(table.rows)
        ]
        table = TruthTable(rows=tuple(rows))
    return TruthTableResult(config=config, table=table)
