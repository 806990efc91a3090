import copy
import json
import logging
from pathlib import Path

from django.conf import settings

from apps.experiments.exceptions import ConfigurationError
from apps.experiments.serializers import ExperimentConfigSerializer
from apps.experiments.types import ExperimentConfig

logger = logging.getLogger(__name__)


def _flatten_errors(errors, prefix="") -> list[str]:
    if isinstance(errors, dict):
        messages = []
        for key, value in errors.items():
            name = key if key != "non_field_errors" else ""
            messages += _flatten_errors(value, f"{prefix}.{name}" if prefix and name else prefix or name)
        return messages
    if isinstance(errors, list):
        return [message for error in errors for message in _flatten_errors(error, prefix)]
    return [f"{prefix}: {errors}" if prefix else str(errors)]


def read_manifest(path) -> dict:
    path = Path(path)
    try:
        document = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise ConfigurationError(f"experiment manifest {path} does not exist") from None
    except json.JSONDecodeError as exc:
        raise ConfigurationError(f"experiment manifest {path} is not valid JSON: {exc}") from exc
    if not isinstance(document, dict):
        raise ConfigurationError(f"experiment manifest {path} must be a JSON object")
    return document


def validate_manifest(document: dict) -> ExperimentConfig:
    serializer = ExperimentConfigSerializer(data=document)
    if not serializer.is_valid():
        raise ConfigurationError("; ".join(_flatten_errors(serializer.errors)))
    return serializer.save()


def apply_overrides(document: dict, seed=None, shots=None, trials=None, exact=None, output=None) -> dict:
    """Copy of ``document`` with the given command-line values replacing the manifest's."""
    merged = copy.deepcopy(document)
    overrides = {"seed": seed, "shots": shots, "trials": trials, "exact": exact, "output": output}
    merged.update({key: value for key, value in overrides.items() if value is not None})
    return merged


def load_config(path=None, **overrides) -> ExperimentConfig:
    """
    Read, validate and resolve an experiment manifest.

    ``path`` defaults to ``settings.CNOT_EXPERIMENT_CONFIG``. The manifest is validated as written,
    then again after the overrides are merged in.
    """
    path = Path(path or settings.CNOT_EXPERIMENT_CONFIG)
    document = read_manifest(path)
    validate_manifest(document)
    config = validate_manifest(apply_overrides(document, **overrides))
    logger.info("Loaded experiment manifest %s (seed %d, exact=%s)", path, config.seed, config.exact)
    return config


def resolve_output_dir(config: ExperimentConfig, output=None) -> Path:
    return Path(output or config.output_dir or settings.CNOT_OUTPUT_DIR)


def config_document(config: ExperimentConfig) -> dict:
    return dict(ExperimentConfigSerializer(config).data)
