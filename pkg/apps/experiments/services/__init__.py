from apps.experiments.services.config import (
    apply_overrides,
    config_document,
    load_config,
    read_manifest,
    resolve_output_dir,
    validate_manifest,
)
from apps.experiments.services.outputs import write_bell, write_chsh, write_hom, write_qpt, write_truth_table
from apps.experiments.services.runners import run_bell, run_chsh, run_hom, run_qpt, run_truth_table

__all__ = [
    "read_manifest",
    "validate_manifest",
    "apply_overrides",
    "load_config",
    "resolve_output_dir",
    "config_document",
    "run_hom",
    "run_bell",
    "run_chsh",
    "run_qpt",
    "run_truth_table",
    "write_hom",
    "write_bell",
    "write_chsh",
    "write_qpt",
    "write_truth_table",
]
