import logging

from django.core.management.base import BaseCommand, CommandError

from apps.counts.exceptions import CountsError
from apps.experiments.exceptions import ConfigurationError, ExperimentError
from apps.experiments.services import load_config, resolve_output_dir
from apps.experiments.types import BellInput
from apps.logical.exceptions import LogicalError
from apps.mode_core.exceptions import ModeCoreError
from apps.tomo.exceptions import TomographyError

logger = logging.getLogger(__name__)

CONFIG_ERROR = 2
RUNTIME_ERROR = 1

LIBRARY_ERRORS = (ModeCoreError, LogicalError, TomographyError, CountsError, ExperimentError)


class ExperimentCommand(BaseCommand):
    """
    Shared flags and error translation of the experiment commands.

    Subclasses implement ``run(config, output_dir, **options)`` and return the written paths.
    """

    def add_arguments(self, parser):
        parser.add_argument("--config", help="Experiment manifest (defaults to CNOT_EXPERIMENT_CONFIG)")
        parser.add_argument("--seed", type=int, help="Override the manifest seed")
        parser.add_argument("--shots", type=int, help="Override the number of shots per setting")
        parser.add_argument("--trials", type=int, help="Override the number of Monte Carlo trials")
        parser.add_argument(
            "--exact",
            action="store_true",
            default=None,
            help="Use expected counts instead of samples; every statistical error is zero",
        )
        parser.add_argument("--output", help="Directory for the output files")

    def handle(self, *args, **options):
        manifest = options.pop("config", None)
        try:
            config = load_config(
                manifest,
                seed=options.get("seed"),
                shots=options.get("shots"),
                trials=options.get("trials"),
                exact=options.get("exact"),
                output=options.get("output"),
            )
            output_dir = resolve_output_dir(config, options.get("output"))
            self.prepare(config, **options)
        except ConfigurationError as exc:
            raise CommandError(f"Invalid configuration: {exc}", returncode=CONFIG_ERROR) from exc

        try:
            paths = self.run(config, output_dir, **options)
        except LIBRARY_ERRORS as exc:
            logger.exception("Experiment %s failed", self.__module__.rsplit(".", 1)[-1])
            raise CommandError(f"Experiment failed: {exc}", returncode=RUNTIME_ERROR) from exc

        for path in paths:
            self.stdout.write(self.style.SUCCESS(f"Wrote {path}"))

    def prepare(self, config, **options):
        """Validate command-specific arguments; raise ConfigurationError on bad input."""

    def run(self, config, output_dir, **options):
        raise NotImplementedError


class BellInputCommand(ExperimentCommand):
    """Experiment commands taking Bell inputs as positional arguments (all four when none are given)."""

    def add_arguments(self, parser):
        parser.add_argument(
            "inputs",
            nargs="*",
            help="Product inputs plus0, minus0, plus1, minus1 (or +0, -0, +1, -1)",
        )
        super().add_arguments(parser)

    def prepare(self, config, **options):
        tokens = options.get("inputs") or list(BellInput.values)
        self.bell_inputs = [BellInput.from_token(token) for token in tokens]
