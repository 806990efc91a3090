from apps.experiments.management.commands._base import ExperimentCommand
from apps.experiments.services import run_hom, write_hom


class Command(ExperimentCommand):
    help = "Simulates a HOM delay scan through the coupler and fits the interference dip."

    def run(self, config, output_dir, **options):
        result = run_hom(config)
        fit = result.fit
        self.stdout.write(
            f"V = {fit.visibility:.4f} ± {result.visibility.std:.4f} (C_min/C_max = {1 - fit.visibility:.4f})"
        )
        return write_hom(result, output_dir)
