from apps.experiments.management.commands._base import BellInputCommand
from apps.experiments.services import run_bell, write_bell


class Command(BellInputCommand):
    help = "Reconstructs the Bell states produced from superposition inputs by state tomography."

    def run(self, config, output_dir, **options):
        paths = []
        for bell_input in self.bell_inputs:
            result = run_bell(config, bell_input)
            self.stdout.write(
                f"{bell_input.label} -> {result.bell_state.label}: "
                f"F = {result.fidelity.value:.4f} ± {result.fidelity.std:.4f}, "
                f"tangle = {result.tangle.value:.4f}, S_L = {result.linear_entropy.value:.4f}"
            )
            paths += write_bell(result, output_dir)
        return paths
