from apps.experiments.management.commands._base import ExperimentCommand
from apps.experiments.services import run_qpt, write_qpt


class Command(ExperimentCommand):
    help = "Reconstructs the process matrix of the gate from 256 simulated projections."

    def run(self, config, output_dir, **options):
        result = run_qpt(config)
        fidelity = result.process_fidelity
        self.stdout.write(f"F_p = {fidelity.value:.4f} ± {fidelity.std:.4f}")
        return write_qpt(result, output_dir)
