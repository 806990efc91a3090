from apps.experiments.management.commands._base import BellInputCommand
from apps.experiments.services import run_chsh, write_chsh


class Command(BellInputCommand):
    help = "Evaluates the CHSH inequality on the generated Bell states."

    def run(self, config, output_dir, **options):
        paths = []
        for bell_input in self.bell_inputs:
            result = run_chsh(config, bell_input)
            self.stdout.write(f"{bell_input.label}: S = {result.S.value:.4f} ± {result.S.std:.4f}")
            if result.S.value <= 2:
                self.stdout.write(self.style.WARNING(f"{bell_input.label} does not violate the local bound"))
            paths += write_chsh(result, output_dir)
        return paths
