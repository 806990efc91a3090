from apps.experiments.management.commands._base import ExperimentCommand
from apps.experiments.services import run_truth_table, write_truth_table


class Command(ExperimentCommand):
    help = "Tabulates the gate's output distribution for the four computational inputs."

    def run(self, config, output_dir, **options):
        result = run_truth_table(config)
        for row in result.table.rows:
            if not row.is_defined:
                self.stdout.write(self.style.WARNING(f"|{row.input_label}> is never post-selected"))
        return write_truth_table(result, output_dir)
