import csv
import json
import math
import tempfile
from io import StringIO
from pathlib import Path

import numpy as np
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from apps.experiments.tests.utils import IDEAL, write_manifest
from apps.utils.serialization import UNDEFINED, matrix_from_pairs


class CommandTestCase(SimpleTestCase):
    def setUp(self):
        self._directory = tempfile.TemporaryDirectory()
        self.output = Path(self._directory.name)

    def tearDown(self):
        self._directory.cleanup()

    def call(self, name, *args, **options):
        options.setdefault("config", str(IDEAL))
        options.setdefault("output", str(self.output))
        stdout = StringIO()
        call_command(name, *args, stdout=stdout, **options)
        return stdout.getvalue()

    def read_json(self, name):
        return json.loads((self.output / name).read_text(encoding="utf-8"))


class HomCommandTestCase(CommandTestCase):
    """Tests for the hom command."""

    def test_exact_outputs(self):
        """Exact mode writes the scan and a fit with V = 0.8."""
        self.call("hom", exact=True)
        with (self.output / "hom_scan.csv").open(encoding="utf-8") as handle:
            rows = list(csv.reader(handle))
        self.assertEqual(rows[0], ["delay", "counts", "exact_probability"])
        self.assertEqual(len(rows), 42)

        document = self.read_json("hom_fit.json")
        self.assertEqual(document["schema_version"], 1)
        self.assertEqual(document["experiment_name"], "hom")
        self.assertAlmostEqual(document["fit"]["visibility"], 0.8, places=6)
        self.assertEqual(document["visibility"]["std"], 0)
        self.assertTrue(document["config"]["exact"])

    def test_sampled_runs_are_byte_identical(self):
        """Two runs with the same seed write the same bytes."""
        self.call("hom", seed=9, trials=3)
        first = (self.output / "hom_scan.csv").read_bytes(), (self.output / "hom_fit.json").read_bytes()
        self.call("hom", seed=9, trials=3)
        second = (self.output / "hom_scan.csv").read_bytes(), (self.output / "hom_fit.json").read_bytes()
        self.assertEqual(first, second)

    def test_command_line_flags(self):
        """Flags given as on the command line select the manifest and reach the output."""
        manifest = write_manifest(self.output, noise={"background": 12.5}, name="flagged")
        stdout = StringIO()
        call_command(
            "hom", "--config", str(manifest), "--exact", "--seed", "4", "--output", str(self.output), stdout=stdout
        )
        document = self.read_json("hom_fit.json")
        self.assertEqual(document["config"]["name"], "flagged")
        self.assertEqual(document["config"]["noise"]["background"], 12.5)
        self.assertEqual(document["seed"], 4)
        self.assertIn("Wrote", stdout.getvalue())

    def test_config_error_exit_code(self):
        """Invalid manifests exit with code 2."""
        manifest = write_manifest(self.output, schema_version=3)
        with self.assertRaises(CommandError) as context:
            self.call("hom", config=str(manifest))
        self.assertEqual(context.exception.returncode, 2)

    def test_invalid_override_exit_code(self):
        """Invalid flag values exit with code 2."""
        with self.assertRaises(CommandError) as context:
            self.call("hom", shots=0)
        self.assertEqual(context.exception.returncode, 2)


class BellCommandTestCase(CommandTestCase):
    """Tests for the bell command."""

    def test_short_tokens(self):
        """Short input tokens write files named after the long form."""
        self.call("bell", "+0", "-1", exact=True)
        document = self.read_json("bell_plus0.json")
        self.assertEqual(document["bell_state"], "phi_plus")
        self.assertGreaterEqual(document["fidelity"]["value"], 1 - 1e-10)
        self.assertAlmostEqual(document["success_probability"], 1 / 9, places=12)
        self.assertEqual(len(document["settings"]), 16)
        self.assertEqual(self.read_json("bell_minus1.json")["bell_state"], "psi_minus")
        self.assertFalse((self.output / "bell_minus0.json").exists())

    def test_density_matrix_encoding(self):
        """The density matrix is written as [re, im] pairs with unit trace."""
        self.call("bell", "plus1", exact=True)
        rho = matrix_from_pairs(self.read_json("bell_plus1.json")["rho"])
        self.assertEqual(rho.shape, (4, 4))
        self.assertAlmostEqual(rho.trace().real, 1, places=10)
        self.assertAlmostEqual(rho[1, 2].real, 0.5, places=10)

    def test_all_inputs_by_default(self):
        """Without inputs all four Bell states are produced."""
        self.call("bell", exact=True)
        for name in ("plus0", "minus0", "plus1", "minus1"):
            self.assertTrue((self.output / f"bell_{name}.json").exists())

    def test_unknown_input(self):
        """Unknown input tokens are configuration errors."""
        with self.assertRaises(CommandError) as context:
            self.call("bell", "+i", exact=True)
        self.assertEqual(context.exception.returncode, 2)

    def test_reconstruction_failure_exit_code(self):
        """A gate that never succeeds fails at reconstruction with code 1."""
        manifest = write_manifest(self.output, noise={"transmissions": [0, 0, 0, 0]})
        with self.assertLogs("apps.experiments", level="ERROR"):
            with self.assertRaises(CommandError) as context:
                self.call("bell", "+0", config=str(manifest), exact=True)
        self.assertEqual(context.exception.returncode, 1)


class ChshCommandTestCase(CommandTestCase):
    """Tests for the chsh command."""

    def test_exact(self):
        """Exact mode reaches the Tsirelson bound."""
        self.call("chsh", "-0", exact=True)
        document = self.read_json("chsh_minus0.json")
        self.assertAlmostEqual(document["S"]["value"], 2 * math.sqrt(2), places=9)
        self.assertEqual(document["signs"], [-1, 1, -1, -1])
        self.assertEqual(document["angles"], [0.0, 45.0, 22.5, 67.5])
        self.assertEqual(len(document["correlations"]), 4)


class QptCommandTestCase(CommandTestCase):
    """Tests for the qpt command."""

    def test_exact(self):
        """Exact mode reconstructs CNOT."""
        self.call("qpt", exact=True)
        document = self.read_json("qpt.json")
        self.assertAlmostEqual(document["process_fidelity"]["value"], 1, places=8)
        self.assertEqual(len(document["chi"]), 16)
        self.assertEqual(document["basis"][13], "ZX")
        self.assertAlmostEqual(matrix_from_pairs(document["chi"])[13, 13].real, 0.25, places=8)


class TruthTableCommandTestCase(CommandTestCase):
    """Tests for the truth_table command."""

    def _rows(self):
        with (self.output / "truth_table.csv").open(encoding="utf-8") as handle:
            return list(csv.reader(handle))

    def test_ideal(self):
        """The ideal table has CNOT permutation rows."""
        self.call("truth_table", exact=True)
        rows = self._rows()
        self.assertEqual(rows[0], ["input", "success_probability", "p00", "p01", "p10", "p11"])
        np.testing.assert_allclose([float(p) for p in rows[3][2:]], [0, 0, 0, 1], atol=1e-12)
        np.testing.assert_allclose([float(p) for p in rows[4][2:]], [0, 0, 1, 0], atol=1e-12)

    def test_blocked_mode(self):
        """Rows that are never post-selected carry the undefined marker."""
        manifest = write_manifest(self.output, noise={"transmissions": [1, 0, 1, 1]})
        output = self.call("truth_table", config=str(manifest), exact=True)
        rows = {row[0]: row for row in self._rows()[1:]}
        self.assertEqual(rows["10"][2:], [UNDEFINED] * 4)
        self.assertEqual(rows["11"][2:], [UNDEFINED] * 4)
        self.assertNotIn(UNDEFINED, rows["00"])
        self.assertIn("never post-selected", output)

    def test_sampled_is_deterministic(self):
        """A fixed seed gives an identical CSV."""
        self.call("truth_table", seed=2)
        first = (self.output / "truth_table.csv").read_bytes()
        self.call("truth_table", seed=2)
        self.assertEqual((self.output / "truth_table.csv").read_bytes(), first)
