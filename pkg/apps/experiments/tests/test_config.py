import json
import tempfile
from pathlib import Path

from django.test import SimpleTestCase, override_settings

from apps.counts.types import CountModel
from apps.experiments.exceptions import ConfigurationError
from apps.experiments.services import apply_overrides, config_document, load_config, read_manifest, validate_manifest
from apps.experiments.tests.utils import IDEAL, EXPERIMENTAL_REGIME, write_manifest
from apps.experiments.types import BellInput
from apps.mode_core.types import NoiseModel
from apps.tomo.types import BellState


class LoadConfigTestCase(SimpleTestCase):
    """Tests for reading experiment manifests."""

    def test_ideal_manifest(self):
        """The shipped ideal manifest describes the ideal device."""
        config = load_config(IDEAL)
        self.assertEqual(config.noise, NoiseModel(shots=10_000))
        self.assertEqual(config.count_model, CountModel.POISSON)
        self.assertFalse(config.exact)
        self.assertEqual(len(config.hom.delays()), 41)

    def test_experimental_regime_manifest(self):
        """The shipped experimental-regime manifest adds a flat background."""
        config = load_config(EXPERIMENTAL_REGIME)
        self.assertEqual(config.noise.background, 471.0)
        self.assertEqual(config.shots, 100_000)

    @override_settings(CNOT_EXPERIMENT_CONFIG=str(EXPERIMENTAL_REGIME))
    def test_default_path_from_settings(self):
        """Without a path the configured default manifest is used."""
        self.assertEqual(load_config().name, "paper_regime")

    def test_missing_file(self):
        """A missing manifest is a configuration error."""
        with self.assertRaises(ConfigurationError):
            load_config("/nonexistent/manifest.json")

    def test_invalid_json(self):
        """Malformed JSON is a configuration error."""
        with tempfile.TemporaryDirectory() as directory:
            path = Path(directory) / "broken.json"
            path.write_text("{not json", encoding="utf-8")
            with self.assertRaises(ConfigurationError):
                load_config(path)

    def test_minimal_manifest(self):
        """Only the schema version is required."""
        config = validate_manifest({"schema_version": 1})
        self.assertEqual(config.noise, NoiseModel())
        self.assertEqual(config.trials, 100)
        self.assertIsNone(config.output_dir)


class ValidationTestCase(SimpleTestCase):
    """Tests for manifest validation."""

    def _document(self, **changes):
        document = read_manifest(IDEAL)
        document.update(changes)
        return document

    def test_unknown_top_level_key(self):
        """Unknown keys are rejected."""
        with self.assertRaisesMessage(ConfigurationError, "shotz"):
            validate_manifest(self._document(shotz=5))

    def test_unknown_nested_key(self):
        """Unknown keys inside the noise model are rejected with their path."""
        document = self._document()
        document["noise"]["visibility"] = 0.9
        with self.assertRaisesMessage(ConfigurationError, "noise.visibility"):
            validate_manifest(document)

    def test_schema_version(self):
        """Only schema version 1 is accepted."""
        with self.assertRaisesMessage(ConfigurationError, "schema_version"):
            validate_manifest(self._document(schema_version=2))
        document = self._document()
        del document["schema_version"]
        with self.assertRaises(ConfigurationError):
            validate_manifest(document)

    def test_noise_ranges(self):
        """Out-of-range noise parameters are rejected."""
        for noise in ({"x": 1.5}, {"transmissions": [1, 1, 1]}, {"sigma": 0}, {"background": -1}):
            document = self._document()
            document["noise"].update(noise)
            with self.assertRaises(ConfigurationError, msg=str(noise)):
                validate_manifest(document)

    def test_scan_must_increase(self):
        """A delay scan must run forwards."""
        with self.assertRaises(ConfigurationError):
            validate_manifest(self._document(hom={"start": 1, "stop": -1, "points": 11}))

    def test_too_few_trials(self):
        """Monte Carlo needs two trials."""
        with self.assertRaises(ConfigurationError):
            validate_manifest(self._document(trials=1))

    def test_resolved_document_validates(self):
        """The document embedded in outputs is itself a valid manifest."""
        config = load_config(EXPERIMENTAL_REGIME)
        document = json.loads(json.dumps(config_document(config)))
        self.assertEqual(validate_manifest(document), config)


class OverridesTestCase(SimpleTestCase):
    """Tests for command-line overrides."""

    def test_overrides_replace_manifest_values(self):
        """Given values replace the manifest's and the rest stay."""
        config = load_config(IDEAL, seed=7, shots=500, trials=3, exact=True, output="/tmp/out")
        self.assertEqual((config.seed, config.shots, config.trials, config.exact), (7, 500, 3, True))
        self.assertEqual(config.output_dir, Path("/tmp/out"))
        self.assertEqual(config.noise.x, 1.0)

    def test_missing_overrides_are_ignored(self):
        """None means the flag was not given."""
        document = {"schema_version": 1, "seed": 3}
        self.assertEqual(apply_overrides(document, seed=None, exact=None), document)
        self.assertIsNot(apply_overrides(document), document)

    def test_invalid_override(self):
        """Overrides are validated too."""
        with self.assertRaises(ConfigurationError):
            load_config(IDEAL, shots=0)

    def test_manifest_is_validated_before_overrides(self):
        """An invalid manifest is rejected even when an override would fix it."""
        with tempfile.TemporaryDirectory() as directory:
            path = write_manifest(directory, seed=-1)
            with self.assertRaises(ConfigurationError):
                load_config(path, seed=1)


class BellInputTestCase(SimpleTestCase):
    """Tests for Bell input tokens."""

    def test_tokens(self):
        """Long and short tokens name the same input."""
        self.assertEqual(BellInput.from_token("+0"), BellInput.PLUS_ZERO)
        self.assertEqual(BellInput.from_token("minus1"), BellInput.MINUS_ONE)
        with self.assertRaises(ConfigurationError):
            BellInput.from_token("+i")

    def test_pairing(self):
        """Each input maps to its Bell state."""
        pairing = {
            BellInput.PLUS_ZERO: BellState.PHI_PLUS,
            BellInput.MINUS_ZERO: BellState.PHI_MINUS,
            BellInput.PLUS_ONE: BellState.PSI_PLUS,
            BellInput.MINUS_ONE: BellState.PSI_MINUS,
        }
        for bell_input, state in pairing.items():
            self.assertEqual(bell_input.bell_state, state)

    def test_qubits(self):
        """|-1> prepares the minus state on the control and |1> on the target."""
        control, target = BellInput.MINUS_ONE.qubits()
        self.assertAlmostEqual(control.beta, -(0.5**0.5), places=12)
        self.assertEqual(target.beta, 1)
