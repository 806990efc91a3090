"""
Unit tests for count sampling, HOM scans and Monte Carlo errors.
"""

import numpy as np
from django.test import SimpleTestCase

from apps.counts.exceptions import DomainError, MonteCarloTrialError
from apps.counts.services import (
    DEFAULT_TRIALS,
    dip_model,
    fit_hom,
    hom_exact_counts,
    hom_probabilities,
    hom_scan,
    indistinguishability_of_delay,
    monte_carlo,
    monte_carlo_many,
    resample,
    sample_counts,
)
from apps.counts.types import CountModel, CountRecord
from apps.mode_core.types import NoiseModel

DELAYS = list(np.linspace(-4, 4, 41))


def _records(delays, counts):
    return [CountRecord(counts=c, shots=1, delay=d) for d, c in zip(delays, counts, strict=True)]


class SampleCountsTestCase(SimpleTestCase):
    """Tests for coincidence sampling."""

    def test_zero_probability(self):
        """Without signal or background nothing is counted."""
        for model in CountModel:
            records = sample_counts([0.0] * 8, 10_000, model=model, seed=3)
            self.assertEqual([r.counts for r in records], [0] * 8)

    def test_poisson_mean(self):
        """The mean over seeds is within three standard errors of p * shots."""
        values = [sample_counts([0.5], 1_000_000, seed=seed)[0].counts for seed in range(100)]
        self.assertLess(abs(np.mean(values) - 500_000), 3 * np.sqrt(500_000 / 100))

    def test_seed_determinism(self):
        """The same seed gives the same counts and another seed does not."""
        probabilities = np.linspace(0, 1, 16)
        first = [r.counts for r in sample_counts(probabilities, 5000, background=3, seed=42)]
        second = [r.counts for r in sample_counts(probabilities, 5000, background=3, seed=42)]
        third = [r.counts for r in sample_counts(probabilities, 5000, background=3, seed=43)]
        self.assertEqual(first, second)
        self.assertNotEqual(first, third)

    def test_gaussian_counts_are_non_negative_integers(self):
        """The Gaussian model rounds and clamps at zero."""
        records = sample_counts([0.0001] * 200, 10, background=0.5, model=CountModel.GAUSSIAN, seed=1)
        for record in records:
            self.assertGreaterEqual(record.counts, 0)
            self.assertEqual(record.counts, int(record.counts))

    def test_invalid_probability(self):
        """Probabilities outside [0, 1] are rejected."""
        with self.assertRaises(DomainError):
            sample_counts([1.2], 100)

    def test_resample_keeps_zero(self):
        """A zero count resamples to zero."""
        rng = np.random.default_rng(0)
        self.assertEqual(resample([0, 0], CountModel.POISSON, rng).tolist(), [0, 0])


class IndistinguishabilityTestCase(SimpleTestCase):
    """Tests for the delay-dependent photon overlap."""

    def test_zero_delay(self):
        """Perfect overlap at zero delay."""
        self.assertEqual(indistinguishability_of_delay(0, 2.0), 1)

    def test_one_width(self):
        """One coherence width gives exp(-1/2)."""
        self.assertAlmostEqual(indistinguishability_of_delay(1.5, 1.5), np.exp(-0.5), places=12)
        self.assertAlmostEqual(indistinguishability_of_delay(1.5, 1.5), 0.6065, places=4)

    def test_symmetric_and_vanishing(self):
        """The overlap is even in the delay and vanishes far from zero."""
        self.assertEqual(indistinguishability_of_delay(-2.3, 1), indistinguishability_of_delay(2.3, 1))
        self.assertLess(indistinguishability_of_delay(50, 1), 1e-300)

    def test_invalid_sigma(self):
        """The coherence width must be positive."""
        with self.assertRaises(DomainError):
            indistinguishability_of_delay(0, 0)


class HomScanTestCase(SimpleTestCase):
    """Tests for HOM delay scans."""

    def test_ideal_dip_depth(self):
        """The ideal coupler dips to a fifth of the distinguishable level."""
        noise = NoiseModel()
        probabilities = hom_probabilities(noise, [0.0, 1.0, 1e3])
        self.assertAlmostEqual(probabilities[0] / probabilities[2], 0.2, places=12)
        self.assertAlmostEqual(probabilities[1] / probabilities[2], (5 - 4 * np.exp(-0.5)) / 5, places=12)
        self.assertAlmostEqual(probabilities[0], 1 / 9, places=12)

    def test_distinguishable_photons_are_flat(self):
        """With no overlap the scan is flat."""
        probabilities = hom_probabilities(NoiseModel(x=0), DELAYS)
        np.testing.assert_allclose(probabilities, 5 / 9, atol=1e-12)

    def test_balanced_coupler(self):
        """A 50/50 coupler gives a perfect dip."""
        probabilities = hom_probabilities(NoiseModel(cross_ratio=0.5), [0.0])
        self.assertAlmostEqual(probabilities[0], 0, places=12)

    def test_exact_counts_include_background(self):
        """Expected counts are p * shots + background."""
        noise = NoiseModel(shots=9000, background=10)
        records = hom_exact_counts(noise, [0.0])
        self.assertAlmostEqual(records[0].counts, 1010, places=9)
        self.assertEqual(records[0].delay, 0.0)

    def test_sampled_scan_is_seeded(self):
        """Sampled scans are reproducible."""
        noise = NoiseModel()
        first = [r.counts for r in hom_scan(noise, DELAYS, seed=5)]
        second = [r.counts for r in hom_scan(noise, DELAYS, seed=5)]
        self.assertEqual(first, second)


class FitHomTestCase(SimpleTestCase):
    """Tests for the Gaussian dip fit."""

    def test_ideal_visibility(self):
        """Noiseless ideal data gives V = 0.8."""
        fit = fit_hom(hom_exact_counts(NoiseModel(), DELAYS))
        self.assertAlmostEqual(fit.visibility, 0.8, places=6)
        self.assertAlmostEqual(fit.width, 1, places=6)
        self.assertAlmostEqual(fit.center, 0, places=6)
        self.assertAlmostEqual(fit.c_min / fit.c_max, 0.2, places=6)

    def test_parameter_recovery(self):
        """Data generated from the model gives back all four parameters."""
        truth = (3000.0, 0.6, 0.3, 1.5)
        fit = fit_hom(_records(DELAYS, dip_model(DELAYS, *truth)))
        recovered = (fit.amplitude, fit.visibility, fit.center, fit.width)
        np.testing.assert_allclose(recovered, truth, rtol=1e-6)

    def test_poisson_data(self):
        """Sampled dips with V = 0.82 are fitted within 0.03."""
        means = dip_model(DELAYS, 10_000, 0.82, 0, 1)
        visibilities = []
        for seed in range(50):
            counts = np.random.default_rng(seed).poisson(means)
            visibilities.append(fit_hom(_records(DELAYS, counts)).visibility)
        self.assertLess(abs(np.median(visibilities) - 0.82), 0.03)

    def test_flat_data(self):
        """Flat data fits to a visibility compatible with zero."""
        counts = np.random.default_rng(7).poisson(np.full(len(DELAYS), 5000))
        fit = fit_hom(_records(DELAYS, counts))
        self.assertLessEqual(fit.visibility, 2 * fit.stderr.visibility + 1e-6)

    def test_background_lowers_visibility(self):
        """Adding background reduces the fitted visibility."""
        noise = NoiseModel()
        visibilities = [
            fit_hom(hom_exact_counts(noise.replace(background=b), DELAYS)).visibility for b in (0, 50, 500, 2000)
        ]
        self.assertTrue(all(b < a for a, b in zip(visibilities, visibilities[1:], strict=False)))
        self.assertAlmostEqual(visibilities[1], 0.8 * (50_000 / 9) / (50_000 / 9 + 50), places=6)

    def test_too_few_delays(self):
        """At least five distinct delays are required."""
        with self.assertRaises(DomainError):
            fit_hom(hom_exact_counts(NoiseModel(), [0, 1, 2, 2]))


class MonteCarloTestCase(SimpleTestCase):
    """Tests for Monte Carlo error propagation."""

    def test_constant_estimator(self):
        """A constant estimator has zero spread."""
        result = monte_carlo(lambda counts: 1.0, [100, 200, 300], trials=10)
        self.assertEqual(result.std, 0)
        self.assertEqual(result.mean, 1)

    def test_poisson_spread(self):
        """A single count of 1e4 spreads by about 100."""
        result = monte_carlo(lambda counts: counts[0], [10_000], seed=11)
        self.assertEqual(len(result.values), DEFAULT_TRIALS)
        self.assertLess(abs(result.std - 100) / 100, 0.2)

    def test_gaussian_spread(self):
        """The Gaussian model gives the same spread."""
        result = monte_carlo(lambda counts: counts[0], [10_000], model=CountModel.GAUSSIAN, seed=12)
        self.assertLess(abs(result.std - 100) / 100, 0.2)

    def test_deterministic(self):
        """The same seed gives the same trials."""
        first = monte_carlo(lambda counts: counts.sum(), [10, 20, 30], seed=3)
        second = monte_carlo(lambda counts: counts.sum(), [10, 20, 30], seed=3)
        self.assertEqual(first.values, second.values)

    def test_failing_trial(self):
        """Estimator failures report the trial index."""

        def estimator(counts):
            raise ZeroDivisionError("boom")

        with self.assertRaises(MonteCarloTrialError) as context:
            monte_carlo(estimator, [5], trials=3)
        self.assertEqual(context.exception.trial, 0)

    def test_needs_two_trials(self):
        """A single trial has no spread."""
        with self.assertRaises(DomainError):
            monte_carlo(lambda counts: 0.0, [5], trials=1)

    def test_many_matches_single(self):
        """Named estimates share trials with the single-estimator form."""
        many = monte_carlo_many(lambda counts: {"a": counts[0], "b": 2 * counts[0]}, [400], trials=20, seed=9)
        single = monte_carlo(lambda counts: counts[0], [400], trials=20, seed=9)
        self.assertEqual(many["a"].values, single.values)
        self.assertAlmostEqual(many["b"].std, 2 * single.std, places=9)

    def test_refits_resampled_scan(self):
        """Resampled HOM scans can be refitted through the counts override."""
        records = hom_exact_counts(NoiseModel(), DELAYS)
        result = monte_carlo(lambda counts: fit_hom(records, counts=counts).visibility, records, trials=5, seed=1)
        self.assertLess(abs(result.mean - 0.8), 0.05)
