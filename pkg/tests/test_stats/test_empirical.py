import math
import unittest

import numpy as np

from src.roughbilliards.errors import Empty
from src.roughbilliards.stats import (
    EmpiricalDist,
    binomial_band,
    from_samples,
    kolmogorov_quantile,
    ks_band,
    ks_distance,
    sine_cdf,
)


class EmpiricalDistTest(unittest.TestCase):
    def test_sorted_and_counts(self):
        dist = EmpiricalDist(np.array([3.0, 1.0, 2.0]), excluded_count=1, seed=4)
        np.testing.assert_array_equal(dist.samples, [1.0, 2.0, 3.0])
        self.assertEqual(dist.total, 4)
        self.assertAlmostEqual(dist.excluded_fraction, 0.25)
        np.testing.assert_allclose(dist.cdf([0.5, 2.0, 5.0]), [0.0, 2 / 3, 1.0])

    def test_mass_near_and_clusters(self):
        dist = from_samples([0.5, 0.5 + 1e-12, 2.0, 2.0, 2.0 + 1e-12])
        self.assertAlmostEqual(dist.mass_near(2.0), 0.6)
        clusters = dist.clusters(gap=1e-9)
        self.assertEqual(len(clusters), 2)
        self.assertAlmostEqual(clusters[0][0], 0.5)
        self.assertAlmostEqual(clusters[1][2], 0.6)
        self.assertLess(clusters[1][1], 1e-11)

    def test_merge_is_order_free(self):
        a = from_samples([1.0, 3.0], excluded_count=1, seed=2)
        b = from_samples([2.0], seed=2)
        ab, ba = a.merge(b), b.merge(a)
        np.testing.assert_array_equal(ab.samples, ba.samples)
        self.assertEqual((ab.excluded_count, ab.seed), (1, 2))
        self.assertIsNone(a.merge(from_samples([0.0], seed=5)).seed)

    def test_empty(self):
        empty = EmpiricalDist()
        with self.assertRaises(Empty):
            empty.mass_near(1.0)
        with self.assertRaises(Empty):
            ks_distance(empty, sine_cdf)
        with self.assertRaises(Empty):
            ks_band(0)
        with self.assertRaises(ValueError):
            EmpiricalDist(np.ones(2), excluded_count=-1)


class KolmogorovSmirnovTest(unittest.TestCase):
    def test_quantile_at_three_sigma(self):
        self.assertAlmostEqual(kolmogorov_quantile(), 1.80, delta=0.01)
        self.assertAlmostEqual(ks_band(100), kolmogorov_quantile() / 10)
        self.assertAlmostEqual(ks_band(100, 100), kolmogorov_quantile() * math.sqrt(0.02))

    def test_sine_samples_pass(self):
        theta = np.arccos(1.0 - 2.0 * np.random.default_rng(0).uniform(size=5000))
        self.assertLess(ks_distance(from_samples(theta), sine_cdf), ks_band(5000))

    def test_halved_samples_fail(self):
        theta = np.arccos(1.0 - 2.0 * np.random.default_rng(0).uniform(size=5000)) / 2
        self.assertGreater(ks_distance(from_samples(theta), sine_cdf), ks_band(5000))

    def test_two_sample(self):
        rng = np.random.default_rng(1)
        a, b = from_samples(rng.normal(size=500)), from_samples(rng.normal(size=500))
        self.assertLess(ks_distance(a, b), ks_band(500, 500))
        self.assertEqual(ks_distance(a, a), 0.0)

    def test_sine_cdf(self):
        np.testing.assert_allclose(sine_cdf(np.array([-1.0, 0.0, math.pi / 2, math.pi, 4.0])), [0, 0, 0.5, 1, 1])

    def test_binomial_band(self):
        self.assertAlmostEqual(binomial_band(0.5, 100), 0.15)
        self.assertEqual(binomial_band(1.0, 10), 0.0)
