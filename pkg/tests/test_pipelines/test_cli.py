import csv
import json
import math
import os
import tempfile
import unittest

from src.roughbilliards.cli import EXIT_OK, EXIT_RUNTIME, EXIT_USAGE, normalize_flags, run
from src.roughbilliards.kernels import rect_specular_prob


def read_csv(path):
    with open(path, encoding='utf-8') as f:
        lines = f.read().splitlines()
    meta = [line for line in lines if line.startswith('# ')]
    rows = list(csv.DictReader(line for line in lines if not line.startswith('# ')))
    return meta, rows


class NormalizeFlagsTest(unittest.TestCase):
    def test_dashes(self):
        self.assertEqual(
            normalize_flags(['--theta-grid', '4', '--eps-list=0.1', '-1.5', 'a-b']),
            ['--theta_grid', '4', '--eps_list=0.1', '-1.5', 'a-b'],
        )


class CliTest(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.output = os.path.join(self.tmp.name, 'out')

    def tearDown(self):
        self.tmp.cleanup()

    def test_kernel_rect_table(self):
        code = run(['kernel', '--family', 'rect', '--r', '0.3', '--theta-grid', '4', '--output', self.output])
        self.assertEqual(code, EXIT_OK)
        meta, rows = read_csv(self.output)
        self.assertEqual(len(meta), 3)
        self.assertEqual(len(rows), 8)
        for row in rows:
            theta, angle, prob = float(row['theta']), float(row['atom_angle']), float(row['atom_prob'])
            p = rect_specular_prob(theta, 0.3)
            expected = p if abs(angle - (math.pi - theta)) < 1e-12 else 1.0 - p
            self.assertAlmostEqual(prob, expected, places=12)

    def test_kernel_output_is_reproducible(self):
        other = os.path.join(self.tmp.name, 'again')
        argv = ['kernel', '--family', 'lambertian', '--theta-grid', '2', '--samples', '5', '--seed', '3']
        self.assertEqual(run(argv + ['--output', self.output]), EXIT_OK)
        self.assertEqual(run(argv + ['--output', other]), EXIT_OK)
        with open(self.output) as a, open(other) as b:
            self.assertEqual(a.read(), b.read())
        _, rows = read_csv(self.output)
        self.assertEqual(len(rows), 10)

    def test_reflect_flat(self):
        argv = ['reflect', '--family', 'flat', '--theta', '1.0', '--samples', '10', '--seed', '1']
        self.assertEqual(run(argv + ['--output', self.output]), EXIT_OK)
        _, rows = read_csv(self.output)
        self.assertEqual(len(rows), 10)
        for row in rows:
            self.assertEqual(row['status'], 'returned')
            self.assertAlmostEqual(float(row['theta_out']), math.pi - 1.0, places=12)

    def test_wall_json(self):
        argv = ['wall', '--family', 'rect_teeth', '--params', 'r=0.3', '--format', 'json', '--output', self.output]
        self.assertEqual(run(argv), EXIT_OK)
        with open(self.output) as f:
            payload = json.load(f)
        self.assertEqual(set(payload), {'meta', 'rows', 'wall'})
        self.assertEqual(payload['wall']['family'], 'rect_teeth')
        self.assertIsNone(payload['meta']['seed'])
        self.assertTrue(all(set(row) == {'x', 'y'} for row in payload['rows']))

    def test_knudsen_capped_runs(self):
        argv = ['knudsen', '--kernel', 'specular', '--L', '100', '--runs', '3', '--theta0', '1.0']
        argv += ['--max-bounces', '5', '--seed', '0', '--output', self.output]
        self.assertEqual(run(argv), EXIT_OK)
        _, rows = read_csv(self.output)
        self.assertEqual([row['side'] for row in rows], ['capped'] * 3)
        self.assertTrue(all(row['time'] == 'nan' for row in rows))

    def test_usage_errors(self):
        self.assertEqual(run([]), EXIT_USAGE)
        self.assertEqual(run(['bounce']), EXIT_USAGE)
        self.assertEqual(run(['reflect', '--family', 'flat', '--samples', '2']), EXIT_USAGE)
        self.assertEqual(run(['kernel', '--no-such-flag', '1']), EXIT_USAGE)
        self.assertEqual(run(['kernel', '--theta-grid', '0']), EXIT_USAGE)
        self.assertEqual(run(['kernel', '--family', 'bogus', '--output', self.output]), EXIT_USAGE)
        self.assertEqual(run(['wall', '--family', 'rect', '--params', 'r:1']), EXIT_USAGE)

    def test_runtime_error(self):
        argv = ['kernel', '--family', 'rect', '--r', '0', '--output', self.output]
        self.assertEqual(run(argv), EXIT_RUNTIME)
        missing = os.path.join(self.tmp.name, 'missing.json')
        self.assertEqual(run(['wall', '--wall', missing, '--output', self.output]), EXIT_RUNTIME)

    def test_runtime_value_error(self):
        argv = ['reflect', '--family', 'flat', '--theta', '1.0', '--samples', '2', '--seed', '1']
        self.assertEqual(run(argv + ['--max-bounces', '0', '--output', self.output]), EXIT_RUNTIME)

    def test_collide_rows(self):
        argv = ['collide', '--family', 'rect_teeth', '--params', 'r=1.0', '--eps', '0.1', '--samples', '4']
        argv += ['--seed', '2', '--output', self.output]
        self.assertEqual(run(argv), EXIT_OK)
        meta, rows = read_csv(self.output)
        self.assertEqual(meta[0], '# seed=2')
        self.assertEqual(len(rows), 4)
        for row in rows:
            self.assertIn(row['status'], ('returned', 'singular', 'capped'))
            self.assertAlmostEqual(float(row['theta']), math.pi / 3, places=9)

    def test_converge_json(self):
        argv = ['converge', '--family', 'rect_teeth', '--params', 'r=1.0', '--eps-list', '0.1', '--samples', '20']
        argv += ['--seed', '5', '--output', self.output]
        self.assertEqual(run(argv), EXIT_OK)
        with open(self.output) as f:
            payload = json.load(f)
        self.assertEqual(payload['meta']['seed'], 5)
        self.assertEqual(len(payload['rungs']), 1)
        self.assertEqual(payload['rungs'][0]['eps'], 0.1)
        self.assertEqual(len(payload['tests']), 1)
