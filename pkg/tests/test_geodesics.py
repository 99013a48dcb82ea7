import math
import unittest

import numpy as np

from finsler import IntegratorConfig, load_structure, shipped_structure
from finsler.errors import ConfigError, ContractError, UnsupportedKindError
from finsler.geometry import arc_length, curve_length, energy, integrate, rk4_step, spray_flow_field


def _endpoint_error(path):
    x_end, _ = path.endpoint
    return float(np.max(np.abs(x_end - [math.tanh(1.0), 1.0 / math.cosh(1.0)])))


class TestFlow(unittest.TestCase):

    def setUp(self):
        self.poincare = shipped_structure("poincare")

    def test_spray_flow_field(self):
        np.testing.assert_allclose(spray_flow_field(self.poincare, [0.0, 1.0], [1.0, 0.0]), [1.0, 0.0, 0.0, -1.0],
                                   atol=1e-14)

    def test_rk4_step(self):
        h = 0.1
        state = rk4_step(lambda s: -s, np.array([1.0]), h)
        self.assertAlmostEqual(state[0], 1.0 - h + h ** 2 / 2 - h ** 3 / 6 + h ** 4 / 24, places=15)


class TestIntegrate(unittest.TestCase):

    def setUp(self):
        self.poincare = shipped_structure("poincare")
        self.euclidean = load_structure({"family": "euclidean", "dimension": 2})

    def test_half_plane_geodesic(self):
        path = integrate(self.poincare, [0.0, 1.0], [1.0, 0.0], 1.0, IntegratorConfig(steps=1000))
        self.assertLess(_endpoint_error(path), 1e-6)
        self.assertFalse(path.flagged)
        self.assertAlmostEqual(arc_length(path), 1.0, places=6)
        self.assertAlmostEqual(energy(path), 1.0, places=6)
        self.assertEqual(len(path.times), 1001)

    def test_euclidean_lines(self):
        path = integrate(self.euclidean, [0.0, 0.0], [1.0, 0.0], 1.0, IntegratorConfig(steps=100))
        x_end, y_end = path.endpoint
        np.testing.assert_allclose(x_end, [1.0, 0.0], atol=1e-12)
        np.testing.assert_allclose(y_end, [1.0, 0.0], atol=1e-12)
        path = integrate(self.euclidean, [0.0, 0.0], [3.0, 4.0], 1.0, IntegratorConfig(steps=100))
        self.assertAlmostEqual(arc_length(path), 5.0, places=10)

    def test_fourth_order_convergence(self):
        errors = [_endpoint_error(integrate(self.poincare, [0.0, 1.0], [1.0, 0.0], 1.0, IntegratorConfig(steps=n)))
                  for n in (10, 20, 40)]
        self.assertGreaterEqual(errors[0] / errors[1], 8.0)
        self.assertGreaterEqual(errors[1] / errors[2], 8.0)

    def test_reversible(self):
        cfg = IntegratorConfig(steps=400)
        forward = integrate(self.poincare, [0.0, 1.0], [0.6, 0.8], 1.0, cfg)
        x_end, y_end = forward.endpoint
        back = integrate(self.poincare, x_end, -y_end, 1.0, cfg)
        np.testing.assert_allclose(back.endpoint[0], [0.0, 1.0], atol=1e-8)

    def test_geodesic_is_shorter_than_the_chord(self):
        path = integrate(self.poincare, [0.0, 1.0], [1.0, 0.0], 1.0, IntegratorConfig(steps=200))
        start, end = np.array([0.0, 1.0]), path.endpoint[0]
        times = np.linspace(0.0, 1.0, 201)
        points = start + np.outer(times, end - start)
        velocities = np.tile(end - start, (len(times), 1))
        self.assertGreater(curve_length(self.poincare, points, velocities, times), 1.0)

    def test_truncation(self):
        # the vertical geodesic has |y| = exp(-t), it runs into the slit guard long before t = 40
        path = integrate(self.poincare, [0.0, 1.0], [0.0, -1.0], 40.0)
        self.assertTrue(path.truncated)
        self.assertTrue(path.flagged)
        self.assertIn("Left the domain", path.message)
        self.assertLess(path.times[-1], 40.0)
        self.assertEqual(len(path.times), len(path.values))

    def test_drift_flag(self):
        path = integrate(self.poincare, [0.0, 1.0], [1.0, 0.0], 1.0, IntegratorConfig(steps=3, drift_tolerance=1e-15))
        self.assertTrue(path.drift_exceeded)
        self.assertGreater(path.drift, 1e-15)

    def test_alternating_has_no_arc_length(self):
        path = integrate(shipped_structure("minkowski"), [0, 0, 0, 0], [1.0, 0.5, 0.0, 0.0], 1.0,
                         IntegratorConfig(steps=10))
        self.assertFalse(path.positive)
        with self.assertRaises(UnsupportedKindError):
            arc_length(path)
        self.assertAlmostEqual(energy(path), 0.75)

    def test_rows(self):
        path = integrate(self.poincare, [0.0, 1.0], [1.0, 0.0], 0.5, IntegratorConfig(steps=5))
        self.assertEqual(path.header(), ["t", "x0", "x1", "y0", "y1", "F"])
        self.assertEqual(path.to_rows().shape, (6, 6))
        self.assertEqual(path.to_rows()[0].tolist(), [0.0, 0.0, 1.0, 1.0, 0.0, 1.0])

    def test_contracts(self):
        with self.assertRaises(ContractError):
            integrate(self.poincare, [0.0, 1.0], [1.0, 0.0], 0.0)
        with self.assertRaises(ConfigError):
            IntegratorConfig(steps=0)
        with self.assertRaises(ConfigError):
            IntegratorConfig(scheme="euler")


if __name__ == '__main__':
    unittest.main()
