import unittest

import numpy as np

import finsler.utils
from finsler import ConnectionType, DerivativeKind, IndexType, Status, load_structure, shipped_structure
from finsler.errors import ContractError
from finsler.geometry import (
    TensorField, berwald_coeffs, berwald_geodesic_residual, cartan_coeffs, cartan_coeffs_delta_form,
    connection_sample, covariant_derivative, delta_dual, fundamental_field, horizontal_derivative, metric_field,
    nonlinear, spray, verify_connections,
)


class TestPointwise(unittest.TestCase):

    def setUp(self):
        self.poincare = shipped_structure("poincare")
        self.randers = shipped_structure("randers")
        self.x = [0.0, 1.0]
        self.y = [1.0, 0.0]

    def test_spray(self):
        np.testing.assert_allclose(spray(self.poincare, self.x, self.y), [0.0, 0.5], atol=1e-14)
        np.testing.assert_allclose(spray(shipped_structure("euclidean"), [1, 2, 3], [1.0, 0.0, 0.0]), np.zeros(3))

    def test_spray_homogeneity(self):
        x, y = [0.3, -0.2], np.array([0.7, 0.4])
        np.testing.assert_allclose(spray(self.randers, x, 3.0 * y), 9.0 * spray(self.randers, x, y), rtol=1e-12)

    def test_nonlinear(self):
        np.testing.assert_allclose(nonlinear(self.poincare, self.x, self.y), [[0.0, -1.0], [1.0, 0.0]], atol=1e-13)

    def test_flat_berwald(self):
        np.testing.assert_array_equal(berwald_coeffs(shipped_structure("minkowski"), [0, 0, 0, 0],
                                                     [1.0, 0.1, 0.2, 0.0]), np.zeros((4, 4, 4)))

    def test_cartan_coefficients(self):
        cartan_h, cartan_v = cartan_coeffs(self.randers, [0.3, -0.2], [0.7, 0.4])
        self.assertEqual(cartan_h.shape, (2, 2, 2))
        np.testing.assert_allclose(cartan_h, cartan_h.transpose(0, 2, 1), atol=1e-12)
        np.testing.assert_allclose(cartan_v, cartan_v.transpose(0, 2, 1), atol=1e-12)
        np.testing.assert_allclose(cartan_coeffs_delta_form(self.randers, [0.3, -0.2], [0.7, 0.4]), cartan_h,
                                   atol=1e-9)
        np.testing.assert_allclose(cartan_h.dot([0.7, 0.4]), nonlinear(self.randers, [0.3, -0.2], [0.7, 0.4]),
                                   atol=1e-9)

    def test_berwald_geodesic_residual(self):
        self.assertLess(berwald_geodesic_residual(self.randers, [0.3, -0.2], [0.7, 0.4]), 1e-10)

    def test_delta_dual(self):
        np.testing.assert_allclose(delta_dual(self.poincare, self.x, self.y, [1.0, 0.0], [0.0, 0.0]), [0.0, 1.0],
                                   atol=1e-13)
        np.testing.assert_allclose(delta_dual(self.poincare, self.x, self.y, [0.0, 0.0], [2.0, 3.0]), [2.0, 3.0])
        with self.assertRaises(ContractError):
            delta_dual(self.poincare, self.x, self.y, [1.0], [0.0, 0.0])

    def test_connection_sample(self):
        sample = connection_sample(self.poincare, self.x, self.y)
        self.assertEqual(sorted(sample.to_dict()), [
            "berwald", "cartan_h", "cartan_v", "christoffel", "nonlinear", "spray", "x", "y"])
        np.testing.assert_allclose(sample.berwald, sample.christoffel, atol=1e-12)


class TestHorizontalDerivative(unittest.TestCase):

    def setUp(self):
        self.poincare = shipped_structure("poincare")
        self.x = [0.0, 1.0]
        self.y = [1.0, 0.0]

    def test_fundamental_is_horizontally_constant(self):
        randers = shipped_structure("randers")
        for i in range(2):
            self.assertAlmostEqual(horizontal_derivative(randers, fundamental_field(), [0.3, -0.2], [0.7, 0.4], i),
                                   0.0, places=9)

    def test_callable(self):
        self.assertAlmostEqual(horizontal_derivative(self.poincare, lambda X, Y: X[1], self.x, self.y, 1), 1.0)
        # delta_1 y^0 = -N^0_1
        self.assertAlmostEqual(horizontal_derivative(self.poincare, lambda X, Y: Y[0], self.x, self.y, 1), 1.0)
        result = horizontal_derivative(self.poincare, lambda X, Y: [X[1], Y[0]], self.x, self.y, 1)
        np.testing.assert_allclose(result, [1.0, 1.0], atol=1e-13)

    def test_bad_slot(self):
        with self.assertRaises(ContractError):
            horizontal_derivative(self.poincare, fundamental_field(), self.x, self.y, 2)


class TestCovariantDerivative(unittest.TestCase):

    def setUp(self):
        self.randers = shipped_structure("randers")
        self.x = [0.3, -0.2]
        self.y = [0.7, 0.4]
        self.liouville = TensorField.from_callable(lambda X, Y: list(Y), (IndexType.UPPER,))

    def test_metric_compatibility(self):
        for kind in (DerivativeKind.HORIZONTAL, DerivativeKind.VERTICAL):
            result = covariant_derivative(self.randers, metric_field(), self.x, self.y, None, kind=kind)
            self.assertEqual(result.shape, (2, 2, 2))
            np.testing.assert_allclose(result, np.zeros((2, 2, 2)), atol=1e-8)

    def test_berwald_vertical_derivative_of_metric(self):
        result = covariant_derivative(self.randers, metric_field(), self.x, self.y, 0, kind=DerivativeKind.VERTICAL,
                                      connection=ConnectionType.BERWALD)
        self.assertGreater(np.max(np.abs(result)), 1e-3)

    def test_berwald_horizontal_derivative_of_metric(self):
        tolerance = finsler.utils.load_config()["tolerances"]["inverse"]
        result = covariant_derivative(self.randers, metric_field(), self.x, self.y, None,
                                      kind=DerivativeKind.HORIZONTAL, connection=ConnectionType.BERWALD)
        self.assertEqual(result.shape, (2, 2, 2))
        self.assertGreater(np.max(np.abs(result)), tolerance)
        constant = covariant_derivative(shipped_structure("randers-constant"), metric_field(), self.x, self.y, None,
                                        kind=DerivativeKind.HORIZONTAL, connection=ConnectionType.BERWALD)
        np.testing.assert_allclose(constant, np.zeros((2, 2, 2)), atol=tolerance)

    def test_liouville_field(self):
        horizontal = covariant_derivative(self.randers, self.liouville, self.x, self.y, None)
        np.testing.assert_allclose(horizontal, np.zeros((2, 2)), atol=1e-8)
        vertical = covariant_derivative(self.randers, self.liouville, self.x, self.y, None,
                                        kind=DerivativeKind.VERTICAL)
        np.testing.assert_allclose(vertical, np.eye(2), atol=1e-12)
        self.assertEqual(covariant_derivative(self.randers, self.liouville, self.x, self.y, 1).shape, (2,))

    def test_contracts(self):
        with self.assertRaises(ContractError):
            TensorField(lambda local: None, (IndexType.LOWER,) * 3)
        with self.assertRaises(ContractError):
            TensorField(lambda local: None, ("lower",))
        with self.assertRaises(ContractError):
            covariant_derivative(self.randers, lambda X, Y: X[0], self.x, self.y, 0)
        with self.assertRaises(ContractError):
            covariant_derivative(self.randers, TensorField(lambda local: [1.0], (IndexType.LOWER,)),
                                 self.x, self.y, 0)
        with self.assertRaises(ContractError):
            covariant_derivative(self.randers, metric_field(), self.x, self.y, 5)
        with self.assertRaises(ContractError):
            covariant_derivative(self.randers, metric_field(), self.x, self.y, 0, kind=DerivativeKind.UNKNOWN)


class TestVerifyConnections(unittest.TestCase):

    def setUp(self):
        self.config = finsler.utils.load_config()
        self.config["sampler"]["count"] = 6

    def test_shipped_structures_pass(self):
        for name in ("euclidean", "poincare", "randers", "randers-constant", "minkowski", "perturbed-minkowski"):
            report = verify_connections(shipped_structure(name, config=self.config))
            failed = [(c.name, c.residual) for c in report.checks if c.failed]
            self.assertEqual(failed, [], name)
            self.assertTrue(all(c.samples > 0 for c in report.checks), name)

    def test_perturbed_checks(self):
        report = verify_connections(shipped_structure("perturbed-minkowski", config=self.config))
        self.assertEqual(sorted(c.name for c in report.checks), [
            "berwald_contraction_nonlinear", "berwald_contraction_spray", "berwald_metric_defect",
            "cartan_contraction_nonlinear", "cartan_delta_form", "horizontal_constancy", "lower_symmetry",
            "metric_compatibility_horizontal", "metric_compatibility_vertical", "nonlinear_closed_form",
            "spray_homogeneity"])
        self.assertTrue(report.passed)

    def test_riemannian_reduction(self):
        report = verify_connections(shipped_structure("poincare", config=self.config))
        self.assertEqual(report.check("riemannian_reduction").status, Status.PASS)
        self.assertEqual(report.check("vertical_flatness").status, Status.PASS)
        self.assertEqual(report.check("berwald_metric_defect").status, Status.REPORT)

    def test_finsler_structure_has_no_reduction_check(self):
        report = verify_connections(shipped_structure("randers", config=self.config))
        with self.assertRaises(KeyError):
            report.check("riemannian_reduction")
        defect = report.check("berwald_metric_defect")
        self.assertEqual(defect.status, Status.REPORT)
        self.assertGreater(defect.residual, self.config["tolerances"]["inverse"])

    def test_all_samples_skipped_fails(self):
        spec = {"expression": "(y0^2 + y1^2)*sqrt(x0 - 0.5)", "dimension": 2,
                "sampler": {"low": [-1.0, -1.0], "high": [0.4, 1.0]}}
        report = verify_connections(load_structure(spec, config=self.config))
        self.assertFalse(report.passed)
        self.assertEqual(report.check("spray_homogeneity").status, Status.FAIL)
        self.assertEqual(report.check("spray_homogeneity").samples, 0)
        self.assertEqual(len(report.check("spray_homogeneity").skipped), 6)


if __name__ == '__main__':
    unittest.main()
