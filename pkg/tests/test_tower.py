import math
import unittest

import numpy as np

import finsler.utils
from finsler import tower
from finsler.errors import ContractError, DegeneracyError, DomainError, StepUnderflowError
from finsler.tower import Jet, derive, fd_oracle, linalg, taylor_compose


def _polynomial(v):
    x, y = v
    return x * x * y + 3.0 * y ** 3 - 2.0 * x


def _transcendental(v):
    x, y = v
    return tower.sin(x) * tower.exp(y) + tower.sqrt(x * x + y * y + 1.0)


class TestJetArithmetic(unittest.TestCase):

    def setUp(self):
        self.x = Jet.variable(2.0, 0, 2, 3)
        self.y = Jet.variable(-1.0, 1, 2, 3)

    def test_variable(self):
        self.assertEqual(self.x.value, 2.0)
        self.assertEqual(self.x.order, 3)
        self.assertEqual(self.x.dim, 2)
        np.testing.assert_array_equal(self.x.tensor(1), [1.0, 0.0])
        np.testing.assert_array_equal(self.x.tensor(2), np.zeros((2, 2)))

    def test_product_rule(self):
        p = self.x * self.x * self.y
        self.assertEqual(p.value, -4.0)
        np.testing.assert_allclose(p.tensor(1), [2 * 2.0 * -1.0, 4.0])
        np.testing.assert_allclose(p.tensor(2), [[-2.0, 4.0], [4.0, 0.0]])
        third = p.tensor(3)
        self.assertAlmostEqual(third[0, 0, 1], 2.0)
        self.assertAlmostEqual(third[1, 0, 0], 2.0)
        self.assertAlmostEqual(third[0, 0, 0], 0.0)

    def test_mixed_with_floats(self):
        a = 3.0 - self.x
        self.assertEqual(a.value, 1.0)
        np.testing.assert_array_equal(a.tensor(1), [-1.0, 0.0])
        b = 1.0 / self.x
        self.assertAlmostEqual(b.value, 0.5)
        self.assertAlmostEqual(b.tensor(1)[0], -0.25)
        self.assertAlmostEqual(b.tensor(2)[0, 0], 0.25)

    def test_numpy_scalar_on_the_left(self):
        r = np.float64(2.0) * self.x
        self.assertIsInstance(r, Jet)
        self.assertEqual(r.value, 4.0)

    def test_truncation_to_lower_order(self):
        low = Jet.variable(1.0, 0, 2, 1)
        s = low + self.x
        self.assertEqual(s.order, 1)
        self.assertEqual(self.x.truncate(0), 2.0)
        self.assertEqual(self.x.truncate(2).order, 2)

    def test_partial(self):
        p = self.x * self.x * self.y
        dx = p.partial(0)
        self.assertEqual(dx.order, 2)
        self.assertAlmostEqual(dx.value, -4.0)
        np.testing.assert_allclose(dx.tensor(1), [-2.0, 4.0])

    def test_tensor_is_symmetric(self):
        t = _transcendental([self.x, self.y]).tensor(3)
        for axes in ((1, 0, 2), (0, 2, 1), (2, 1, 0)):
            np.testing.assert_array_equal(t, t.transpose(axes))

    def test_contracts(self):
        with self.assertRaises(ContractError):
            Jet.variable(1.0, 0, 2, 5)
        with self.assertRaises(ContractError):
            Jet.variable(1.0, 2, 2, 1)
        with self.assertRaises(ContractError):
            self.x + Jet.variable(1.0, 0, 3, 1)
        with self.assertRaises(ContractError):
            self.x.tensor(4)

    def test_division_by_zero(self):
        with self.assertRaises(DomainError):
            self.x / 0.0
        with self.assertRaises(DomainError):
            1.0 / (self.x - 2.0)
        with self.assertRaises(DomainError):
            tower.divide(1.0, 0.0)


class TestElementaryFunctions(unittest.TestCase):

    def setUp(self):
        self.t = Jet.variable(0.3, 0, 1, 4)

    def test_floats_pass_through(self):
        self.assertAlmostEqual(tower.sqrt(4.0), 2.0)
        self.assertAlmostEqual(tower.exp(0.0), 1.0)
        self.assertAlmostEqual(tower.log(math.e), 1.0)
        self.assertAlmostEqual(tower.tanh(0.0), 0.0)
        self.assertEqual(tower.absolute(-2.5), 2.5)

    def test_derivatives(self):
        cases = [
            (tower.sin, [math.sin(0.3), math.cos(0.3), -math.sin(0.3), -math.cos(0.3), math.sin(0.3)]),
            (tower.exp, [math.exp(0.3)] * 5),
            (tower.log, [math.log(0.3), 1 / 0.3, -1 / 0.09, 2 / 0.027, -6 / 0.0081]),
        ]
        for function, expected in cases:
            jet = function(self.t)
            for k in range(5):
                self.assertAlmostEqual(float(np.ravel(jet.tensor(k))[0]) if k else jet.value, expected[k], places=6)

    def test_match_oracle_on_seeded_points(self):
        cases = [
            (tower.sqrt, 0.2, 3.0), (tower.exp, -2.0, 2.0), (tower.log, 0.2, 3.0), (tower.sin, -3.0, 3.0),
            (tower.cos, -3.0, 3.0), (tower.tanh, -2.0, 2.0), (tower.absolute, -3.0, -0.2),
            (lambda t: tower.power(t, 2.5), 0.2, 3.0),
        ]
        for function, low, high in cases:
            sampler = finsler.utils.Sampler(count=100, seed=7, low=low, high=high)
            for index, at, _ in sampler.samples(1):
                exact = derive(lambda v: function(v[0]), at, [0], 2)
                for order in (1, 2):
                    estimate = fd_oracle(lambda v: function(v[0]), at, [0], order)
                    np.testing.assert_allclose(exact[order], estimate, rtol=1e-5, atol=1e-6,
                                               err_msg="sample {0} at {1}".format(index, at))

    def test_tanh_second_derivative(self):
        estimate = fd_oracle(lambda v: math.tanh(v[0]), [0.3], [0], 2)
        self.assertAlmostEqual(tower.tanh(self.t).tensor(2)[0, 0], estimate[0, 0], places=6)

    def test_power(self):
        p = tower.power(self.t, 2.5)
        self.assertAlmostEqual(p.value, 0.3 ** 2.5)
        self.assertAlmostEqual(p.tensor(1)[0], 2.5 * 0.3 ** 1.5)
        self.assertAlmostEqual(tower.power(-2.0, 3), -8.0)

    def test_domain_errors(self):
        with self.assertRaises(DomainError):
            tower.sqrt(-1.0)
        with self.assertRaises(DomainError):
            tower.log(0.0)
        with self.assertRaises(DomainError):
            tower.power(-1.0, 0.5)
        with self.assertRaises(DomainError):
            tower.absolute(Jet.variable(0.0, 0, 1, 1))
        with self.assertRaises(DomainError):
            tower.sqrt(Jet.variable(0.0, 0, 1, 1))
        with self.assertRaises(DomainError):
            tower.exp(1000.0)

    def test_domain_error_position(self):
        try:
            tower.log(-1.0)
        except DomainError as e:
            self.assertEqual(e.position, "log")


class TestDerive(unittest.TestCase):

    def setUp(self):
        self.at = [0.7, -0.4]

    def test_polynomial_is_exact(self):
        value, d1, d2, d3 = derive(_polynomial, self.at, [0, 1], 3)
        x, y = self.at
        self.assertAlmostEqual(value, x * x * y + 3 * y ** 3 - 2 * x)
        np.testing.assert_allclose(d1, [2 * x * y - 2, x * x + 9 * y * y])
        np.testing.assert_allclose(d2, [[2 * y, 2 * x], [2 * x, 18 * y]])
        self.assertAlmostEqual(d3[1, 1, 1], 18.0)
        self.assertAlmostEqual(d3[0, 0, 1], 2.0)

    def test_matches_oracle(self):
        for order in (1, 2, 3):
            exact = derive(_transcendental, self.at, [0, 1], order)[order]
            estimate = fd_oracle(lambda v: _transcendental(v), self.at, [0, 1], order)
            np.testing.assert_allclose(exact, estimate, atol=1e-5)

    def test_worked_examples(self):
        value, d1, d2 = derive(lambda v: v[0] * v[0], [3.0], [0], 2)
        self.assertEqual((value, d1[0], d2[0, 0]), (9.0, 6.0, 2.0))
        _, d1, d2, d3 = derive(lambda v: tower.sin(v[0]), [0.0], [0], 3)
        self.assertAlmostEqual(d1[0], 1.0, places=15)
        self.assertAlmostEqual(d2[0, 0], 0.0, places=15)
        self.assertAlmostEqual(d3[0, 0, 0], -1.0, places=15)
        randers = lambda v: (tower.sqrt(v[0] * v[0] + v[1] * v[1]) + 0.3 * v[0]) ** 2
        exact = derive(randers, [1.0, 1.0], [0, 1], 2)[2]
        np.testing.assert_allclose(exact, fd_oracle(randers, [1.0, 1.0], [0, 1], 2), rtol=1e-6)

    def test_oracle_examples(self):
        self.assertAlmostEqual(fd_oracle(lambda v: v[0] ** 3, [2.0], [0], 1, step=1e-3)[0], 12.0, delta=1e-8)
        self.assertAlmostEqual(fd_oracle(lambda v: math.exp(v[0]), [1.0], [0], 2, step=1e-3)[0, 0], math.e,
                               delta=1e-7)

    def test_compositions_match_oracle_on_seeded_points(self):
        for index, at, _ in finsler.utils.Sampler(count=100, seed=11).samples(2):
            exact = derive(_transcendental, at, [0, 1], 2)
            for order in (1, 2):
                np.testing.assert_allclose(exact[order], fd_oracle(_transcendental, at, [0, 1], order), rtol=1e-5,
                                           atol=1e-6, err_msg="sample {0}".format(index))

    def test_linearity(self):
        a, b = 2.5, -0.75
        combined = lambda v: a * _polynomial(v) + b * _transcendental(v)
        for _, at, _ in finsler.utils.Sampler(count=100, seed=3).samples(2):
            left = derive(combined, at, [0, 1], 3)
            first, second = derive(_polynomial, at, [0, 1], 3), derive(_transcendental, at, [0, 1], 3)
            for k in range(4):
                np.testing.assert_allclose(left[k], a * np.asarray(first[k]) + b * np.asarray(second[k]), rtol=1e-12,
                                           atol=1e-12)

    def test_subset_of_slots(self):
        _, d1 = derive(_polynomial, self.at, [1], 1)
        self.assertEqual(d1.shape, (1,))
        self.assertAlmostEqual(d1[0], 0.7 ** 2 + 9 * 0.16)

    def test_constant_function(self):
        value, d1, d2 = derive(lambda v: 5.0, self.at, [0, 1], 2)
        self.assertEqual(value, 5.0)
        np.testing.assert_array_equal(d2, np.zeros((2, 2)))

    def test_requests_are_checked(self):
        with self.assertRaises(ContractError):
            derive(_polynomial, self.at, [0, 1], 4)
        with self.assertRaises(ContractError):
            derive(_polynomial, self.at, [0, 0], 1)
        with self.assertRaises(ContractError):
            derive(_polynomial, self.at, [2], 1)
        with self.assertRaises(ContractError):
            derive(_polynomial, self.at, [], 1)

    def test_step_underflow(self):
        with self.assertRaises(StepUnderflowError):
            fd_oracle(_polynomial, [1e20, 0.0], [0], 1, step=1e-3)

    def test_taylor_compose(self):
        value, d1, d2 = derive(_polynomial, self.at, [0, 1], 2)
        shifted = taylor_compose(value, [d1, d2], [0.0, 0.0])
        self.assertAlmostEqual(shifted, value)
        # the polynomial is cubic, second order Taylor data is off by the cubic term only
        h = [1e-3, -2e-3]
        approx = taylor_compose(value, [d1, d2], h)
        exact = _polynomial([self.at[0] + h[0], self.at[1] + h[1]])
        self.assertAlmostEqual(approx, exact, places=7)


class TestLinalg(unittest.TestCase):

    def setUp(self):
        self.a = np.array([[2.0, 1.0], [1.0, 3.0]])

    def test_float_path(self):
        np.testing.assert_allclose(linalg.solve(self.a, [3.0, 4.0]), [1.0, 1.0])
        self.assertAlmostEqual(linalg.det(self.a), 5.0)
        np.testing.assert_allclose(linalg.inverse(self.a).dot(self.a), np.eye(2), atol=1e-15)

    def test_jet_path(self):
        t = Jet.variable(1.0, 0, 1, 2)
        a = np.array([[2.0 * t, 1.0], [1.0, 3.0]], dtype=object)
        d = linalg.det(a)
        self.assertAlmostEqual(d.value, 5.0)
        self.assertAlmostEqual(d.tensor(1)[0], 6.0)
        inv = linalg.inverse(a)
        self.assertAlmostEqual(inv[0, 0].value, 3.0 / 5.0)
        # d/dt 3 / (6t - 1) = -18 / 25 at t = 1
        self.assertAlmostEqual(inv[0, 0].tensor(1)[0], -18.0 / 25.0)
        np.testing.assert_allclose(linalg.values(inv), np.linalg.inv([[2.0, 1.0], [1.0, 3.0]]))

    def test_singular(self):
        with self.assertRaises(DegeneracyError):
            linalg.solve([[1.0, 2.0], [2.0, 4.0]], [1.0, 1.0])
        t = Jet.variable(1.0, 0, 1, 1)
        with self.assertRaises(DegeneracyError):
            linalg.inverse(np.array([[t, t], [t, t]], dtype=object))

    def test_not_square(self):
        t = Jet.variable(1.0, 0, 1, 1)
        with self.assertRaises(ContractError):
            linalg.det(np.array([[t, 1.0, 2.0], [1.0, 2.0, 3.0]], dtype=object))


if __name__ == '__main__':
    unittest.main()
