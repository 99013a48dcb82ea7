import unittest

from finsler import Kind, Family, Convention, IndexType, Mode, Status


class TestEnumFamily(unittest.TestCase):

    def setUp(self):
        pass

    def test_all(self):
        self.assertEqual(len(Family.all()), 8)
        self.assertEqual(Family.all()[0], Family.EUCLIDEAN)
        self.assertEqual(Family.all()[-1], Family.EXPRESSION)
        self.assertNotIn(Family.UNKNOWN, Family.all())

    def test_match_by_id(self):
        self.assertEqual(Family.match_by_id("poincare"), Family.POINCARE)
        self.assertEqual(Family.match_by_id("randers"), Family.RANDERS)
        self.assertEqual(Family.match_by_id("Randers"), Family.UNKNOWN)
        self.assertEqual(Family.match_by_id(""), Family.UNKNOWN)
        self.assertEqual(Family.match_by_id(1234), Family.UNKNOWN)
        self.assertEqual(Family.match_by_id([1, "2", (1, 2, 3)]), Family.UNKNOWN)

    def test_riemannian(self):
        riemannian = [f for f in Family.all() if f.riemannian]
        self.assertEqual(riemannian, [Family.EUCLIDEAN, Family.MINKOWSKI, Family.QUADRATIC, Family.POINCARE,
                                      Family.RIEMANNIAN])
        self.assertFalse(Family.UNKNOWN.riemannian)


class TestEnumKind(unittest.TestCase):

    def setUp(self):
        pass

    def test_all(self):
        self.assertEqual(Kind.all(), [Kind.POSITIVE, Kind.ALTERNATING])

    def test_match_by_id(self):
        self.assertEqual(Kind.match_by_id("alternating"), Kind.ALTERNATING)
        self.assertEqual(Kind.match_by_id("lorentzian"), Kind.UNKNOWN)


class TestEnumSigns(unittest.TestCase):

    def setUp(self):
        pass

    def test_convention(self):
        self.assertEqual(Convention.match_by_id("paper-riemann").sign, 1.0)
        self.assertEqual(Convention.match_by_id("paper-finsler").sign, -1.0)
        self.assertEqual(Convention.match_by_id("paper").sign, 0.0)

    def test_index_type(self):
        self.assertEqual(IndexType.LOWER.sign, -1.0)
        self.assertEqual(IndexType.UPPER.sign, 1.0)
        self.assertEqual(IndexType.LOWER.id, "lower")


class TestEnumStatus(unittest.TestCase):

    def setUp(self):
        pass

    def test_of(self):
        self.assertEqual(Status.of(1e-12, 1e-10), Status.PASS)
        self.assertEqual(Status.of(1e-10, 1e-10), Status.PASS)
        self.assertEqual(Status.of(1e-9, 1e-10), Status.FAIL)
        self.assertEqual(Status.of(float("nan"), 1e-10), Status.FAIL)
        self.assertEqual(Status.of(float("inf"), 1e-10), Status.FAIL)
        self.assertEqual(Status.of(5.0, None), Status.REPORT)

    def test_modes(self):
        self.assertEqual([m.id for m in Mode.all()], ["riemann", "finsler", "correspondence"])


if __name__ == '__main__':
    unittest.main()
