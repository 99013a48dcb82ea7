import unittest

import numpy as np

from finsler import tower
from finsler.errors import ContractError, EvaluationError, ParseDiagnostic
from finsler.expr import Binary, Constant, Unary, Variable, bindings, evaluate, free_vars, parse, to_text, tokenize
from finsler.expr.nodes import BINARY_OPS, UNARY_OPS


def _value(text, dimension=2, x=(0.0, 0.0), y=None):
    return evaluate(parse(text, dimension), bindings(list(x), None if y is None else list(y)))


def _random_text(rng, depth):
    """
    A random well formed expression over x0, x1, y0, y1.
    """
    if depth == 0 or rng.random() < 0.2:
        if rng.random() < 0.3:
            return str(round(float(rng.uniform(0.1, 10.0)), 3))
        return str(rng.choice(["x0", "x1", "y0", "y1"]))
    shape = rng.integers(0, 4)
    if shape == 0:
        return "-" + _random_text(rng, depth - 1)
    if shape == 1:
        return "{0}({1})".format(rng.choice(["sqrt", "exp", "log", "sin", "cos", "tanh", "abs"]),
                                 _random_text(rng, depth - 1))
    if shape == 2:
        template = "({0} {1} {2})" if rng.random() < 0.5 else "{0} {1} {2}"
        return template.format(_random_text(rng, depth - 1), rng.choice(["+", "-", "*", "/"]),
                               _random_text(rng, depth - 1))
    return "({0})^{1}".format(_random_text(rng, depth - 1), rng.choice(["2", "-1", "0.5", "3^0.5", "(1/3)"]))


def _ops(node):
    if isinstance(node, Unary):
        return {node.op} | _ops(node.operand)
    if isinstance(node, Binary):
        return {node.op} | _ops(node.left) | _ops(node.right)
    return set()


class TestParser(unittest.TestCase):

    def setUp(self):
        pass

    def test_precedence(self):
        self.assertEqual(_value("2+3*4"), 14.0)
        self.assertEqual(_value("2*3^2"), 18.0)
        self.assertEqual(_value("-2^2"), -4.0)
        self.assertEqual(_value("(2+3)*4"), 20.0)
        self.assertEqual(_value("8/4/2"), 1.0)
        self.assertEqual(_value("1-2-3"), -4.0)
        self.assertEqual(_value("2^-1"), 0.5)
        self.assertEqual(_value("2^3^2"), 512.0)
        self.assertEqual(_value("(2^3)^2"), 64.0)
        self.assertEqual(_value("x0^(1/2)", x=(4.0, 0.0)), 2.0)

    def test_tree(self):
        node = parse("x0 + 2*y1", 2)
        self.assertEqual(node, Binary("add", Variable("x0"), Binary("mul", Constant(2.0), Variable("y1"))))
        self.assertEqual(parse("sin(x1)", 2), Unary("sin", Variable("x1")))

    def test_offsets(self):
        node = parse("x0 +  y1", 2)
        self.assertEqual(node.offset, 3)
        self.assertEqual(node.right.offset, 6)
        tokens = tokenize("a + b")
        self.assertEqual([t.offset for t in tokens], [0, 2, 4, 5])
        self.assertEqual(tokens[-1].kind, "end")

    def test_undeclared_variable(self):
        with self.assertRaises(ParseDiagnostic) as context:
            parse("y9 + 1", 2)
        self.assertEqual(context.exception.offset, 0)
        self.assertIn("variable", context.exception.expected)
        for text in ("y01", "x00 + 1"):
            with self.assertRaises(ParseDiagnostic) as context:
                parse(text, 2)
            self.assertEqual(context.exception.offset, 0, text)

    def test_unknown_function(self):
        with self.assertRaises(ParseDiagnostic) as context:
            parse("1 + foo(x0)", 2)
        self.assertEqual(context.exception.offset, 4)
        self.assertIn("sqrt", context.exception.expected)

    def test_syntax_errors(self):
        cases = [
            ("", 0), ("   ", 0), ("1 +", 3), ("(x0", 3), ("x0 x1", 3), ("2 $ 3", 2), ("x0 ^ y0", 5),
            ("x0 ^ (y0 + 1)", 9), ("sqrt x0", 5), ("1 + )", 4), ("x0 +* 2", 4), ("2^log(0)", 2),
        ]
        for text, offset in cases:
            with self.assertRaises(ParseDiagnostic) as context:
                parse(text, 2)
            self.assertEqual(context.exception.offset, offset, text)

    def test_dimension(self):
        with self.assertRaises(ParseDiagnostic):
            parse("x0", 0)
        with self.assertRaises(ParseDiagnostic):
            parse("x2", 2)
        self.assertIsInstance(parse("x2", 3), Variable)


class TestEvaluate(unittest.TestCase):

    def setUp(self):
        self.norm = parse("sqrt(y0^2+y1^2)+0.3*y0", 2)

    def test_randers_like_norm(self):
        self.assertAlmostEqual(evaluate(self.norm, bindings([0.0, 0.0], [3.0, 4.0])), 5.9)

    def test_over_jets(self):
        y = [tower.Jet.variable(3.0, 0, 2, 2), tower.Jet.variable(4.0, 1, 2, 2)]
        result = evaluate(self.norm, bindings([0.0, 0.0], y))
        self.assertAlmostEqual(result.value, 5.9)
        self.assertAlmostEqual(result.tensor(1)[0], 0.6 + 0.3)
        self.assertAlmostEqual(result.tensor(1)[1], 0.8)

    def test_domain_error_carries_offset(self):
        with self.assertRaises(EvaluationError) as context:
            _value("1 + log(x0 - 1)", x=(0.5, 0.0))
        self.assertEqual(context.exception.position, 4)
        with self.assertRaises(EvaluationError) as context:
            _value("x1 / x0")
        self.assertEqual(context.exception.position, 3)

    def test_missing_binding(self):
        with self.assertRaises(ContractError):
            evaluate(parse("y0", 2), bindings([0.0, 0.0]))

    def test_free_vars(self):
        self.assertEqual(free_vars(self.norm), frozenset(["y0", "y1"]))
        self.assertEqual(free_vars(parse("3*4", 2)), frozenset())
        self.assertEqual(free_vars(parse("x1*sin(y0)", 2)), frozenset(["x1", "y0"]))

    def test_to_text_reparses(self):
        corpus = ["sqrt(y0^2+y1^2)+0.3*y0", "-2^2", "x0 - -1.5", "exp(-x1)/(1 + y0^-2)", "abs(x0)*tanh(y1)",
                  "log(cos(x1) + 2) - sin(y0)^3^0.5", "1e-3*y0/y1"]
        rng = np.random.default_rng(5)
        corpus += [_random_text(rng, 3) for _ in range(50)]
        ops = set()
        for text in corpus:
            node = parse(text, 2)
            self.assertEqual(parse(to_text(node), 2), node, text)
            ops |= _ops(node)
        self.assertEqual(ops, set(UNARY_OPS) | set(BINARY_OPS))

    def test_bindings(self):
        self.assertEqual(bindings([1.0, 2.0], [3.0, 4.0]), {"x0": 1.0, "x1": 2.0, "y0": 3.0, "y1": 4.0})
        self.assertEqual(bindings([1.0]), {"x0": 1.0})


if __name__ == '__main__':
    unittest.main()
