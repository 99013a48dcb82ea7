"""
Evaluation of expression trees over the numeric tower, plus the helpers that inspect and print them.
"""
import logging
import math

from finsler import tower
from finsler.errors import ContractError, DomainError, EvaluationError
from finsler.expr.nodes import Binary, Constant, Unary, Variable

logger = logging.getLogger(__name__)

_UNARY = {
    "neg": lambda v: -v,
    "sqrt": tower.sqrt,
    "exp": tower.exp,
    "log": tower.log,
    "sin": tower.sin,
    "cos": tower.cos,
    "tanh": tower.tanh,
    "abs": tower.absolute,
}

_BINARY = {
    "add": lambda a, b: a + b,
    "sub": lambda a, b: a - b,
    "mul": lambda a, b: a * b,
    "div": tower.divide,
}


def evaluate(node, bindings):
    """
    Evaluate an expression tree.
    Works unchanged for floats and Jets, the result has the tower type of the bindings.
    :param node: The root node.
    :param bindings: Mapping from variable name to tower scalar, see bindings().
    :return: A float or a Jet.
    :raises EvaluationError: When an operation leaves its domain, `position` is the offset of the failing node.
    """
    if isinstance(node, Constant):
        return node.value
    if isinstance(node, Variable):
        try:
            return bindings[node.name]
        except KeyError:
            raise ContractError("No binding for variable '{0}'.".format(node.name))
    if isinstance(node, Unary):
        operand = evaluate(node.operand, bindings)
        return _guarded(node, _UNARY[node.op], operand)
    if isinstance(node, Binary):
        left = evaluate(node.left, bindings)
        if node.op == "pow":
            return _guarded(node, tower.power, left, node.right.value)
        right = evaluate(node.right, bindings)
        return _guarded(node, _BINARY[node.op], left, right)
    raise TypeError("Param 'node' is not an expression node: {0!r}".format(node))


def _guarded(node, function, *args):
    try:
        result = function(*args)
    except EvaluationError:
        raise
    except DomainError as e:
        raise EvaluationError(e.message, position=node.offset)
    if not isinstance(result, tower.Jet) and not math.isfinite(result):
        raise EvaluationError("{0} produced a non-finite value".format(node.op), position=node.offset)
    return result


def free_vars(node):
    """
    The names of all variables that appear in an expression.
    :return: A frozenset of names such as {"x0", "y1"}.
    """
    if isinstance(node, Variable):
        return frozenset([node.name])
    if isinstance(node, Unary):
        return free_vars(node.operand)
    if isinstance(node, Binary):
        return free_vars(node.left) | free_vars(node.right)
    return frozenset()


_SYMBOLS = {"add": "+", "sub": "-", "mul": "*", "div": "/", "pow": "^"}


def to_text(node):
    """
    Print an expression fully parenthesised. Parsing the output gives back an equal tree.
    """
    if isinstance(node, Constant):
        text = repr(float(node.value))
        return "({0})".format(text) if node.value < 0 or text.startswith("-") else text
    if isinstance(node, Variable):
        return node.name
    if isinstance(node, Unary):
        if node.op == "neg":
            return "(-{0})".format(to_text(node.operand))
        return "{0}({1})".format(node.op, to_text(node.operand))
    return "({0} {1} {2})".format(to_text(node.left), _SYMBOLS[node.op], to_text(node.right))


def bindings(x, y=None):
    """
    Bind coordinates to variable names.
    :param x: The point coordinates, floats or Jets.
    :param y: The direction coordinates, optional.
    :return: A dict {"x0": x[0], ..., "y0": y[0], ...}.
    """
    result = {"x{0}".format(i): v for i, v in enumerate(x)}
    if y is not None:
        result.update({"y{0}".format(i): v for i, v in enumerate(y)})
    return result
