"""
Precedence climbing parser for scalar expressions over x0..x{n-1}, y0..y{n-1}.

Precedence, loosest first: + - (left), * / (left), unary minus, ^ (right). Functions are applied with
parentheses. An exponent may not contain variables, it is folded into a constant, so 2^3^2 is 2^9.
Every diagnostic carries the byte offset of the offending token.
"""
import logging
import math
import re
from collections import namedtuple

from finsler.errors import DomainError, ParseDiagnostic
from finsler.expr.evaluate import evaluate, free_vars
from finsler.expr.nodes import Binary, Constant, Unary, Variable, VARIABLE_PATTERN

logger = logging.getLogger(__name__)

FUNCTIONS = ("sqrt", "exp", "log", "sin", "cos", "tanh", "abs")

BINARY = {
    "+": ("add", 10, "left"),
    "-": ("sub", 10, "left"),
    "*": ("mul", 20, "left"),
    "/": ("div", 20, "left"),
    "^": ("pow", 40, "right"),
}
UNARY_MINUS = 30

OPERAND_START = frozenset(["number", "variable", "function", "(", "-"])

_TOKEN = re.compile(
    r"(?P<space>\s+)"
    r"|(?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<op>[-+*/^()])"
    r"|(?P<bad>.)",
    re.S,
)

Token = namedtuple("Token", ["kind", "text", "offset"])


def tokenize(text):
    """
    Split an expression into tokens.
    :param text: The expression.
    :return: A list of Tokens, the last one has kind "end".
    :raises ParseDiagnostic: On a character that starts no token.
    """
    tokens = []
    for match in _TOKEN.finditer(text):
        kind = match.lastgroup
        offset = len(text[:match.start()].encode("utf-8"))
        if kind == "space":
            continue
        if kind == "bad":
            raise ParseDiagnostic(offset, OPERAND_START, "Unexpected character {0!r}".format(match.group()))
        tokens.append(Token(kind, match.group(), offset))
    tokens.append(Token("end", "", len(text.encode("utf-8"))))
    return tokens


class _Parser(object):

    def __init__(self, text, dimension):
        self.tokens = tokenize(text)
        self.position = 0
        self.dimension = dimension

    def peek(self):
        return self.tokens[self.position]

    def advance(self):
        token = self.tokens[self.position]
        self.position += 1
        return token

    def expect(self, text):
        token = self.advance()
        if token.text != text or token.kind == "end":
            raise ParseDiagnostic(token.offset, [text], "Expected {0!r}, found {1}".format(text, _describe(token)))
        return token

    def expression(self, min_precedence):
        lhs = self.atom()
        while True:
            token = self.peek()
            if token.kind != "op" or token.text not in BINARY:
                return lhs
            op, precedence, assoc = BINARY[token.text]
            if precedence < min_precedence:
                return lhs
            self.advance()
            rhs = self.expression(precedence if assoc == "right" else precedence + 1)
            if op == "pow":
                rhs = _constant_exponent(rhs)
            lhs = Binary(op, lhs, rhs, offset=token.offset)

    def atom(self):
        token = self.advance()
        if token.kind == "number":
            value = float(token.text)
            if not math.isfinite(value):
                raise ParseDiagnostic(token.offset, [], "Numeric literal {0!r} is out of range".format(token.text))
            return Constant(value, offset=token.offset)
        if token.kind == "op" and token.text == "-":
            return Unary("neg", self.expression(UNARY_MINUS), offset=token.offset)
        if token.kind == "op" and token.text == "(":
            inner = self.expression(0)
            self.expect(")")
            return inner
        if token.kind == "name":
            return self.name(token)
        if token.kind == "end":
            raise ParseDiagnostic(token.offset, OPERAND_START, "Unexpected end of input")
        raise ParseDiagnostic(token.offset, OPERAND_START, "Unexpected {0}".format(_describe(token)))

    def name(self, token):
        if token.text in FUNCTIONS:
            self.expect("(")
            argument = self.expression(0)
            self.expect(")")
            return Unary(token.text, argument, offset=token.offset)
        match = VARIABLE_PATTERN.match(token.text)
        if match and int(match.group(2)) < self.dimension:
            return Variable(token.text, offset=token.offset)
        if self.peek().text == "(":
            raise ParseDiagnostic(token.offset, FUNCTIONS, "Unknown function {0!r}".format(token.text))
        declared = "x0..x{0} and y0..y{0}".format(self.dimension - 1)
        message = "Undeclared variable {0!r}, dimension {1} declares {2}".format(token.text, self.dimension, declared)
        raise ParseDiagnostic(token.offset, ["variable"], message)


def _describe(token):
    if token.kind == "end":
        return "end of input"
    return "{0} {1!r}".format(token.kind, token.text)


def _constant_exponent(node):
    if isinstance(node, Constant):
        return node
    if free_vars(node):
        raise ParseDiagnostic(node.offset, ["number"], "Exponent must be a constant")
    try:
        return Constant(float(evaluate(node, {})), offset=node.offset)
    except DomainError as e:
        raise ParseDiagnostic(node.offset, ["number"], "Exponent is undefined: {0}".format(e.message))


def parse(text, dimension):
    """
    Parse an expression.
    :param text: The expression, e.g. "sqrt(y0^2 + y1^2) + 0.3*y0".
    :param dimension: The number of coordinates, variables x0..x{n-1} and y0..y{n-1} are declared.
    :return: The root node.
    :raises ParseDiagnostic: On a syntax error, an undeclared variable or an exponent with variables.
    """
    if dimension < 1:
        raise ParseDiagnostic(0, [], "Dimension must be positive, got {0}".format(dimension))
    if not text or not text.strip():
        raise ParseDiagnostic(0, OPERAND_START, "Empty expression")
    parser = _Parser(text, dimension)
    root = parser.expression(0)
    token = parser.peek()
    if token.kind != "end":
        raise ParseDiagnostic(token.offset, ["operator", "end of input"], "Unexpected {0}".format(_describe(token)))
    logger.debug("Parsed %r in dimension %d", text, dimension)
    return root
