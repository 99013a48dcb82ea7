from finsler.expr.nodes import Binary, Constant, Unary, Variable
from finsler.expr.parser import parse, tokenize, FUNCTIONS
from finsler.expr.evaluate import evaluate, free_vars, to_text, bindings
