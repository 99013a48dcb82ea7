"""
Elementary functions over the numeric tower.

Every function accepts a float or a Jet. Floats are checked for domain violations and non-finite results,
jets go through Jet.compose with the list of derivatives at the base value.
"""
import logging
import math
import numbers

from finsler.errors import ContractError, DomainError
from finsler.tower.jet import Jet

logger = logging.getLogger(__name__)


def is_jet(v):
    return isinstance(v, Jet)


def value_of(v):
    """
    The plain value of a tower scalar.
    :param v: A float or a Jet.
    :return: A float.
    """
    return v.value if isinstance(v, Jet) else float(v)


def _finite(value, name):
    if not math.isfinite(value):
        raise DomainError("{0} produced a non-finite value".format(name), position=name)
    return value


def _order(v):
    return v.order if isinstance(v, Jet) else 0


def _apply(v, derivatives, name):
    if isinstance(v, Jet):
        return v.compose(derivatives, name=name)
    return _finite(float(derivatives[0]), name)


def sqrt(v):
    if value_of(v) < 0:
        raise DomainError("sqrt of a negative value {0!r}".format(value_of(v)), position="sqrt")
    return power(v, 0.5, name="sqrt")


def exp(v):
    try:
        e = math.exp(value_of(v))
    except OverflowError:
        raise DomainError("exp overflow at {0!r}".format(value_of(v)), position="exp")
    return _apply(v, [e] * (_order(v) + 1), "exp")


def log(v):
    x = value_of(v)
    if x <= 0:
        raise DomainError("log of a non-positive value {0!r}".format(x), position="log")
    derivatives = [math.log(x)]
    for k in range(1, _order(v) + 1):
        derivatives.append((-1) ** (k - 1) * math.factorial(k - 1) / x ** k)
    return _apply(v, derivatives, "log")


def sin(v):
    s, c = math.sin(value_of(v)), math.cos(value_of(v))
    cycle = [s, c, -s, -c]
    return _apply(v, [cycle[k % 4] for k in range(_order(v) + 1)], "sin")


def cos(v):
    s, c = math.sin(value_of(v)), math.cos(value_of(v))
    cycle = [c, -s, -c, s]
    return _apply(v, [cycle[k % 4] for k in range(_order(v) + 1)], "cos")


def tanh(v):
    t = math.tanh(value_of(v))
    s = 1.0 - t * t
    derivatives = [t, s, -2.0 * t * s, s * (6.0 * t * t - 2.0), 8.0 * t * s * (2.0 - 3.0 * t * t)]
    return _apply(v, derivatives[:_order(v) + 1], "tanh")


def absolute(v):
    """
    Absolute value.
    Differentiating across 0 is refused: a jet based at 0 raises a DomainError instead of picking a subgradient.
    """
    x = value_of(v)
    if not isinstance(v, Jet):
        return abs(x)
    if x == 0.0:
        raise DomainError("abs is not differentiable at 0", position="abs")
    sign = 1.0 if x > 0 else -1.0
    return v.compose([abs(x), sign] + [0.0] * (v.order - 1), name="abs")


def _falling(p, k):
    result = 1.0
    for j in range(k):
        result *= p - j
    return result


def power(v, exponent, name="pow"):
    """
    Raise a tower scalar to a constant real exponent.
    :param v: A float or a Jet.
    :param exponent: A real constant.
    :param name: The operation name used in a DomainError.
    :return: The same tower type as v.
    :raises DomainError: For a negative base with a non-integer exponent, or 0 to a negative power.
    """
    if not isinstance(exponent, numbers.Real):
        raise ContractError("Exponent must be a real constant, got {0!r}.".format(exponent))
    p = float(exponent)
    x = value_of(v)
    integral = p.is_integer()
    if x < 0 and not integral:
        raise DomainError("{0} of a negative base {1!r} with exponent {2!r}".format(name, x, p), position=name)
    derivatives = []
    for k in range(_order(v) + 1):
        c = _falling(p, k)
        if c == 0.0:
            derivatives.append(0.0)
        elif x == 0.0 and p - k < 0:
            raise DomainError("{0} is not differentiable at 0".format(name), position=name)
        else:
            derivatives.append(c * x ** (p - k))
    return _apply(v, derivatives, name)


def divide(a, b):
    """
    Division over the tower, a zero divisor raises a DomainError rather than producing inf.
    """
    if value_of(b) == 0.0:
        raise DomainError("division by zero", position="div")
    if isinstance(a, Jet) or isinstance(b, Jet):
        return a / b
    return _finite(float(a) / float(b), "div")
