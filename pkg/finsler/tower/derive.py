"""
Derivative requests against the tower, and the finite-difference oracle used to cross-check them.
"""
import itertools
import logging
import math

import numpy as np

from finsler.errors import ContractError, StepUnderflowError
from finsler.tower.jet import Jet

logger = logging.getLogger(__name__)

# Public cap on derivative requests. The jets themselves go one order deeper, see jet.MAX_ORDER.
MAX_DERIVE_ORDER = 3


def _check_request(at, slots, order, max_order):
    if not 1 <= order <= max_order:
        raise ContractError("Derivative order must be between 1 and {0}, got {1}.".format(max_order, order))
    slots = [int(s) for s in slots]
    if not slots:
        raise ContractError("At least one slot is needed.")
    if len(set(slots)) != len(slots):
        raise ContractError("Duplicate slots in {0}.".format(slots))
    for s in slots:
        if not 0 <= s < len(at):
            raise ContractError("Slot {0} is outside of 0..{1}.".format(s, len(at) - 1))
    return slots


def seed(at, slots, order):
    """
    Build the argument list for a jet evaluation: seeded coordinates become jets, the others stay floats.
    :param at: The base point.
    :param slots: The coordinates to seed, seed number p differentiates with respect to at[slots[p]].
    :param order: The truncation order.
    :return: A list with one entry per coordinate.
    """
    args = [float(v) for v in at]
    for p, s in enumerate(slots):
        args[s] = Jet.variable(args[s], p, len(slots), order)
    return args


def derive(f, at, slots, order):
    """
    All partial derivatives of f with respect to the given slots up to `order`, exact to rounding.
    :param f: Callable taking a list of tower scalars (one per coordinate) and returning a tower scalar.
    :param at: The base point, a real vector.
    :param slots: The coordinates to differentiate by.
    :param order: 1 to 3.
    :return: [value, D1, ..., D_order], D_k has shape (len(slots),) * k and is exactly symmetric.
    :raises ContractError: For an order or slot out of range.
    :raises DomainError: When the evaluation leaves the domain of one of the elementary functions.
    """
    at = np.asarray(at, dtype=float).reshape(-1)
    slots = _check_request(at, slots, order, MAX_DERIVE_ORDER)
    result = f(seed(at, slots, order))
    m = len(slots)
    if not isinstance(result, Jet):
        return [float(result)] + [np.zeros((m,) * k) for k in range(1, order + 1)]
    return [result.value] + [result.tensor(k) for k in range(1, order + 1)]


def default_step(at, slots, order):
    """
    eps^(1 / (order + 2)) scaled by the largest differentiated coordinate, cbrt(eps) at order 1.
    """
    scale = max([1.0] + [abs(float(at[s])) for s in slots])
    return np.finfo(float).eps ** (1.0 / (order + 2)) * scale


def _central(f, point, index, h):
    """
    Nested central differences along the multi-index `index`, plain O(h^2) estimate.
    """
    if not index:
        return float(f(list(point)))
    s = index[0]
    plus = point.copy()
    minus = point.copy()
    plus[s] += h
    minus[s] -= h
    return (_central(f, plus, index[1:], h) - _central(f, minus, index[1:], h)) / (2.0 * h)


def fd_oracle(f, at, slots, order, step=None):
    """
    Finite-difference estimate of the order-th derivative tensor.
    Nested central differences with one Richardson level, (4 E(h/2) - E(h)) / 3, so the error model is
    O(step^4) for orders 1 and 2 (plus rounding of order eps / step^order).
    :param f: Callable taking a list of floats.
    :param at: The base point.
    :param slots: The coordinates to differentiate by.
    :param order: 1 to 4.
    :param step: Absolute step, default is default_step().
    :return: The derivative tensor of shape (len(slots),) * order.
    :raises StepUnderflowError: When the step does not move one of the coordinates.
    """
    at = np.asarray(at, dtype=float).reshape(-1)
    slots = _check_request(at, slots, order, 4)
    h = default_step(at, slots, order) if step is None else float(step)
    if not h > 0 or not math.isfinite(h):
        raise ContractError("Oracle step must be positive, got {0!r}.".format(step))
    for s in slots:
        if at[s] + 0.5 * h == at[s] or at[s] - 0.5 * h == at[s]:
            raise StepUnderflowError("Step {0!r} underflows coordinate {1} = {2!r}.".format(h, s, at[s]))
    m = len(slots)
    result = np.zeros((m,) * order)
    for combo in itertools.combinations_with_replacement(range(m), order):
        index = [slots[p] for p in combo]
        coarse = _central(f, at.copy(), index, h)
        fine = _central(f, at.copy(), index, 0.5 * h)
        estimate = (4.0 * fine - coarse) / 3.0
        for perm in set(itertools.permutations(combo)):
            result[perm] = estimate
    logger.debug("fd_oracle order %d over %d slots with step %g", order, m, h)
    return result


def taylor_compose(value, tensors, deltas):
    """
    Evaluate a function known only through its Taylor data at a base point on displacements from it.
    With jet displacements based at 0 the result is the exact jet of the composition up to the order of
    the given tensors.
    :param value: The function value at the base point.
    :param tensors: [D1, D2, ...], D_k of shape (n,) * k.
    :param deltas: n tower scalars, the displacement from the base point.
    :return: value + sum_k D_k(delta, ..., delta) / k!.
    """
    n = len(deltas)
    total = float(value)
    for k, tensor in enumerate(tensors, start=1):
        tensor = np.asarray(tensor, dtype=float)
        for combo in itertools.combinations_with_replacement(range(n), k):
            coefficient = tensor[combo]
            if coefficient == 0.0:
                continue
            # number of distinct orderings over k!
            counts = [combo.count(i) for i in set(combo)]
            weight = 1.0
            for c in counts:
                weight /= math.factorial(c)
            term = coefficient * weight
            for i in combo:
                term = term * deltas[i]
            total = total + term
    return total
