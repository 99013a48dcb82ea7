"""
Truncated multivariate Taylor arithmetic.

A Jet carries the value of a scalar together with all of its partial derivatives with respect to a fixed
set of seed variables, up to a truncation order. Derivatives are stored as full (symmetric) tensors,
`partials[k - 1]` has shape (dim,) * k, so the Leibniz rule and the Faa di Bruno formula turn into
outer products and axis permutations that numpy does in bulk.
"""
import itertools
import logging
import numbers
from functools import lru_cache

import numpy as np

from finsler.errors import ContractError, DomainError

logger = logging.getLogger(__name__)

# 3 in y combined with 1 in x.
MAX_ORDER = 4


def _layout_permutation(layout):
    """
    Axes permutation that puts the axes of an outer product back in index order.
    :param layout: For every axis of the outer product, the result position it belongs to.
    :return: A tuple usable with ndarray.transpose.
    """
    return tuple(int(i) for i in np.argsort(layout, kind="stable"))


@lru_cache(maxsize=None)
def _leibniz_terms(order):
    """
    Terms of the order-k Leibniz rule grouped by how many indices fall on the left factor.
    :return: A tuple of (a, permutations) pairs, one permutation per subset of size a.
    """
    terms = []
    for a in range(order + 1):
        perms = []
        for subset in itertools.combinations(range(order), a):
            rest = [p for p in range(order) if p not in subset]
            perms.append(_layout_permutation(list(subset) + rest))
        terms.append((a, tuple(perms)))
    return tuple(terms)


def _set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for partition in _set_partitions(rest):
        for i in range(len(partition)):
            yield partition[:i] + [[first] + partition[i]] + partition[i + 1:]
        yield [[first]] + partition


@lru_cache(maxsize=None)
def _faa_di_bruno_terms(order):
    """
    Terms of the order-k Faa di Bruno formula grouped by block sizes.
    :return: A tuple of (sizes, permutations) pairs, sizes sorted largest first.
    """
    groups = {}
    for partition in _set_partitions(list(range(order))):
        blocks = sorted(partition, key=lambda b: (-len(b), min(b)))
        sizes = tuple(len(b) for b in blocks)
        layout = [p for block in blocks for p in block]
        groups.setdefault(sizes, []).append(_layout_permutation(layout))
    return tuple((sizes, tuple(perms)) for sizes, perms in sorted(groups.items()))


@lru_cache(maxsize=None)
def _canonical_index(dim, order):
    """
    Fancy index that maps every multi-index to its sorted representative.
    Indexing a tensor with it makes the result exactly symmetric.
    """
    grid = np.indices((dim,) * order).reshape(order, -1)
    grid = np.sort(grid, axis=0)
    return tuple(grid.reshape((order,) + (dim,) * order))


def _permuted_sum(outer, perms):
    total = outer.transpose(perms[0])
    for perm in perms[1:]:
        total = total + outer.transpose(perm)
    return total


class Jet(object):
    """
    A scalar with its derivatives up to a truncation order in `dim` seed variables.

    Arithmetic between jets truncates to the smaller order, arithmetic with plain reals treats them as
    constants. A jet is never modified after construction, derivative arrays may be shared between jets.

    :ivar value: The value, a float.
    :ivar partials: Tuple of derivative tensors, partials[k - 1] has shape (dim,) * k.
    """
    __slots__ = ("value", "partials")
    # numpy scalars on the left hand side defer to the reflected operators below
    __array_ufunc__ = None

    def __init__(self, value, partials):
        self.value = float(value)
        self.partials = tuple(partials)
        if not self.partials:
            raise ContractError("A Jet needs at least first order partials, use a float for a constant.")
        if len(self.partials) > MAX_ORDER:
            raise ContractError("Jet order {0} exceeds the supported maximum {1}.".format(len(self.partials), MAX_ORDER))

    @classmethod
    def variable(cls, value, slot, dim, order):
        """
        Create a seed: the jet of the coordinate function number `slot`.
        :param value: The coordinate value.
        :param slot: The seed index, 0 <= slot < dim.
        :param dim: The number of seed variables.
        :param order: The truncation order, 1 to MAX_ORDER.
        :return: A new Jet.
        :raises ContractError: When the slot or order is out of range.
        """
        if not 1 <= order <= MAX_ORDER:
            raise ContractError("Jet order must be between 1 and {0}, got {1}.".format(MAX_ORDER, order))
        if not 0 <= slot < dim:
            raise ContractError("Seed slot {0} is outside of 0..{1}.".format(slot, dim - 1))
        first = np.zeros(dim)
        first[slot] = 1.0
        partials = [first] + [np.zeros((dim,) * k) for k in range(2, order + 1)]
        return cls(value, partials)

    @property
    def order(self):
        return len(self.partials)

    @property
    def dim(self):
        return self.partials[0].shape[0]

    def __repr__(self):
        return "Jet(value={0!r}, order={1}, dim={2})".format(self.value, self.order, self.dim)

    def tensor(self, k):
        """
        The derivative tensor of order k, exactly symmetric under index permutation.
        :param k: 0 gives the value, 1..order the derivative tensors.
        :return: A float for k = 0, else a new numpy array.
        """
        if k == 0:
            return self.value
        if not 1 <= k <= self.order:
            raise ContractError("Jet of order {0} has no order {1} tensor.".format(self.order, k))
        if k == 1:
            return self.partials[0].copy()
        return self.partials[k - 1][_canonical_index(self.dim, k)]

    def partial(self, slot):
        """
        Differentiate with respect to one seed variable.
        The result is exact, it just loses one order of truncation.
        :param slot: The seed index.
        :return: A Jet of one order lower, or a float when this jet has order 1.
        """
        if self.order == 1:
            return float(self.partials[0][slot])
        return Jet(self.partials[0][slot], [d[slot] for d in self.partials[1:]])

    def truncate(self, order):
        if order >= self.order:
            return self
        if order == 0:
            return self.value
        return Jet(self.value, self.partials[:order])

    def compose(self, derivatives, name="function"):
        """
        Apply a univariate function given by its derivatives at self.value (Faa di Bruno).
        :param derivatives: [phi(v), phi'(v), ..., phi^(order)(v)], at least order + 1 entries.
        :param name: The operation name used in a DomainError.
        :return: The Jet of phi(self).
        :raises DomainError: When any derivative is not finite.
        """
        derivatives = [float(d) for d in derivatives[:self.order + 1]]
        if not all(np.isfinite(derivatives)):
            raise DomainError("{0} is not differentiable at {1!r}".format(name, self.value), position=name)
        fs = (self.value,) + self.partials
        result = []
        for k in range(1, self.order + 1):
            total = None
            for sizes, perms in _faa_di_bruno_terms(k):
                outer = fs[sizes[0]]
                for size in sizes[1:]:
                    outer = np.multiply.outer(outer, fs[size])
                term = derivatives[len(sizes)] * _permuted_sum(outer, perms)
                total = term if total is None else total + term
            result.append(total)
        return Jet(derivatives[0], result)

    # ---------- arithmetic ----------

    def _check_dim(self, other):
        if other.dim != self.dim:
            raise ContractError("Cannot combine jets over {0} and {1} seeds.".format(self.dim, other.dim))

    def __add__(self, other):
        if isinstance(other, Jet):
            self._check_dim(other)
            order = min(self.order, other.order)
            return Jet(self.value + other.value, [a + b for a, b in zip(self.partials[:order], other.partials[:order])])
        if isinstance(other, numbers.Real):
            return Jet(self.value + other, self.partials)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return Jet(-self.value, [-d for d in self.partials])

    def __pos__(self):
        return self

    def __sub__(self, other):
        if isinstance(other, Jet):
            self._check_dim(other)
            order = min(self.order, other.order)
            return Jet(self.value - other.value, [a - b for a, b in zip(self.partials[:order], other.partials[:order])])
        if isinstance(other, numbers.Real):
            return Jet(self.value - other, self.partials)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, numbers.Real):
            return Jet(other - self.value, [-d for d in self.partials])
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, Jet):
            self._check_dim(other)
            return self._product(other)
        if isinstance(other, numbers.Real):
            return Jet(self.value * other, [d * other for d in self.partials])
        return NotImplemented

    __rmul__ = __mul__

    def _product(self, other):
        order = min(self.order, other.order)
        fs = (self.value,) + self.partials
        gs = (other.value,) + other.partials
        result = []
        for k in range(1, order + 1):
            total = None
            for a, perms in _leibniz_terms(k):
                term = _permuted_sum(np.multiply.outer(fs[a], gs[k - a]), perms)
                total = term if total is None else total + term
            result.append(total)
        return Jet(self.value * other.value, result)

    def reciprocal(self):
        if self.value == 0.0:
            raise DomainError("division by zero", position="div")
        v = self.value
        derivatives = [1.0 / v]
        for k in range(1, self.order + 1):
            derivatives.append(-k * derivatives[-1] / v)
        return self.compose(derivatives, name="div")

    def __truediv__(self, other):
        if isinstance(other, Jet):
            self._check_dim(other)
            return self * other.reciprocal()
        if isinstance(other, numbers.Real):
            if other == 0:
                raise DomainError("division by zero", position="div")
            return Jet(self.value / other, [d / other for d in self.partials])
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, numbers.Real):
            return self.reciprocal() * other
        return NotImplemented

    def __pow__(self, exponent):
        from finsler.tower.functions import power
        if not isinstance(exponent, numbers.Real):
            raise ContractError("Jet exponents must be real constants, got {0!r}.".format(exponent))
        return power(self, exponent)

    def __abs__(self):
        from finsler.tower.functions import absolute
        return absolute(self)

    # Comparisons look at the value only, they are used for pivoting and guards.

    def __lt__(self, other):
        return self.value < _value(other)

    def __le__(self, other):
        return self.value <= _value(other)

    def __gt__(self, other):
        return self.value > _value(other)

    def __ge__(self, other):
        return self.value >= _value(other)


def _value(v):
    return v.value if isinstance(v, Jet) else float(v)
