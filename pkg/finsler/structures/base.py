import abc
import logging

import numpy as np

import finsler.utils
from finsler import tower
from finsler.enums import Kind
from finsler.errors import DomainError, UnsupportedKindError, ContractError

logger = logging.getLogger(__name__)


class AbstractStructure(metaclass=abc.ABCMeta):
    """
    A Finsler structure: a fundamental function F(x, y), homogeneous of degree 2 in y, on an open chart.

    Subclasses only implement `fundamental`, which has to be generic over the numeric tower: it receives
    lists of floats or Jets and only uses arithmetic and the functions of finsler.tower on them.

    :ivar dimension: The dimension n of the base manifold.
    :ivar kind: Kind.POSITIVE or Kind.ALTERNATING.
    :ivar family: Where the structure comes from, a Family member.
    :ivar name: Optional name, set for the shipped structures.
    :ivar sampler_section: Optional sampler overrides that keep samples inside the chart.
    :cvar reversible: True when F(x, -y) = F(x, y), so homogeneity also holds for negative factors.
    """

    reversible = True

    def __init__(self, dimension, kind, family, name=None, config=None):
        if dimension < 2:
            raise ContractError("A structure needs dimension >= 2, got {0}.".format(dimension))
        if kind not in Kind.all():
            raise ContractError("Param 'kind' is not a known Kind: {0!r}.".format(kind))
        self.dimension = int(dimension)
        self.kind = kind
        self.family = family
        self.name = name
        self.sampler_section = {}
        self._config = config or finsler.utils.load_config()
        self._signature = None

    @abc.abstractmethod
    def fundamental(self, x, y):
        """
        The fundamental function F(x, y).
        :param x: n tower scalars, the point.
        :param y: n tower scalars, the direction.
        :return: A tower scalar.
        """
        pass

    @property
    def config(self):
        """
        The config the structure was built with.
        :return: A Dict with all the config settings.
        """
        return self._config

    @property
    def riemannian(self):
        return self.family.riemannian

    @property
    def positive(self):
        return self.kind == Kind.POSITIVE

    def norm(self, x, y):
        """
        The Finsler norm L = sqrt(F), generic over the tower.
        :raises UnsupportedKindError: For alternating structures, they have no norm.
        """
        if not self.positive:
            raise UnsupportedKindError("Structure '{0}' is alternating, L is undefined.".format(self.label))
        return tower.sqrt(self.fundamental(x, y))

    def in_domain(self, x):
        """
        Whether x lies in the chart where F is smooth.
        :param x: A float vector.
        """
        return True

    def check_direction(self, x, y):
        """
        Extra restriction on the direction, e.g. distance from a light cone. Raises a DomainError when violated.
        """
        pass

    def check_point(self, x, y):
        """
        Validate a point of the slit tangent bundle.
        :param x: The point.
        :param y: The direction.
        :return: (x, y) as float numpy vectors.
        :raises DomainError: When y is inside the slit guard, x outside the chart, or a value not finite.
        """
        x = finsler.utils.as_vector(x, self.dimension, "x")
        y = finsler.utils.as_vector(y, self.dimension, "y")
        if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
            raise DomainError("Point ({0}, {1}) is not finite".format(x, y), position="check_point")
        y_min = self._config["guards"]["slit"] * (1.0 + np.linalg.norm(x))
        if np.linalg.norm(y) < y_min:
            raise DomainError("Direction {0} is inside the slit guard |y| >= {1:g}".format(y, y_min),
                              position="slit")
        if not self.in_domain(x):
            raise DomainError("Point {0} is outside of the domain of '{1}'".format(x, self.label), position="domain")
        self.check_direction(x, y)
        return x, y

    def reference_point(self):
        """
        The sample at which the signature is read off, by default x = 0 and y = e_0.
        """
        y = np.zeros(self.dimension)
        y[0] = 1.0
        return np.zeros(self.dimension), y

    @property
    def signature(self):
        """
        Eigenvalue signs (p, q) of g at the reference point, computed once.
        """
        if self._signature is None:
            x, y = self.reference_point()
            n = self.dimension
            _, _, hessian = tower.derive(lambda v: self.fundamental(list(x), v), y, range(n), 2)
            eigenvalues = np.linalg.eigvalsh(0.5 * hessian)
            self._signature = (int(np.sum(eigenvalues > 0)), int(np.sum(eigenvalues < 0)))
            logger.debug("Signature of %s is %s", self.label, self._signature)
        return self._signature

    @property
    def label(self):
        return self.name or self.family.id

    def describe(self):
        """
        A JSON ready description of the structure.
        """
        return {
            "name": self.name,
            "family": self.family.id,
            "kind": self.kind.id,
            "dimension": self.dimension,
        }

    def __repr__(self):
        return "{0}(dimension={1}, kind={2})".format(type(self).__name__, self.dimension, self.kind.id)


def quadratic_form(matrix, y):
    """
    sum_ij m_ij y^i y^j over the tower, skipping zero entries.
    :param matrix: An n x n array of floats or tower scalars.
    :param y: n tower scalars.
    """
    total = 0.0
    n = len(y)
    for i in range(n):
        for j in range(n):
            m = matrix[i][j]
            if isinstance(m, tower.Jet) or m != 0.0:
                total = total + m * y[i] * y[j]
    return total


def linear_form(vector, y):
    total = 0.0
    for b, v in zip(vector, y):
        if isinstance(b, tower.Jet) or b != 0.0:
            total = total + b * v
    return total
