"""
The shipped families of Finsler structures.
"""
import logging

import numpy as np

from finsler import tower
from finsler.enums import Kind, Family
from finsler.errors import ContractError, DomainError, DegeneracyError
from finsler.expr import parse, evaluate, bindings, free_vars
from finsler.structures.base import AbstractStructure, quadratic_form, linear_form

logger = logging.getLogger(__name__)


def _kind_of(matrix):
    eigenvalues = np.linalg.eigvalsh(0.5 * (matrix + matrix.T))
    if np.any(eigenvalues == 0.0):
        raise DegeneracyError("Quadratic form {0} is degenerate.".format(matrix.tolist()))
    return Kind.POSITIVE if np.all(eigenvalues > 0) else Kind.ALTERNATING


class QuadraticStructure(AbstractStructure):
    """
    F(x, y) = m_ij y^i y^j with a constant symmetric matrix m.
    """

    def __init__(self, matrix, family=Family.QUADRATIC, name=None, config=None):
        matrix = np.asarray(matrix, dtype=float)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise ContractError("Param 'matrix' must be square, got shape {0}.".format(matrix.shape))
        self.matrix = 0.5 * (matrix + matrix.T)
        super(QuadraticStructure, self).__init__(matrix.shape[0], _kind_of(self.matrix), family, name, config)

    def fundamental(self, x, y):
        return quadratic_form(self.matrix, y)


class Euclidean(QuadraticStructure):

    def __init__(self, dimension=3, name=None, config=None):
        super(Euclidean, self).__init__(np.eye(dimension), Family.EUCLIDEAN, name, config)


class Minkowski(QuadraticStructure):
    """
    The flat pseudo-Finsler structure diag(1, -1, ..., -1), index 0 is timelike.
    """

    def __init__(self, dimension=4, name=None, config=None):
        super(Minkowski, self).__init__(np.diag([1.0] + [-1.0] * (dimension - 1)), Family.MINKOWSKI, name, config)


class RiemannianStructure(AbstractStructure):
    """
    F(x, y) = a_ij(x) y^i y^j for a position dependent symmetric field a.

    :ivar a_field: Callable taking n tower scalars and returning an n x n nested list of tower scalars.
    """

    def __init__(self, a_field, dimension, kind=Kind.POSITIVE, name=None, config=None):
        super(RiemannianStructure, self).__init__(dimension, kind, Family.RIEMANNIAN, name, config)
        self.a_field = a_field

    def fundamental(self, x, y):
        return quadratic_form(self.a_field(x), y)


class PoincareHalfPlane(AbstractStructure):
    """
    F(x, y) = (y0^2 + y1^2) / x1^2 on the upper half plane x1 > 0.
    """

    def __init__(self, name=None, config=None):
        super(PoincareHalfPlane, self).__init__(2, Kind.POSITIVE, Family.POINCARE, name, config)

    def fundamental(self, x, y):
        return (y[0] * y[0] + y[1] * y[1]) / (x[1] * x[1])

    def in_domain(self, x):
        return x[1] > 0

    def reference_point(self):
        return np.array([0.0, 1.0]), np.array([1.0, 0.0])


class RandersStructure(AbstractStructure):
    """
    L(x, y) = sqrt(a_ij(x) y^i y^j) + b_i(x) y^i, F = L^2.
    Positive definite as long as a is and b_i a^ij b_j < 1, points where this fails are outside the domain.

    :ivar a_field: Callable x -> n x n nested list of tower scalars.
    :ivar b_field: Callable x -> n tower scalars.
    """

    reversible = False

    def __init__(self, a_field, b_field, dimension, name=None, config=None):
        super(RandersStructure, self).__init__(dimension, Kind.POSITIVE, Family.RANDERS, name, config)
        self.a_field = a_field
        self.b_field = b_field

    def norm(self, x, y):
        return tower.sqrt(quadratic_form(self.a_field(x), y)) + linear_form(self.b_field(x), y)

    def fundamental(self, x, y):
        L = self.norm(x, y)
        return L * L

    def b_norm(self, x):
        """
        b_i a^ij b_j at a float point.
        :param x: The point.
        :return: A float, the structure is positive definite at x iff this is < 1.
        """
        x = [float(v) for v in x]
        a = np.array(self.a_field(x), dtype=float)
        b = np.array(self.b_field(x), dtype=float)
        return float(b.dot(np.linalg.solve(a, b)))

    def in_domain(self, x):
        try:
            a = np.array(self.a_field([float(v) for v in x]), dtype=float)
            if np.any(np.linalg.eigvalsh(a) <= 0):
                return False
            return self.b_norm(x) < 1.0
        except (DomainError, np.linalg.LinAlgError):
            return False


class PerturbedQuadratic(AbstractStructure):
    """
    F(x, y) = eta(y, y) + epsilon * (y^d)^4 / eta(y, y) for a constant quadratic form eta.
    Homogeneous of degree 2 with a genuinely y dependent metric. Directions closer to the light cone of eta
    than the configured guard are rejected.

    :ivar matrix: eta.
    :ivar epsilon: Strength of the quartic term.
    :ivar direction: The index d.
    """

    def __init__(self, matrix, epsilon, direction, name=None, config=None):
        matrix = np.asarray(matrix, dtype=float)
        self.matrix = 0.5 * (matrix + matrix.T)
        self.epsilon = float(epsilon)
        self.direction = int(direction)
        if not 0 <= self.direction < matrix.shape[0]:
            raise ContractError("Perturbation direction {0} is outside of 0..{1}.".format(
                self.direction, matrix.shape[0] - 1))
        super(PerturbedQuadratic, self).__init__(
            matrix.shape[0], _kind_of(self.matrix), Family.PERTURBED, name, config)

    def fundamental(self, x, y):
        eta = quadratic_form(self.matrix, y)
        return eta + self.epsilon * y[self.direction] ** 4 / eta

    def check_direction(self, x, y):
        eta = float(y.dot(self.matrix).dot(y))
        bound = self.config["guards"]["light_cone"] * float(y.dot(y))
        if abs(eta) < bound:
            raise DomainError("Direction {0} is too close to the light cone, |eta(y, y)| = {1:g} < {2:g}".format(
                y, abs(eta), bound), position="light_cone")


class ExpressionStructure(AbstractStructure):
    """
    A structure given by an expression, either for F directly or for the norm L (then F = L^2).

    :ivar ast: The parsed expression.
    :ivar is_norm: True when the expression is L.
    :ivar reversible: Declared by the caller, F(x, -y) = F(x, y) is only asserted when set.
    """

    def __init__(self, text, dimension, kind=Kind.POSITIVE, is_norm=False, reference=None, reversible=False, name=None,
                 config=None):
        super(ExpressionStructure, self).__init__(dimension, kind, Family.EXPRESSION, name, config)
        self.text = text
        self.ast = parse(text, dimension)
        self.is_norm = bool(is_norm)
        self.reversible = bool(reversible)
        if self.is_norm and kind != Kind.POSITIVE:
            raise ContractError("A norm expression only makes sense for a positive structure.")
        self._reference = reference
        logger.debug("Expression structure over %s", sorted(free_vars(self.ast)))

    def fundamental(self, x, y):
        value = evaluate(self.ast, bindings(x, y))
        return value * value if self.is_norm else value

    def norm(self, x, y):
        if self.is_norm:
            return evaluate(self.ast, bindings(x, y))
        return super(ExpressionStructure, self).norm(x, y)

    def reference_point(self):
        if self._reference:
            return (np.asarray(self._reference["x"], dtype=float), np.asarray(self._reference["y"], dtype=float))
        return super(ExpressionStructure, self).reference_point()

    def describe(self):
        description = super(ExpressionStructure, self).describe()
        description["expression"] = self.text
        description["is_norm"] = self.is_norm
        return description
