"""
Coordinate changes x' = phi(x) and the transformation law of the spray.
"""
import logging

import numpy as np

import finsler.utils
from finsler.errors import ConfigError, ContractError, DegeneracyError, DomainError, ParseDiagnostic
from finsler.expr import parse, evaluate, bindings, free_vars, to_text
from finsler.geometry.local import LocalGeometry, ORDER_SPRAY
from finsler.structures.base import AbstractStructure
from finsler.tower import derive, linalg, taylor_compose, value_of

logger = logging.getLogger(__name__)

JACOBIAN_GUARD = 1e-10


class ChartMap(object):
    """
    A coordinate change given by one expression over x0..x{n-1} per new coordinate.

    :ivar dimension: n.
    :ivar components: The parsed expressions.
    :ivar name: Optional name.
    """

    def __init__(self, texts, name=None):
        self.dimension = len(texts)
        if self.dimension < 2:
            raise ContractError("A chart map needs at least 2 components, got {0}.".format(self.dimension))
        self.components = [parse(text, self.dimension) for text in texts]
        for text, ast in zip(texts, self.components):
            if any(v.startswith("y") for v in free_vars(ast)):
                raise ContractError("Chart component {0!r} may only depend on x.".format(text))
        self.name = name

    @property
    def texts(self):
        return [to_text(ast) for ast in self.components]

    def forward(self, x):
        """
        phi(x) as a float vector.
        """
        x = finsler.utils.as_vector(x, self.dimension, "x")
        return np.array([value_of(evaluate(ast, bindings(x))) for ast in self.components])

    def derivatives(self, x):
        """
        The Taylor data of phi at x.
        :return: (phi(x), J, D2, D3) with J[k, i] = dphi^k/dx^i, D2[k, i, j] and D3[k, i, j, l].
        """
        x = finsler.utils.as_vector(x, self.dimension, "x")
        n = self.dimension
        value = np.zeros(n)
        J = np.zeros((n, n))
        D2 = np.zeros((n, n, n))
        D3 = np.zeros((n, n, n, n))
        for k, ast in enumerate(self.components):
            value[k], J[k], D2[k], D3[k] = derive(lambda v, ast=ast: evaluate(ast, bindings(v)), x, range(n), 3)
        return value, J, D2, D3

    def jacobian(self, x):
        """
        :raises DegeneracyError: When |det J| <= 1e-10.
        """
        _, J, _, _ = self.derivatives(x)
        check_jacobian(J, x)
        return J

    def __repr__(self):
        return "ChartMap({0!r})".format(self.texts)


def check_jacobian(J, x=None):
    det = float(np.linalg.det(J))
    if not abs(det) > JACOBIAN_GUARD:
        raise DegeneracyError("Chart Jacobian is not invertible at x={0}, det = {1!r}.".format(
            None if x is None else np.asarray(x).tolist(), det))
    return det


class PushedStructure(AbstractStructure):
    """
    A structure written in the coordinates of a chart, F'(x', y') = F(x(x'), J^-1 y').

    The inverse map x(x') is only known through its Taylor expansion at the image of `base`, exact to
    second order, so the structure is only defined at that single point. That is all the spray needs.
    """

    def __init__(self, structure, chart, base):
        super(PushedStructure, self).__init__(structure.dimension, structure.kind, structure.family,
                                              name=structure.name, config=structure.config)
        if chart.dimension != structure.dimension:
            raise ContractError("Chart has dimension {0}, structure has {1}.".format(
                chart.dimension, structure.dimension))
        self.structure = structure
        self.reversible = structure.reversible
        self.chart = chart
        self.base = finsler.utils.as_vector(base, structure.dimension, "base")
        self.image, self.J, self.D2, self.D3 = chart.derivatives(self.base)
        check_jacobian(self.J, self.base)
        J_inv = np.linalg.inv(self.J)
        # second derivatives of the inverse map: -J^-1 D2phi(J^-1 ., J^-1 .)
        self.inverse_tensors = [J_inv, -np.einsum("ak,kij,ib,jc->abc", J_inv, self.D2, J_inv, J_inv)]

    def _point(self, x_new):
        n = self.dimension
        deltas = [x_new[i] - self.image[i] for i in range(n)]
        return [taylor_compose(self.base[a], [t[a] for t in self.inverse_tensors], deltas) for a in range(n)]

    def _jacobian(self, x):
        n = self.dimension
        deltas = [x[i] - self.base[i] for i in range(n)]
        J = np.empty((n, n), dtype=object)
        for k in range(n):
            for i in range(n):
                J[k, i] = taylor_compose(self.J[k, i], [self.D2[k, i], self.D3[k, i]], deltas)
        return J

    def fundamental(self, x, y):
        x = self._point(x)
        y = linalg.solve(self._jacobian(x), list(y))
        return self.structure.fundamental(x, list(y))

    def in_domain(self, x):
        return bool(np.allclose(x, self.image, rtol=0.0, atol=1e-12 * (1.0 + np.max(np.abs(self.image)))))

    def check_point(self, x, y):
        x_new, y_new = super(PushedStructure, self).check_point(x, y)
        self.structure.check_direction(self.base, np.linalg.solve(self.J, y_new))
        return x_new, y_new


def push_forward(s, chart, x, y):
    """
    The image of (x, y) in the new coordinates.
    :return: (x', y') = (phi(x), J y).
    """
    x, y = s.check_point(x, y)
    image, J, _, _ = chart.derivatives(x)
    check_jacobian(J, x)
    return image, J.dot(y)


def transform_spray_check(s, chart, x, y):
    """
    Compare the spray computed in new coordinates with the transformation law
    G'^k = J^k_i G^i - 1/2 d^2 x'^k / dx^i dx^j y^i y^j.
    :param s: The structure.
    :param chart: A ChartMap.
    :param x: The point, in the old coordinates.
    :param y: The direction, in the old coordinates.
    :return: The max componentwise residual, a float.
    :raises DegeneracyError: When the Jacobian of the chart is not invertible at x.
    """
    x, y = s.check_point(x, y)
    pushed = PushedStructure(s, chart, x)
    G = LocalGeometry(s, x, y, order=ORDER_SPRAY).spray
    try:
        G_new = LocalGeometry(pushed, pushed.image, pushed.J.dot(y), order=ORDER_SPRAY).spray
    except DomainError as e:
        raise DomainError("The pushed structure can not be evaluated: {0}".format(e), position="chart")
    expected = pushed.J.dot(G) - 0.5 * np.einsum("kij,i,j->k", pushed.D2, y, y)
    residual = float(np.max(np.abs(G_new - expected)))
    logger.debug("Spray transformation residual under %r: %g", chart, residual)
    return residual


def load_chart(spec, name=None):
    """
    Create a ChartMap from {"components": [...]}.
    :raises ConfigError: When the specification can not be understood.
    """
    if "components" not in spec:
        raise ConfigError("Chart specification is missing 'components'.")
    try:
        return ChartMap(list(spec["components"]), name=name)
    except (ParseDiagnostic, ContractError) as e:
        raise ConfigError("Invalid chart {0!r}: {1}".format(name or spec, e))


def shipped_chart(name, config=None):
    config = config or finsler.utils.load_config()
    charts = config.get("charts", {})
    if name not in charts:
        raise ConfigError("Unknown chart {0!r}, shipped charts are {1}.".format(name, sorted(charts)))
    return load_chart(charts[name], name=name)
