"""
Electromagnetic potentials A = A_a dx^a given as expressions over x0..x3 and optionally y0..y3.
"""
import logging

import numpy as np

import finsler.utils
from finsler.errors import ConfigError, ContractError, ParseDiagnostic
from finsler.expr import Binary, parse, evaluate, bindings, free_vars, to_text
from finsler.tower import derive

logger = logging.getLogger(__name__)

DIMENSION = 4


class PotentialField(object):
    """
    A covector field on spacetime, possibly depending on the direction.

    :ivar components: Four expression trees.
    :ivar name: Optional name.
    :ivar y_dependent: Whether any component uses y0..y3.
    :ivar sampler_section: Sampler overrides that keep samples away from singularities.
    """

    def __init__(self, components, name=None, sampler_section=None):
        if len(components) != DIMENSION:
            raise ContractError("A potential has {0} components, got {1}.".format(DIMENSION, len(components)))
        self.components = list(components)
        self.name = name
        self.sampler_section = dict(sampler_section or {})
        self.y_dependent = any(v.startswith("y") for ast in self.components for v in free_vars(ast))

    @classmethod
    def from_texts(cls, texts, name=None, sampler_section=None):
        """
        Parse the four component expressions.
        :raises ParseDiagnostic: When a component does not parse.
        """
        return cls([parse(text, DIMENSION) for text in texts], name=name, sampler_section=sampler_section)

    @property
    def texts(self):
        return [to_text(ast) for ast in self.components]

    def __call__(self, x, y=None):
        """
        Evaluate all components.
        :param x: Four tower scalars.
        :param y: Four tower scalars, needed when the field is y-dependent.
        :return: A list of four tower scalars.
        """
        if self.y_dependent and y is None:
            raise ContractError("Potential '{0}' depends on y, a direction is needed.".format(self.label))
        values = bindings(x, y)
        return [evaluate(ast, values) for ast in self.components]

    @property
    def label(self):
        return self.name or "potential"

    def describe(self):
        return {"name": self.name, "components": self.texts, "y_dependent": self.y_dependent}

    def __repr__(self):
        return "PotentialField({0!r})".format(self.texts)


def load_potential(spec, name=None):
    """
    Create a PotentialField from {"components": [...]}.
    :raises ConfigError: When the specification can not be understood.
    """
    if "components" not in spec:
        raise ConfigError("Potential specification is missing 'components'.")
    try:
        return PotentialField.from_texts(list(spec["components"]), name=name, sampler_section=spec.get("sampler"))
    except (ParseDiagnostic, ContractError) as e:
        raise ConfigError("Invalid potential {0!r}: {1}".format(name or spec, e))


def shipped_potential(name, config=None):
    """
    Create one of the potentials listed under "potentials" in the config.
    """
    config = config or finsler.utils.load_config()
    potentials = config.get("potentials", {})
    if name not in potentials:
        raise ConfigError("Unknown potential {0!r}, shipped potentials are {1}.".format(name, sorted(potentials)))
    return load_potential(potentials[name], name=name)


def gauge_transform(A, gradient_texts, chi=None, points=None, config=None):
    """
    The gauge transformed potential A + d chi.

    The gradient is given component by component as x-only expressions. When `chi` is given as well, the
    gradient is checked against the derivatives of chi at `points` (default: the config's sampler).
    :param A: A PotentialField.
    :param gradient_texts: Four expressions for d chi / dx^a.
    :param chi: Optional expression text for chi itself.
    :param points: Optional list of points to check the gradient at.
    :param config: Tolerances and sampler, default is the shipped config.
    :return: A new PotentialField.
    :raises ContractError: When a gradient component uses y, or does not match chi.
    """
    gradient = [parse(text, DIMENSION) for text in gradient_texts]
    if len(gradient) != DIMENSION:
        raise ContractError("A gradient has {0} components, got {1}.".format(DIMENSION, len(gradient)))
    if any(v.startswith("y") for ast in gradient for v in free_vars(ast)):
        raise ContractError("Gauge gradients may only depend on x.")
    if chi is not None:
        config = config or finsler.utils.load_config()
        _check_gradient(parse(chi, DIMENSION), gradient, points, config)
    components = [Binary("add", a, g) for a, g in zip(A.components, gradient)]
    name = "{0}+gauge".format(A.name) if A.name else None
    return PotentialField(components, name=name, sampler_section=A.sampler_section)


def _check_gradient(chi, gradient, points, config):
    if points is None:
        sampler = finsler.utils.Sampler.from_config(config["sampler"], count=5)
        points = [x for _, x, _ in sampler.samples(DIMENSION)]
    tol = config["tolerances"]["identity"]
    for x in points:
        x = finsler.utils.as_vector(x, DIMENSION, "point")
        _, expected = derive(lambda v: evaluate(chi, bindings(v)), x, range(DIMENSION), 1)
        given = np.array([float(evaluate(g, bindings(x))) for g in gradient])
        error = float(np.max(np.abs(given - expected)))
        if error > tol * max(1.0, float(np.max(np.abs(expected)))):
            raise ContractError("Gauge gradient does not match chi at x={0}, off by {1:g}.".format(x.tolist(), error))
