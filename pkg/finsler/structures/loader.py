"""
Build structures from their JSON specification.

A specification is either a named family with its parameters, e.g.
    {"family": "randers", "dimension": 2, "a": [["1", "0"], ["0", "1"]], "b": ["0.2 + 0.1*sin(x1)", "0.1*cos(x0)"]}
or an expression
    {"expression": "y0^2 + y1^2", "dimension": 2, "kind": "positive"}
where "reversible": true declares F(x, -y) = F(x, y) for an expression.
Field entries (a, b) may be numbers or expressions over x0..x{n-1}.
"""
import logging

import numpy as np

import finsler.utils
from finsler.enums import Kind, Family
from finsler.errors import ConfigError, ParseDiagnostic
from finsler.expr import parse, evaluate, bindings, free_vars
from finsler.structures.families import (
    Euclidean, Minkowski, QuadraticStructure, RiemannianStructure, PoincareHalfPlane, RandersStructure,
    PerturbedQuadratic, ExpressionStructure,
)

logger = logging.getLogger(__name__)


def _entry(value, dimension):
    if isinstance(value, (int, float)):
        return float(value)
    if not isinstance(value, str):
        raise ConfigError("Field entry {0!r} is neither a number nor an expression.".format(value))
    try:
        ast = parse(value, dimension)
    except ParseDiagnostic as e:
        raise ConfigError("Could not parse field entry {0!r}: {1}".format(value, e))
    if any(name.startswith("y") for name in free_vars(ast)):
        raise ConfigError("Field entry {0!r} may only depend on x.".format(value))
    return ast


def compile_field(entries, dimension):
    """
    Turn a nested list of numbers and expressions into a callable of the point.
    :param entries: A (nested) list of numbers or expression strings.
    :param dimension: The dimension n, expressions may use x0..x{n-1}.
    :return: A callable taking n tower scalars and returning the same nesting of tower scalars.
    """
    if isinstance(entries, (list, tuple)):
        children = [compile_field(e, dimension) for e in entries]
        return lambda x: [child(x) for child in children]
    entry = _entry(entries, dimension)
    if isinstance(entry, float):
        return lambda x: entry
    return lambda x: evaluate(entry, bindings(x))


def _require(spec, key):
    if key not in spec:
        raise ConfigError("Structure specification is missing '{0}'.".format(key))
    return spec[key]


def _kind(spec, default=Kind.POSITIVE):
    if "kind" not in spec:
        return default
    kind = Kind.match_by_id(spec["kind"])
    if kind == Kind.UNKNOWN:
        raise ConfigError("Unknown kind {0!r}, expected one of {1}.".format(
            spec["kind"], [k.id for k in Kind.all()]))
    return kind


def _shape(entries, shape, key):
    if np.shape(entries) != shape:
        raise ConfigError("Field '{0}' has shape {1}, expected {2}.".format(key, np.shape(entries), shape))


def load_structure(spec, name=None, config=None):
    """
    Create a structure from its specification.
    :param spec: The specification dict.
    :param name: Optional name for reports.
    :param config: The config to build the structure with, default is the shipped one.
    :return: An AbstractStructure.
    :raises ConfigError: When the specification can not be understood.
    """
    config = config or finsler.utils.load_config()
    if "expression" in spec or "norm" in spec:
        structure = _expression(spec, name, config)
    else:
        family = Family.match_by_id(_require(spec, "family"))
        builder = _BUILDERS.get(family)
        if builder is None:
            raise ConfigError("Unknown structure family {0!r}, expected one of {1}.".format(
                spec["family"], sorted(f.id for f in _BUILDERS)))
        try:
            structure = builder(spec, name, config)
        except (ValueError, TypeError, ArithmeticError) as e:
            if isinstance(e, ConfigError):
                raise
            raise ConfigError("Invalid parameters for family '{0}': {1}".format(family.id, e))
    structure.sampler_section = dict(spec.get("sampler", {}))
    logger.debug("Loaded structure %r", structure)
    return structure


def shipped_structure(name, config=None):
    """
    Create one of the structures listed under "structures" in the config.
    :param name: e.g. "randers" or "perturbed-minkowski".
    :raises ConfigError: For an unknown name.
    """
    config = config or finsler.utils.load_config()
    structures = config.get("structures", {})
    if name not in structures:
        raise ConfigError("Unknown structure {0!r}, shipped structures are {1}.".format(name, sorted(structures)))
    return load_structure(structures[name], name=name, config=config)


def _expression(spec, name, config):
    dimension = int(_require(spec, "dimension"))
    text = spec.get("expression") or spec.get("norm")
    reversible = spec.get("reversible", False)
    if not isinstance(reversible, bool):
        raise ConfigError("Field 'reversible' must be true or false, got {0!r}.".format(reversible))
    is_norm = "norm" in spec and "expression" not in spec
    try:
        return ExpressionStructure(text, dimension, kind=_kind(spec), is_norm=is_norm,
                                   reference=spec.get("reference"), reversible=reversible, name=name, config=config)
    except ParseDiagnostic as e:
        raise ConfigError("Could not parse structure expression {0!r}: {1}".format(text, e))


def _euclidean(spec, name, config):
    return Euclidean(int(spec.get("dimension", 3)), name=name, config=config)


def _minkowski(spec, name, config):
    return Minkowski(int(spec.get("dimension", 4)), name=name, config=config)


def _quadratic(spec, name, config):
    return QuadraticStructure(_require(spec, "matrix"), name=name, config=config)


def _poincare(spec, name, config):
    return PoincareHalfPlane(name=name, config=config)


def _riemannian(spec, name, config):
    dimension = int(_require(spec, "dimension"))
    a = _require(spec, "a")
    _shape(a, (dimension, dimension), "a")
    return RiemannianStructure(compile_field(a, dimension), dimension, kind=_kind(spec), name=name, config=config)


def _randers(spec, name, config):
    dimension = int(_require(spec, "dimension"))
    a = spec.get("a", np.eye(dimension).tolist())
    b = _require(spec, "b")
    _shape(a, (dimension, dimension), "a")
    _shape(b, (dimension,), "b")
    return RandersStructure(compile_field(a, dimension), compile_field(b, dimension), dimension,
                            name=name, config=config)


def _perturbed(spec, name, config):
    dimension = int(spec.get("dimension", 4))
    matrix = spec.get("matrix", np.diag([1.0] + [-1.0] * (dimension - 1)).tolist())
    return PerturbedQuadratic(matrix, spec.get("epsilon", 0.01), spec.get("direction", 1), name=name, config=config)


_BUILDERS = {
    Family.EUCLIDEAN: _euclidean,
    Family.MINKOWSKI: _minkowski,
    Family.QUADRATIC: _quadratic,
    Family.POINCARE: _poincare,
    Family.RIEMANNIAN: _riemannian,
    Family.RANDERS: _randers,
    Family.PERTURBED: _perturbed,
}
