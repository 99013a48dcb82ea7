import copy
import json
import logging
import os

import numpy as np

from finsler.errors import ConfigError, ContractError

logger = logging.getLogger(__name__)

CONFIG_PATH = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "resources", "config.json")

_config_cache = {}


def load_config(path=None):
    """
    Load the config file as JSON.
    The shipped defaults are read once and cached, callers get a deep copy they are free to modify.
    :param path: The file to read, default is resources/config.json.
    :return: The config file as a dict.
    """
    path = path or CONFIG_PATH
    if path not in _config_cache:
        with open(path) as f:
            _config_cache[path] = json.load(f)
    return copy.deepcopy(_config_cache[path])


def merge_config(base, override):
    """
    Recursively merge `override` into a copy of `base`, dicts are merged key by key, everything else replaces.
    :param base: The defaults.
    :param override: The user values.
    :return: A new dict.
    """
    merged = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = merge_config(merged[key], value)
        else:
            merged[key] = copy.deepcopy(value)
    return merged


def tolerance(name, config=None):
    """
    Fetch one of the named tolerances from the config.
    :param name: "construction", "identity", "inverse", "oracle" or "symmetry".
    :param config: An already loaded config, default is the shipped one.
    :return: The tolerance as a float.
    """
    config = config or load_config()
    return float(config["tolerances"][name])


def guard(name, config=None):
    config = config or load_config()
    return float(config["guards"][name])


class Sampler(object):
    """
    Seeded plan of (x, y) samples on the tangent bundle.
    Points are uniform in the box [low, high], directions are uniform on the sphere of the given radius:
    a standard normal vector from the same generator, normalised. The generator is numpy's PCG64
    seeded with `seed`, every x is drawn before its y, so any PCG64 implementation reproduces the plan.

    :ivar count: The number of samples.
    :ivar seed: The generator seed.
    :ivar low: Lower corner of the coordinate box, a float or one float per coordinate.
    :ivar high: Upper corner of the coordinate box.
    :ivar radius: Length of the sampled directions.
    """

    def __init__(self, **kwargs):
        self.count = int(kwargs.get("count", 100))
        self.seed = int(kwargs.get("seed", 7))
        self.low = kwargs.get("low", -1.0)
        self.high = kwargs.get("high", 1.0)
        self.radius = float(kwargs.get("radius", 1.0))
        if self.count < 1:
            raise ConfigError("Sampler count must be at least 1, got {0}.".format(self.count))
        if self.radius <= 0:
            raise ConfigError("Sampler radius must be positive, got {0}.".format(self.radius))

    @classmethod
    def from_config(cls, section, **overrides):
        """
        Create a Sampler from a "sampler" config section.
        :param section: The dict with the sampler settings.
        :keyword overrides: Values that win over the section, None values are ignored.
        :return: A new Sampler.
        """
        values = dict(section or {})
        values.update({k: v for k, v in overrides.items() if v is not None})
        values.pop("generator", None)
        return cls(**values)

    def box(self, dimension):
        low = np.broadcast_to(np.asarray(self.low, dtype=float), (dimension,))
        high = np.broadcast_to(np.asarray(self.high, dtype=float), (dimension,))
        if not (np.all(np.isfinite(low)) and np.all(np.isfinite(high))):
            raise ConfigError("Sampler box bounds must be finite.")
        if np.any(high < low):
            raise ConfigError("Sampler box has high < low.")
        return low, high

    def samples(self, dimension):
        """
        Generate the samples.
        :param dimension: The dimension of the structure.
        :return: A list of (index, x, y) tuples.
        """
        low, high = self.box(dimension)
        rng = np.random.Generator(np.random.PCG64(self.seed))
        result = []
        for index in range(self.count):
            x = low + (high - low) * rng.random(dimension)
            direction = rng.standard_normal(dimension)
            y = self.radius * direction / np.linalg.norm(direction)
            result.append((index, x, y))
        return result


def as_vector(values, dimension=None, name="vector"):
    """
    Convert a sequence to a float numpy vector.
    :raises ContractError: When the length does not match the dimension.
    """
    vector = np.asarray(values, dtype=float).reshape(-1)
    if dimension is not None and vector.shape[0] != dimension:
        raise ContractError("Param '{0}' has {1} components, expected {2}.".format(name, vector.shape[0], dimension))
    return vector
