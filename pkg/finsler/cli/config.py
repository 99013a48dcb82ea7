"""
Run configuration: the shipped defaults, an optional user file merged over them, and the command line flags.
"""
import json
import logging
import math
import os

import numpy as np

import finsler.utils
from finsler.electrodynamics import load_potential, shipped_potential
from finsler.errors import ConfigError
from finsler.objects import IntegratorConfig
from finsler.structures import load_structure, shipped_structure

logger = logging.getLogger(__name__)

SCHEMA_PATH = os.path.join(os.path.dirname(finsler.utils.CONFIG_PATH), "config.schema.json")

_TYPES = {"object": dict, "array": list, "string": str, "integer": int, "number": (int, float)}


def load_schema(path=None):
    with open(path or SCHEMA_PATH) as f:
        return json.load(f)


def check_schema(user, schema=None):
    """
    Check the top level of a user config against the shipped schema: known sections, section types and
    the version.
    :raises ConfigError: On the first mismatch.
    """
    schema = schema or load_schema()
    if not isinstance(user, dict):
        raise ConfigError("A config file must hold a JSON object.")
    properties = schema.get("properties", {})
    for key in schema.get("required", []):
        if key not in user:
            raise ConfigError("Config is missing the '{0}' field.".format(key))
    for key, value in user.items():
        if key not in properties:
            raise ConfigError("Unknown config section '{0}', known sections are {1}.".format(key, sorted(properties)))
        expected = properties[key].get("type")
        if expected and (not isinstance(value, _TYPES[expected]) or isinstance(value, bool)):
            raise ConfigError("Config section '{0}' must be of type {1}.".format(key, expected))
    version = properties.get("version", {}).get("const")
    if version is not None and user.get("version") != version:
        raise ConfigError("Config version {0!r} is not supported, expected {1}.".format(user.get("version"), version))


def read_user_config(path):
    try:
        with open(path) as f:
            user = json.load(f)
    except (IOError, OSError) as e:
        raise ConfigError("Could not read config file {0!r}: {1}".format(path, e))
    except ValueError as e:
        raise ConfigError("Config file {0!r} is not valid JSON: {1}".format(path, e))
    check_schema(user)
    return user


def parse_vector(text, name):
    """
    Parse "0,1" or "[0, 1]" into a list of floats.
    """
    if isinstance(text, (list, tuple)):
        values = list(text)
    else:
        text = text.strip()
        if text.startswith("["):
            try:
                values = json.loads(text)
            except ValueError:
                raise ConfigError("Could not parse {0} {1!r}.".format(name, text))
        else:
            values = text.split(",")
    try:
        return [float(v) for v in values]
    except (TypeError, ValueError):
        raise ConfigError("Could not parse {0} {1!r}, expected numbers.".format(name, text))


def _parse_tolerance(entry):
    if "=" not in entry:
        raise ConfigError("Tolerance override {0!r} must look like name=value.".format(entry))
    name, value = entry.split("=", 1)
    try:
        return name.strip(), float(value)
    except ValueError:
        raise ConfigError("Tolerance override {0!r} has no numeric value.".format(entry))


class RunConfig(object):
    """
    Everything a command needs, built from the defaults, a user file and the flags.

    :ivar config: The merged config dict.
    :ivar structure_spec: The structure specification, or a shipped name.
    :ivar potential_spec: The potential specification, or a shipped name, may be None.
    :ivar output: Output path, None means stdout.
    :ivar format: "json" or "csv".
    """

    def __init__(self, **kwargs):
        self.config = kwargs.get("config") or finsler.utils.load_config()
        self.structure_spec = kwargs.get("structure_spec", None)
        self.potential_spec = kwargs.get("potential_spec", None)
        self.output = kwargs.get("output", None)
        self.format = kwargs.get("format", "json")
        self.validate()

    @classmethod
    def from_args(cls, args):
        """
        Build a RunConfig from parsed command line arguments.
        :raises ConfigError: When the flags or the user file do not make a valid configuration.
        """
        config = finsler.utils.load_config()
        run = {}
        if getattr(args, "config", None):
            user = read_user_config(args.config)
            run = user.pop("run", {})
            config = finsler.utils.merge_config(config, user)
        sampler = {}
        if getattr(args, "seed", None) is not None:
            sampler["seed"] = args.seed
        if getattr(args, "samples", None) is not None:
            sampler["count"] = args.samples
        config["sampler"] = finsler.utils.merge_config(config["sampler"], sampler)
        for entry in getattr(args, "tol", None) or []:
            name, value = _parse_tolerance(entry)
            if name not in config["tolerances"]:
                raise ConfigError("Unknown tolerance {0!r}, known are {1}.".format(name, sorted(config["tolerances"])))
            config["tolerances"][name] = value
        if getattr(args, "c", None) is not None:
            config["electrodynamics"]["c"] = args.c
        return cls(config=config, structure_spec=_structure_spec(args, run, config),
                   potential_spec=_potential_spec(args, run), output=getattr(args, "output", None) or run.get("output"),
                   format=getattr(args, "format", None) or run.get("format", "json"))

    def validate(self):
        sampler = finsler.utils.Sampler.from_config(self.config["sampler"])
        sampler.box(max(np.size(sampler.low), np.size(sampler.high)))
        for name, value in self.config["tolerances"].items():
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
                raise ConfigError("Tolerance '{0}' must be a positive number, got {1!r}.".format(name, value))
        if self.format not in ("json", "csv"):
            raise ConfigError("Unknown output format {0!r}, expected json or csv.".format(self.format))

    def sampler(self):
        return finsler.utils.Sampler.from_config(self.config["sampler"])

    def integrator(self, steps=None):
        return IntegratorConfig.from_config(self.config["integrator"], steps=steps)

    def structure(self):
        """
        :raises ConfigError: When no structure is configured or it can not be built.
        """
        spec = self.structure_spec
        if spec is None:
            raise ConfigError("No structure given, use --structure, --family, --expr or a config file.")
        if isinstance(spec, str):
            return shipped_structure(spec, config=self.config)
        return load_structure(spec, name=spec.get("name"), config=self.config)

    def potential(self):
        spec = self.potential_spec
        if spec is None:
            raise ConfigError("No potential given, use --potential or a config file.")
        if isinstance(spec, str):
            return shipped_potential(spec, config=self.config)
        return load_potential(spec, name=spec.get("name"))

    def echo(self):
        """
        The parts of the configuration a report repeats.
        """
        return {
            "structure": self.structure_spec,
            "potential": self.potential_spec,
            "sampler": self.config["sampler"],
            "tolerances": self.config["tolerances"],
            "integrator": self.config["integrator"],
            "electrodynamics": self.config["electrodynamics"],
        }


def _structure_spec(args, run, config):
    if getattr(args, "expr", None):
        if not getattr(args, "dim", None):
            raise ConfigError("--expr needs --dim.")
        spec = {"expression": args.expr, "dimension": args.dim}
        if getattr(args, "kind", None):
            spec["kind"] = args.kind
        return spec
    if getattr(args, "family", None):
        # a shipped structure named after its family provides the default parameters
        shipped = config["structures"].get(args.family, {})
        spec = dict(shipped) if shipped.get("family") == args.family else {}
        spec["family"] = args.family
        if getattr(args, "dim", None) and args.dim != spec.get("dimension"):
            spec = {"family": args.family, "dimension": args.dim}
        if getattr(args, "kind", None):
            spec["kind"] = args.kind
        return spec
    if getattr(args, "structure", None):
        return args.structure
    return run.get("structure")


def _potential_spec(args, run):
    if getattr(args, "potential", None):
        return args.potential
    return run.get("potential")
