from enum import Enum

import numpy as np

from finsler.enums import Convention, Scheme, Status  # finsler.enums, because just finsler would create a circular dependency
from finsler.errors import ConfigError


def plain(value):
    """
    Convert numpy values, enum members and nested containers into JSON ready python values.
    """
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, Enum):
        return value.id
    if isinstance(value, dict):
        return {str(k): plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [plain(v) for v in value]
    return value


def _array(value, default_shape=(0,)):
    return np.zeros(default_shape) if value is None else np.asarray(value, dtype=float)


class MetricSample:
    """
    The metric g_ij at one point of the slit tangent bundle.
    """

    def __init__(self, **kwargs):
        self.x = _array(kwargs.get("x"))
        self.y = _array(kwargs.get("y"))
        self.g = _array(kwargs.get("g"), (0, 0))
        self.g_inv = _array(kwargs.get("g_inv"), (0, 0))
        self.det_g = float(kwargs.get("det_g", 0.0))
        self.volume_factor = float(kwargs.get("volume_factor", 0.0))
        self.signature = tuple(kwargs.get("signature", (0, 0)))

    def to_dict(self):
        return plain({
            "x": self.x, "y": self.y, "g": self.g, "g_inv": self.g_inv, "det_g": self.det_g,
            "volume_factor": self.volume_factor, "signature": list(self.signature),
        })


class CartanTensorSample:

    def __init__(self, **kwargs):
        self.x = _array(kwargs.get("x"))
        self.y = _array(kwargs.get("y"))
        self.C = _array(kwargs.get("C"), (0, 0, 0))

    @property
    def max_abs(self):
        return float(np.max(np.abs(self.C))) if self.C.size else 0.0

    def to_dict(self):
        return plain({"x": self.x, "y": self.y, "C": self.C})


class ConnectionSample:
    """
    Everything the connections module knows at one (x, y).

    :ivar spray: G^k.
    :ivar nonlinear: N^k_i, indexed [k, i].
    :ivar berwald: G^k_ij, indexed [k, i, j].
    :ivar christoffel: Christoffel symbols of g at frozen y, [k, i, j].
    :ivar cartan_h: Horizontal Cartan coefficients, [k, i, j].
    :ivar cartan_v: Vertical Cartan coefficients C^k_ij, [k, i, j].
    """

    def __init__(self, **kwargs):
        self.x = _array(kwargs.get("x"))
        self.y = _array(kwargs.get("y"))
        self.spray = _array(kwargs.get("spray"))
        self.nonlinear = _array(kwargs.get("nonlinear"), (0, 0))
        self.berwald = _array(kwargs.get("berwald"), (0, 0, 0))
        self.christoffel = _array(kwargs.get("christoffel"), (0, 0, 0))
        self.cartan_h = _array(kwargs.get("cartan_h"), (0, 0, 0))
        self.cartan_v = _array(kwargs.get("cartan_v"), (0, 0, 0))

    def to_dict(self):
        return plain({
            "x": self.x, "y": self.y, "spray": self.spray, "nonlinear": self.nonlinear, "berwald": self.berwald,
            "christoffel": self.christoffel, "cartan_h": self.cartan_h, "cartan_v": self.cartan_v,
        })


class IntegratorConfig:

    def __init__(self, **kwargs):
        self.steps = kwargs.get("steps", 1000)
        self.scheme = kwargs.get("scheme", Scheme.RK4)
        self.drift_tolerance = float(kwargs.get("drift_tolerance", 1e-8))
        if isinstance(self.scheme, str):
            self.scheme = Scheme.match_by_id(self.scheme)
        if not isinstance(self.steps, int) or isinstance(self.steps, bool) or self.steps < 1:
            raise ConfigError("Integrator steps must be a positive integer, got {0!r}.".format(self.steps))
        if self.scheme != Scheme.RK4:
            raise ConfigError("Unknown integrator scheme, supported: {0}.".format([s.id for s in Scheme.all()]))
        if not self.drift_tolerance > 0:
            raise ConfigError("Drift tolerance must be positive, got {0!r}.".format(self.drift_tolerance))

    @classmethod
    def from_config(cls, section, **overrides):
        values = dict(section or {})
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

    def to_dict(self):
        return plain({"steps": self.steps, "scheme": self.scheme, "drift_tolerance": self.drift_tolerance})


class GeodesicPath:
    """
    Samples (t, x(t), y(t), F(x(t), y(t))) of an integrated geodesic.

    :ivar times: Strictly increasing parameter values, shape (m,).
    :ivar points: x(t), shape (m, n).
    :ivar directions: y(t), shape (m, n).
    :ivar values: F along the path, shape (m,).
    :ivar positive: Whether the structure has a norm, arc length needs one.
    :ivar drift: max |F(t) - F(0)| / |F(0)|.
    :ivar truncated: The path left the domain and was cut at the last valid sample.
    :ivar drift_exceeded: The drift is above the configured tolerance.
    """

    def __init__(self, **kwargs):
        self.times = _array(kwargs.get("times"))
        self.points = _array(kwargs.get("points"), (0, 0))
        self.directions = _array(kwargs.get("directions"), (0, 0))
        self.values = _array(kwargs.get("values"))
        self.positive = kwargs.get("positive", True)
        self.drift = float(kwargs.get("drift", 0.0))
        self.truncated = kwargs.get("truncated", False)
        self.drift_exceeded = kwargs.get("drift_exceeded", False)
        self.message = kwargs.get("message", "")

    @property
    def samples(self):
        return list(zip(self.times, self.points, self.directions, self.values))

    @property
    def flagged(self):
        return self.truncated or self.drift_exceeded

    @property
    def endpoint(self):
        return self.points[-1], self.directions[-1]

    @property
    def dimension(self):
        return self.points.shape[1]

    def header(self):
        n = self.dimension
        return ["t"] + ["x{0}".format(i) for i in range(n)] + ["y{0}".format(i) for i in range(n)] + ["F"]

    def to_rows(self):
        """
        The samples as CSV rows matching header().
        :return: A float array of shape (m, 2n + 2).
        """
        return np.column_stack([self.times, self.points, self.directions, self.values])


class FieldSample:
    """
    The field strength 2-form at one (x, y).

    :ivar F_hh: Horizontal-horizontal block F_ab, antisymmetric.
    :ivar F_hv: Horizontal-vertical block, [a, b] holds the component of dx^a ^ dy^b.
    :ivar F_hh_up: F^ab.
    :ivar F_hv_up: Both indices raised with g(x, y).
    :ivar metric: The MetricSample used for raising.
    """

    def __init__(self, **kwargs):
        self.x = _array(kwargs.get("x"))
        self.y = _array(kwargs.get("y"))
        self.F_hh = _array(kwargs.get("F_hh"), (4, 4))
        self.F_hv = _array(kwargs.get("F_hv"), (4, 4))
        self.F_hh_up = _array(kwargs.get("F_hh_up"), (4, 4))
        self.F_hv_up = _array(kwargs.get("F_hv_up"), (4, 4))
        self.metric = kwargs.get("metric", None)

    def lowered(self):
        """
        F_hh_up with both indices lowered again by the metric.
        """
        g = self.metric.g
        return g.dot(self.F_hh_up).dot(g.T)

    def to_dict(self):
        return plain({
            "x": self.x, "y": self.y, "F_hh": self.F_hh, "F_hv": self.F_hv,
            "F_hh_up": self.F_hh_up, "F_hv_up": self.F_hv_up,
        })


class CurrentSample:

    def __init__(self, **kwargs):
        self.x = _array(kwargs.get("x"))
        self.y = None if kwargs.get("y") is None else _array(kwargs.get("y"))
        self.j = _array(kwargs.get("j"), (4,))
        self.convention = kwargs.get("convention", Convention.UNKNOWN)
        self.c = float(kwargs.get("c", 1.0))

    def to_dict(self):
        return plain({"x": self.x, "y": self.y, "j": self.j, "convention": self.convention, "c": self.c})


class FirstEquationResidual:
    """
    Residual of the cyclic first Maxwell equation in the Finsler setting.

    :ivar mixed: The cyclic sum with one barred index, [a, b, c] with a the vertical slot.
    :ivar horizontal: The cyclic sum of the horizontal block, [a, b, c].
    """

    def __init__(self, **kwargs):
        self.mixed = _array(kwargs.get("mixed"), (4, 4, 4))
        self.horizontal = _array(kwargs.get("horizontal"), (4, 4, 4))

    @property
    def max_mixed(self):
        return float(np.max(np.abs(self.mixed)))

    @property
    def max_horizontal(self):
        return float(np.max(np.abs(self.horizontal)))

    @property
    def max_abs(self):
        return max(self.max_mixed, self.max_horizontal)

    def to_dict(self):
        return plain({"mixed": self.mixed, "horizontal": self.horizontal,
                      "max_mixed": self.max_mixed, "max_horizontal": self.max_horizontal})


class Check:
    """
    One named identity check over a sample set.

    :ivar residual: The max residual over the evaluated samples.
    :ivar tolerance: The bound, None for report-only checks.
    :ivar samples: The number of evaluated samples.
    :ivar skipped: Indices of samples outside of the smoothness domain.
    """

    def __init__(self, **kwargs):
        self.name = kwargs.get("name", "")
        self.residual = float(kwargs.get("residual", 0.0))
        self.tolerance = kwargs.get("tolerance", None)
        self.samples = int(kwargs.get("samples", 0))
        self.skipped = list(kwargs.get("skipped", []))
        self.status = kwargs.get("status", None) or Status.of(self.residual, self.tolerance)

    @property
    def failed(self):
        return self.status == Status.FAIL

    def to_dict(self):
        return plain({
            "name": self.name, "residual": self.residual, "tolerance": self.tolerance, "status": self.status,
            "samples": self.samples, "skipped": self.skipped,
        })


class ValidationReport:
    """
    A set of checks, failed iff one of them failed.
    """

    def __init__(self, **kwargs):
        self.structure = kwargs.get("structure", {})
        self.checks = list(kwargs.get("checks", []))

    def add(self, check):
        self.checks.append(check)
        return check

    def extend(self, other):
        self.checks.extend(other.checks)
        return self

    def check(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError("No check named {0!r}.".format(name))

    @property
    def status(self):
        return Status.FAIL if any(c.failed for c in self.checks) else Status.PASS

    @property
    def passed(self):
        return self.status == Status.PASS

    def to_dict(self):
        return plain({
            "structure": self.structure,
            "status": self.status,
            "checks": [c.to_dict() for c in sorted(self.checks, key=lambda c: c.name)],
        })


class CorrespondenceReport(ValidationReport):
    """
    Discrepancies between the Finsler and the Riemannian Maxwell pipelines, one check per compared quantity.
    """

    def __init__(self, **kwargs):
        super(CorrespondenceReport, self).__init__(**kwargs)
        self.convention = kwargs.get("convention", Convention.PAPER_RIEMANN)
        self.potential = kwargs.get("potential", {})

    @property
    def discrepancies(self):
        return {c.name: c.residual for c in self.checks}

    def to_dict(self):
        result = super(CorrespondenceReport, self).to_dict()
        result["convention"] = plain(self.convention)
        result["potential"] = plain(self.potential)
        return result
