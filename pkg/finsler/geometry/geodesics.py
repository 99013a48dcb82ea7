"""
Geodesics as integral curves of the spray, x' = y and y' = -2 G(x, y), with classical fixed-step RK4.
"""
import logging

import numpy as np
from scipy.integrate import simpson

import finsler.utils
from finsler.errors import ContractError, DomainError, UnsupportedKindError
from finsler.geometry.core import eval_F, eval_L
from finsler.geometry.local import LocalGeometry, ORDER_SPRAY
from finsler.objects import GeodesicPath, IntegratorConfig

logger = logging.getLogger(__name__)


def spray_flow_field(s, x, y):
    """
    The spray as a vector field on the tangent bundle, X = y^i d/dx^i - 2 G^k d/dy^k.
    :return: The 2n-vector (y, -2 G).
    """
    local = LocalGeometry(s, x, y, order=ORDER_SPRAY)
    return np.concatenate([local.y, -2.0 * local.spray])


def flow(s):
    """
    The spray flow field as a function of the stacked state (x, y).
    """
    n = s.dimension
    return lambda state: spray_flow_field(s, state[:n], state[n:])


def rk4_step(field, state, h):
    """
    One classical Runge-Kutta step.
    :param field: The right hand side, a function of the state.
    :param state: The current state, float vector.
    :param h: The step.
    :return: The new state.
    """
    k1 = field(state)
    k2 = field(state + 0.5 * h * k1)
    k3 = field(state + 0.5 * h * k2)
    k4 = field(state + h * k3)
    return state + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def integrate(s, x0, y0, t_end, cfg=None):
    """
    Integrate the geodesic through (x0, y0) up to the parameter t_end.

    Every accepted state is checked against the structure's guards, the first violation ends the path at
    the last valid sample and flags it as truncated. The path is also flagged when F drifts from its
    initial value by more than the configured tolerance.
    :param s: The structure.
    :param x0: The initial point.
    :param y0: The initial direction.
    :param t_end: The final parameter, > 0.
    :param cfg: An IntegratorConfig, default is the config's "integrator" section.
    :return: A GeodesicPath.
    :raises ContractError: When t_end is not positive.
    :raises DegeneracyError: When the metric degenerates along the path.
    """
    if not float(t_end) > 0:
        raise ContractError("Param 't_end' must be positive, got {0!r}.".format(t_end))
    cfg = cfg or IntegratorConfig.from_config(s.config.get("integrator"))
    x0, y0 = s.check_point(x0, y0)
    n = s.dimension
    h = float(t_end) / cfg.steps
    field = flow(s)
    state = np.concatenate([x0, y0])
    times = [0.0]
    states = [state]
    values = [eval_F(s, x0, y0)]
    message = ""
    truncated = False
    for step in range(1, cfg.steps + 1):
        try:
            state = rk4_step(field, state, h)
            values.append(eval_F(s, state[:n], state[n:]))
        except DomainError as e:
            truncated = True
            message = "Left the domain at step {0} (t = {1!r}): {2}".format(step, step * h, e)
            logger.warning("Geodesic of %s truncated. %s", s.label, message)
            break
        times.append(step * h)
        states.append(state)
    states = np.array(states)
    values = np.array(values)
    scale = max(abs(values[0]), 1e-12 * float(y0.dot(y0)))
    drift = float(np.max(np.abs(values - values[0]))) / scale
    drift_exceeded = drift > cfg.drift_tolerance
    if drift_exceeded:
        logger.warning("Geodesic of %s drifts by %g, above the tolerance %g.", s.label, drift, cfg.drift_tolerance)
    return GeodesicPath(times=np.array(times), points=states[:, :n], directions=states[:, n:], values=values,
                        positive=s.positive, drift=drift, truncated=truncated, drift_exceeded=drift_exceeded,
                        message=message)


def _simpson(samples, times):
    if len(times) < 2:
        return 0.0
    return float(simpson(samples, x=times))


def arc_length(path):
    """
    The length of the path, the Simpson integral of L = sqrt(F) over the samples.
    :raises UnsupportedKindError: For paths of alternating structures.
    """
    if not path.positive:
        raise UnsupportedKindError("Arc length needs a positive definite structure.")
    return _simpson(np.sqrt(np.maximum(path.values, 0.0)), path.times)


def energy(path):
    """
    The Simpson integral of F over the samples.
    """
    return _simpson(path.values, path.times)


def curve_length(s, points, velocities, times):
    """
    The length of an arbitrary sampled curve.
    :param s: A positive definite structure.
    :param points: x(t), shape (m, n).
    :param velocities: dx/dt, shape (m, n).
    :param times: The parameter values, shape (m,).
    :return: The Simpson integral of L(x(t), dx/dt).
    """
    times = finsler.utils.as_vector(times, name="times")
    points = np.asarray(points, dtype=float)
    velocities = np.asarray(velocities, dtype=float)
    if points.shape != velocities.shape or points.shape[0] != times.shape[0]:
        raise ContractError("Curve samples have mismatched shapes {0}, {1} and {2}.".format(
            points.shape, velocities.shape, times.shape))
    lengths = np.array([eval_L(s, x, v) for x, v in zip(points, velocities)])
    return _simpson(lengths, times)
