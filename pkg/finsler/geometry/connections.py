"""
Spray, nonlinear connection, Berwald and Cartan connections, and covariant derivatives on the slit tangent bundle.

Coefficient arrays are indexed [k, i, j] for the symbol with upper index k and lower indices i, j. The
covariant derivative in direction i of a field with a lower index a picks up -coefficient[m, i, a] T_m,
an upper index picks up +coefficient[a, i, m] T^m.
"""
import logging

import numpy as np

from finsler.enums import ConnectionType, DerivativeKind, IndexType
from finsler.errors import ContractError, DomainError
from finsler.geometry.core import Residuals, sampler_for
from finsler.geometry.local import LocalGeometry, ORDER_SPRAY, ORDER_CONNECTION, ORDER_BERWALD
from finsler.objects import ConnectionSample, ValidationReport
from finsler.tower import linalg, value_of
import finsler.utils

logger = logging.getLogger(__name__)

MAX_RANK = 2


class TensorField(object):
    """
    A tensor field on the slit tangent bundle, evaluated on the jets of a LocalGeometry.

    :ivar function: Callable taking a LocalGeometry and returning a tower scalar or an (n,) * rank array of them.
    :ivar indices: One IndexType per index.
    :ivar depth: How many derivatives of F the field itself uses, g has depth 2.
    """

    def __init__(self, function, indices=(), depth=0):
        self.indices = tuple(indices)
        if len(self.indices) > MAX_RANK:
            raise ContractError("Tensor fields of rank {0} are not supported, the maximum is {1}.".format(
                len(self.indices), MAX_RANK))
        for index in self.indices:
            if index not in IndexType.all():
                raise ContractError("Param 'indices' holds {0!r}, expected IndexType members.".format(index))
        self.function = function
        self.depth = int(depth)

    @classmethod
    def from_callable(cls, f, indices=()):
        """
        Wrap a plain callable f(x, y) that is generic over the tower.
        """
        return cls(lambda local: f(local.X, local.Y), indices, 0)

    @property
    def rank(self):
        return len(self.indices)

    def components(self, local):
        values = np.empty(1, dtype=object)
        result = self.function(local)
        if self.rank == 0:
            values[0] = result
            return values.reshape(())
        result = np.asarray(result, dtype=object)
        if result.shape != (local.n,) * self.rank:
            raise ContractError("Tensor field returned shape {0}, expected {1}.".format(
                result.shape, (local.n,) * self.rank))
        return result


def metric_field():
    """
    The metric g_ij as a TensorField.
    """
    return TensorField(lambda local: local.metric_jets, (IndexType.LOWER, IndexType.LOWER), depth=2)


def fundamental_field():
    return TensorField(lambda local: local.F, (), depth=0)


# ---------- pointwise operations ----------

def spray(s, x, y):
    """
    The geodesic spray G^k = 1/4 g^ki (d^2F/dx^j dy^i y^j - dF/dx^i).
    :return: A float vector of length n.
    """
    return LocalGeometry(s, x, y, order=ORDER_SPRAY).spray


def nonlinear(s, x, y):
    """
    The nonlinear connection N^k_i = dG^k/dy^i, indexed [k, i].
    """
    return LocalGeometry(s, x, y, order=ORDER_CONNECTION).nonlinear


def berwald_coeffs(s, x, y):
    """
    The Berwald coefficients G^k_ij = d^2G^k / dy^i dy^j, indexed [k, i, j].
    """
    return LocalGeometry(s, x, y, order=ORDER_BERWALD).berwald


def cartan_coeffs(s, x, y):
    """
    The coefficients of the Cartan connection.
    :return: (horizontal coefficients, C^k_ij), both indexed [k, i, j].
    """
    local = LocalGeometry(s, x, y, order=ORDER_CONNECTION)
    return local.cartan_h, local.cartan_v


def cartan_coeffs_delta_form(s, x, y):
    """
    The horizontal Cartan coefficients from the delta derivatives of g, 1/2 g^ks (d_i g_sj + d_j g_is - d_s g_ij).
    """
    return LocalGeometry(s, x, y, order=ORDER_CONNECTION).cartan_delta_form


def connection_sample(s, x, y):
    """
    All connection data at one point.
    :return: A ConnectionSample.
    """
    local = LocalGeometry(s, x, y, order=ORDER_BERWALD)
    return ConnectionSample(x=local.x, y=local.y, spray=local.spray, nonlinear=local.nonlinear,
                            berwald=local.berwald, christoffel=local.christoffel, cartan_h=local.cartan_h,
                            cartan_v=local.cartan_v)


def horizontal_derivative(s, f, x, y, i):
    """
    delta_i f = df/dx^i - N^k_i df/dy^k.
    :param s: The structure.
    :param f: A TensorField, or a callable f(x, y) generic over the tower returning a scalar or an array.
    :param x: The point.
    :param y: The direction.
    :param i: The direction slot.
    :return: A float, or a float array with the shape of f.
    """
    field = f if isinstance(f, TensorField) else TensorField.from_callable(f)
    _check_slot(s, i)
    local = LocalGeometry(s, x, y, order=max(ORDER_CONNECTION, field.depth + 1))
    components = _components_any_shape(field, local)
    result = np.vectorize(lambda v: local.delta_value(v, i), otypes=[float])(components)
    return float(result) if result.ndim == 0 else result


def _components_any_shape(field, local):
    if field.rank:
        return field.components(local)
    result = np.asarray(field.function(local), dtype=object)
    return result


def _check_slot(s, i):
    if not 0 <= int(i) < s.dimension:
        raise ContractError("Slot {0} is outside of 0..{1}.".format(i, s.dimension - 1))


def coefficients(local, kind, connection):
    """
    The connection coefficients used by a covariant derivative, indexed [k, i, j] with i the direction.
    """
    n = local.n
    if kind == DerivativeKind.HORIZONTAL:
        if connection == ConnectionType.CARTAN:
            return local.cartan_h
        if connection == ConnectionType.BERWALD:
            return local.berwald
    elif kind == DerivativeKind.VERTICAL:
        if connection == ConnectionType.CARTAN:
            return local.cartan_v
        if connection == ConnectionType.BERWALD:
            return np.zeros((n, n, n))
    raise ContractError("Unsupported derivative {0!r} for connection {1!r}.".format(kind, connection))


def covariant_gradient(values, derivatives, coeffs, indices):
    """
    Add the connection terms to a componentwise derivative.
    :param values: The tensor components, float array of shape (n,) * rank.
    :param derivatives: Componentwise derivatives with the direction index last, shape (n,) * (rank + 1).
    :param coeffs: Coefficients [k, i, j], i the direction.
    :param indices: One IndexType per tensor index.
    :return: The covariant derivative with the direction index last.
    """
    result = np.array(derivatives, dtype=float)
    for position, index in enumerate(indices):
        moved = np.moveaxis(values, position, 0)
        if index == IndexType.LOWER:
            # -sum_m G[m, i, a] T[.. m ..]
            term = -np.einsum("mia,m...->a...i", coeffs, moved)
        else:
            # +sum_m G[a, i, m] T[.. m ..]
            term = np.einsum("aim,m...->a...i", coeffs, moved)
        result += np.moveaxis(term, 0, position)
    return result


def componentwise_derivatives(local, components, kind):
    n = local.n
    shape = components.shape
    result = np.zeros(shape + (n,))
    for idx in np.ndindex(*shape):
        v = components[idx]
        for i in range(n):
            if kind == DerivativeKind.HORIZONTAL:
                result[idx + (i,)] = local.delta_value(v, i)
            else:
                result[idx + (i,)] = value_of(local.dy(v, i))
    return result


def covariant_derivative(s, T, x, y, slot, kind=DerivativeKind.HORIZONTAL, connection=ConnectionType.CARTAN):
    """
    The covariant derivative of a tensor field of rank <= 2 in one direction.
    Horizontal derivatives are delta_i plus one coefficient term per index, vertical ones d/dy^i plus one
    C^k_ij term per index (the Berwald connection has no vertical terms).
    :param s: The structure.
    :param T: A TensorField.
    :param x: The point.
    :param y: The direction.
    :param slot: The direction index, or None for all of them (direction index last).
    :param kind: DerivativeKind.HORIZONTAL or DerivativeKind.VERTICAL.
    :param connection: ConnectionType.CARTAN or ConnectionType.BERWALD.
    :return: A float array with the shape of T (plus the direction axis when slot is None).
    :raises ContractError: For a rank above 2 or an unsupported kind.
    """
    if not isinstance(T, TensorField):
        raise ContractError("Param 'T' is not of type 'TensorField'.")
    if slot is not None:
        _check_slot(s, slot)
    needed = ORDER_BERWALD if connection == ConnectionType.BERWALD else ORDER_CONNECTION
    local = LocalGeometry(s, x, y, order=max(needed, T.depth + 1))
    return covariant_derivative_local(local, T, slot, kind, connection)


def covariant_derivative_local(local, T, slot, kind, connection):
    """
    covariant_derivative on an existing expansion, see there.
    """
    components = T.components(local)
    values = linalg.values(components)
    derivatives = componentwise_derivatives(local, components, kind)
    result = covariant_gradient(values, derivatives, coefficients(local, kind, connection), T.indices)
    return result if slot is None else result[..., slot]


def berwald_geodesic_residual(s, x, y):
    """
    max_k |G^k_ij y^i y^j - 2 G^k|, the gap between the spray and the Berwald form of the geodesic equation.
    """
    local = LocalGeometry(s, x, y, order=ORDER_BERWALD)
    return float(np.max(np.abs(np.einsum("kij,i,j->k", local.berwald, local.y, local.y) - 2.0 * local.spray)))


def delta_dual(s, x, y, dx, dy):
    """
    The dual of the horizontal basis applied to a tangent vector (dx, dy) of the tangent bundle.
    :param dx: The horizontal part of the vector.
    :param dy: The vertical part.
    :return: delta y^i = dy^i + N^i_k dx^k.
    """
    N = nonlinear(s, x, y)
    dx = finsler.utils.as_vector(dx, s.dimension, "dx")
    dy = finsler.utils.as_vector(dy, s.dimension, "dy")
    return dy + N.dot(dx)


def _max_asymmetry(coeffs):
    return float(np.max(np.abs(coeffs - coeffs.transpose(0, 2, 1))))


def verify_connections(s, sampler=None, config=None, on_sample=None):
    """
    Check the identities of the spray, the nonlinear connection and the Berwald and Cartan connections.

    Checks: the Berwald contractions, N^k_i = horizontal Cartan coefficients contracted with y, the closed
    form of N, lower-index symmetry of every coefficient set, horizontal and vertical metric compatibility
    of the Cartan connection, the delta form of the Cartan coefficients, horizontal constancy of F, degree-2
    homogeneity of the spray, and for Riemannian families the reduction of both connections to the
    Christoffel symbols. The Berwald horizontal derivative of g is recorded, not asserted.
    :return: A ValidationReport.
    """
    config = config or s.config
    sampler = sampler_for(s, sampler, config)
    tol = config["tolerances"]
    residuals = Residuals()
    g_field = metric_field()
    for index, x, y in sampler.samples(s.dimension):
        try:
            local = LocalGeometry(s, x, y, order=ORDER_BERWALD)
            y = local.y
            G, N, B = local.spray, local.nonlinear, local.berwald
            scale_N = max(1.0, float(np.max(np.abs(N))))
            scale_G = max(1.0, float(np.max(np.abs(G))))
            residuals.record("berwald_contraction_nonlinear", np.max(np.abs(B.dot(y) - N)) / scale_N)
            residuals.record("berwald_contraction_spray",
                             np.max(np.abs(np.einsum("kij,i,j->k", B, y, y) - 2.0 * G)) / scale_G)
            residuals.record("cartan_contraction_nonlinear", np.max(np.abs(local.cartan_h.dot(y) - N)) / scale_N)
            residuals.record("nonlinear_closed_form", np.max(np.abs(local.nonlinear_explicit - N)) / scale_N)
            residuals.record("lower_symmetry", max(_max_asymmetry(c) for c in (
                B, local.christoffel, local.cartan_h, local.cartan_v)))
            residuals.record("metric_compatibility_horizontal", np.max(np.abs(covariant_derivative_local(
                local, g_field, None, DerivativeKind.HORIZONTAL, ConnectionType.CARTAN))))
            residuals.record("metric_compatibility_vertical", np.max(np.abs(covariant_derivative_local(
                local, g_field, None, DerivativeKind.VERTICAL, ConnectionType.CARTAN))))
            residuals.record("berwald_metric_defect", np.max(np.abs(covariant_derivative_local(
                local, g_field, None, DerivativeKind.HORIZONTAL, ConnectionType.BERWALD))))
            residuals.record("cartan_delta_form", np.max(np.abs(local.cartan_delta_form - local.cartan_h)))
            F = local.F
            residuals.record("horizontal_constancy", max(abs(local.delta_value(F, i)) for i in range(s.dimension))
                             / max(1.0, abs(F.value)))
            doubled = LocalGeometry(s, x, 2.0 * y, order=ORDER_SPRAY).spray
            residuals.record("spray_homogeneity", np.max(np.abs(doubled - 4.0 * G)) / (4.0 * scale_G))
            if s.riemannian:
                residuals.record("riemannian_reduction", max(
                    np.max(np.abs(B - local.christoffel)), np.max(np.abs(local.cartan_h - local.christoffel))))
                residuals.record("vertical_flatness", np.max(np.abs(local.cartan_v)))
        except (DomainError, ArithmeticError) as e:
            residuals.skip(index, e)
        if on_sample is not None:
            on_sample()
    tolerances = {
        "berwald_contraction_nonlinear": tol["identity"],
        "berwald_contraction_spray": tol["identity"],
        "cartan_contraction_nonlinear": tol["inverse"],
        "nonlinear_closed_form": tol["inverse"],
        "lower_symmetry": tol["symmetry"],
        "metric_compatibility_horizontal": tol["inverse"],
        "metric_compatibility_vertical": tol["inverse"],
        "berwald_metric_defect": None,
        "cartan_delta_form": tol["inverse"],
        "horizontal_constancy": tol["inverse"],
        "spray_homogeneity": tol["construction"],
    }
    if s.riemannian:
        tolerances["riemannian_reduction"] = tol["inverse"]
        tolerances["vertical_flatness"] = tol["construction"]
    return ValidationReport(structure=s.describe(), checks=residuals.checks(tolerances))
