"""
The geometrized Maxwell equations on spacetime (n = 4, index 0 timelike).

The Riemannian pipeline works with plain x-partials of an x-only potential and the metric at a
reference direction. The Finsler pipeline splits F = dA into the horizontal block F_ab = delta_a A_b -
delta_b A_a and the mixed block F_ab~ = -dA_a/dy^b, and uses the Cartan connection for covariant
derivatives: horizontal for unbarred indices, vertical for barred ones.

Second equation conventions: PAPER_RIEMANN is j^b = +c/4pi 1/v d_a(v F^ab), PAPER_FINSLER is
j^a = -c/4pi 1/v [delta_b(v F^ab) + d/dy^b (v F^ab~)], v = sqrt|det g|. F^ab is antisymmetric, so the
two forms describe the same current, each is evaluated literally.
"""
import logging
import math

import numpy as np

import finsler.utils
from finsler import tower
from finsler.enums import Convention, DerivativeKind, IndexType
from finsler.errors import ContractError, DomainError, WrongOperationError
from finsler.electrodynamics.potential import DIMENSION, PotentialField
from finsler.geometry.connections import covariant_gradient, componentwise_derivatives
from finsler.geometry.core import Residuals, cartan_tensor, metric_tensor, signature_of
from finsler.geometry.local import LocalGeometry, ORDER_CONNECTION, ORDER_BERWALD, truncate, order_of
from finsler.objects import (
    CorrespondenceReport, CurrentSample, FieldSample, FirstEquationResidual, MetricSample,
)
from finsler.tower import Jet, derive, linalg, value_of
from finsler.expr import evaluate, bindings

logger = logging.getLogger(__name__)

LOWER_PAIR = (IndexType.LOWER, IndexType.LOWER)


# ---------- helpers ----------

def _require_spacetime(s):
    if s.dimension != DIMENSION:
        raise ContractError("Maxwell equations need a structure of dimension {0}, '{1}' has {2}.".format(
            DIMENSION, s.label, s.dimension))


def _require_potential(A):
    if not isinstance(A, PotentialField):
        raise ContractError("Param 'A' is not of type 'PotentialField'.")


def _require_x_only(A):
    _require_potential(A)
    if A.y_dependent:
        raise WrongOperationError("Potential '{0}' depends on y, use the Finsler pipeline.".format(A.label))


def _reference(s, y_ref):
    if y_ref is None:
        y_ref = s.config["electrodynamics"]["reference_direction"]
    return finsler.utils.as_vector(y_ref, DIMENSION, "y_ref")


def _speed(s, c):
    return float(s.config["electrodynamics"]["c"] if c is None else c)


def _convention(convention):
    if convention not in Convention.all():
        raise ContractError("Unknown sign convention {0!r}.".format(convention))
    return convention


def _is_zero(v):
    return not isinstance(v, Jet) and v == 0.0


def _sandwich(g_inv, F):
    """
    g^am F_mk g^kb over the tower, skipping exact zeros.
    """
    n = F.shape[0]
    result = np.empty((n, n), dtype=object)
    for a in range(n):
        for b in range(n):
            total = 0.0
            for m in range(n):
                if _is_zero(g_inv[a, m]):
                    continue
                for k in range(n):
                    if _is_zero(F[m, k]) or _is_zero(g_inv[k, b]):
                        continue
                    total = total + g_inv[a, m] * F[m, k] * g_inv[k, b]
            result[a, b] = total
    return result


def _volume(local):
    """
    v = sqrt|det g| as a jet, and the inverse metric as jets.
    """
    g = local.metric_jets
    local.inverse_metric  # degeneracy and conditioning guards
    return tower.sqrt(tower.absolute(linalg.det(g))), linalg.inverse(g)


def _metric_sample(local):
    det = local.det_metric
    return MetricSample(x=local.x, y=local.y, g=local.metric, g_inv=local.inverse_metric, det_g=det,
                        volume_factor=math.sqrt(abs(det)), signature=signature_of(local.metric))


def _component_derivatives(A, x, order):
    """
    The x-derivative tensors of every component of an x-only potential.
    :return: A list with one [value, D1, ..., D_order] per component.
    """
    return [derive(lambda v, ast=ast: evaluate(ast, bindings(v)), x, range(DIMENSION), order)
            for ast in A.components]


# ---------- Riemannian pipeline ----------

def field_strength_riemann(A, s, x, y_ref=None):
    """
    F_ab = dA_b/dx^a - dA_a/dx^b for an x-only potential, raised with g at (x, y_ref).
    :param A: An x-only PotentialField.
    :param s: The structure that provides the metric.
    :param x: The point.
    :param y_ref: The direction the metric is read at, default is the config's reference direction.
    :return: A FieldSample with a zero mixed block.
    :raises WrongOperationError: For a y-dependent potential.
    """
    _require_x_only(A)
    _require_spacetime(s)
    x = finsler.utils.as_vector(x, DIMENSION, "x")
    y_ref = _reference(s, y_ref)
    D = np.array([d[1] for d in _component_derivatives(A, x, 1)])
    F = D.T - D
    metric = metric_tensor(s, x, y_ref)
    zeros = np.zeros((DIMENSION, DIMENSION))
    return FieldSample(x=x, y=y_ref, F_hh=F, F_hv=zeros, F_hh_up=metric.g_inv.dot(F).dot(metric.g_inv),
                       F_hv_up=zeros, metric=metric)


def first_equation_residual_riemann(A, x):
    """
    The cyclic sum F_ab;c + F_bc;a + F_ca;b with plain partials (the Christoffel terms cancel).
    :return: A float array R[a, b, c].
    """
    _require_x_only(A)
    x = finsler.utils.as_vector(x, DIMENSION, "x")
    H = np.array([d[2] for d in _component_derivatives(A, x, 2)])
    # dF[a, b, c] = d_c F_ab
    dF = np.einsum("bac->abc", H) - H
    return dF + np.transpose(dF, (1, 2, 0)) + np.transpose(dF, (2, 0, 1))


def _riemann_flux(A, local):
    """
    v F^ab as jets, with v.
    """
    a = [evaluate(ast, bindings(local.X)) for ast in A.components]
    n = DIMENSION
    F = np.empty((n, n), dtype=object)
    for i in range(n):
        for j in range(n):
            F[i, j] = local.dx(a[j], i) - local.dx(a[i], j) if i != j else 0.0
    v, g_inv = _volume(local)
    W = _sandwich(g_inv, F)
    return np.array([[v * W[i, j] for j in range(n)] for i in range(n)], dtype=object), v


def _riemann_current_jets(A, local, convention, c):
    W, v = _riemann_flux(A, local)
    n = DIMENSION
    k = c / (4.0 * math.pi)
    j = []
    for b in range(n):
        if convention == Convention.PAPER_RIEMANN:
            total = sum((local.dx(W[a, b], a) for a in range(n)), 0.0)
            current = k * total / v
        else:
            total = sum((local.dx(W[b, a], a) for a in range(n)), 0.0)
            current = -k * total / v
        j.append(truncate(current, order_of(total)))
    return j


def _check_flat_direction(A, s, x, y_ref):
    _require_x_only(A)
    _require_spacetime(s)
    cartan = cartan_tensor(s, x, y_ref)
    if cartan.max_abs > s.config["tolerances"]["construction"]:
        raise WrongOperationError("The metric of '{0}' depends on y (max |C| = {1:g}), use the Finsler pipeline."
                                  .format(s.label, cartan.max_abs))


def source_current_riemann(A, s, x, y_ref=None, convention=Convention.PAPER_RIEMANN, c=None):
    """
    The current of the second Maxwell equation in divergence form, j^b = c/4pi 1/v d_a(v F^ab).
    PAPER_FINSLER evaluates -c/4pi 1/v d_b(v F^ab) instead. The leading sign flips together with the contracted
    index, so for the antisymmetric F^ab both conventions give the same current.
    :param A: An x-only PotentialField.
    :param s: A structure whose metric does not depend on y.
    :param x: The point.
    :param y_ref: The direction the metric is read at.
    :param convention: Which form of the equation to evaluate.
    :param c: The speed constant, default from the config.
    :return: A CurrentSample.
    :raises WrongOperationError: For a y-dependent potential or metric.
    """
    x = finsler.utils.as_vector(x, DIMENSION, "x")
    y_ref = _reference(s, y_ref)
    _check_flat_direction(A, s, x, y_ref)
    convention = _convention(convention)
    c = _speed(s, c)
    local = LocalGeometry(s, x, y_ref, order=ORDER_CONNECTION)
    j = np.array([value_of(v) for v in _riemann_current_jets(A, local, convention, c)])
    return CurrentSample(x=local.x, j=j, convention=convention, c=c)


def current_divergence_riemann(A, s, x, y_ref=None, convention=Convention.PAPER_RIEMANN, c=None):
    """
    d_a j^a of the Riemannian current, zero for any potential on a flat metric.
    """
    x = finsler.utils.as_vector(x, DIMENSION, "x")
    y_ref = _reference(s, y_ref)
    _check_flat_direction(A, s, x, y_ref)
    local = LocalGeometry(s, x, y_ref, order=ORDER_BERWALD)
    j = _riemann_current_jets(A, local, _convention(convention), _speed(s, c))
    return float(sum(value_of(local.dx(j[a], a)) for a in range(DIMENSION)))


# ---------- Finsler pipeline ----------

def _finsler_blocks(A, local):
    """
    The horizontal and mixed blocks of F = dA as jets.
    """
    a = A(local.X, local.Y)
    n = DIMENSION
    F_hh = np.empty((n, n), dtype=object)
    F_hv = np.empty((n, n), dtype=object)
    for i in range(n):
        for j in range(n):
            F_hh[i, j] = local.delta(a[j], i) - local.delta(a[i], j) if i != j else 0.0
            F_hv[i, j] = -local.dy(a[i], j)
    return F_hh, F_hv


def _finsler_local(A, s, x, y, order):
    _require_potential(A)
    _require_spacetime(s)
    return LocalGeometry(s, x, y, order=order)


def _field_sample(A, local):
    F_hh, F_hv = (linalg.values(block) for block in _finsler_blocks(A, local))
    g_inv = local.inverse_metric
    return FieldSample(x=local.x, y=local.y, F_hh=F_hh, F_hv=F_hv, F_hh_up=g_inv.dot(F_hh).dot(g_inv),
                       F_hv_up=g_inv.dot(F_hv).dot(g_inv), metric=_metric_sample(local))


def field_strength_finsler(A, s, x, y):
    """
    F_ab = delta_a A_b - delta_b A_a and F_ab~ = -dA_a/dy^b, raised with g(x, y).
    :return: A FieldSample.
    """
    return _field_sample(A, _finsler_local(A, s, x, y, ORDER_CONNECTION))


def _first_residual(A, local):
    F_hh, F_hv = _finsler_blocks(A, local)
    h, v = local.cartan_h, local.cartan_v
    mixed_h = covariant_gradient(linalg.values(F_hv), componentwise_derivatives(local, F_hv, DerivativeKind.HORIZONTAL),
                                 h, LOWER_PAIR)
    hh_h = covariant_gradient(linalg.values(F_hh), componentwise_derivatives(local, F_hh, DerivativeKind.HORIZONTAL),
                              h, LOWER_PAIR)
    hh_v = covariant_gradient(linalg.values(F_hh), componentwise_derivatives(local, F_hh, DerivativeKind.VERTICAL),
                              v, LOWER_PAIR)
    # F_a~b;c + F_ca~;b + F_bc;a~ with F_a~b = -F_hv[b, a]
    mixed = (-np.einsum("bac->abc", mixed_h) + np.einsum("cab->abc", mixed_h)
             + np.einsum("bca->abc", hh_v))
    horizontal = hh_h + np.einsum("bca->abc", hh_h) + np.einsum("cab->abc", hh_h)
    return FirstEquationResidual(mixed=mixed, horizontal=horizontal)


def first_equation_residual_finsler(A, s, x, y):
    """
    The cyclic first equation with one barred index, plus the purely horizontal cyclic sum.
    Unbarred derivatives are horizontal Cartan derivatives, barred ones vertical Cartan derivatives.
    :return: A FirstEquationResidual, mixed[a, b, c] with a the barred index.
    """
    return _first_residual(A, _finsler_local(A, s, x, y, ORDER_BERWALD))


def _finsler_current(A, local, convention, c):
    F_hh, F_hv = _finsler_blocks(A, local)
    v, g_inv = _volume(local)
    n = DIMENSION
    W = _sandwich(g_inv, F_hh)
    U = _sandwich(g_inv, F_hv)
    W = np.array([[v * W[a, b] for b in range(n)] for a in range(n)], dtype=object)
    U = np.array([[v * U[a, b] for b in range(n)] for a in range(n)], dtype=object)
    grad_W = componentwise_derivatives(local, W, DerivativeKind.HORIZONTAL)
    grad_U = componentwise_derivatives(local, U, DerivativeKind.VERTICAL)
    k = c / (4.0 * math.pi) / value_of(v)
    if convention == Convention.PAPER_FINSLER:
        return -k * (np.einsum("abb->a", grad_W) + np.einsum("abb->a", grad_U))
    # F^a~b = -F^ba~
    return k * (np.einsum("aba->b", grad_W) - np.einsum("abb->a", grad_U))


def source_current_finsler(A, s, x, y, convention=Convention.PAPER_FINSLER, c=None):
    """
    The current of the second Maxwell equation on the tangent bundle,
    j^a = -c/4pi 1/v [delta_b(v F^ab) + d/dy^b (v F^ab~)], v = sqrt|det g(x, y)|.
    :param convention: PAPER_FINSLER evaluates the form above, PAPER_RIEMANN evaluates +c/4pi with the divergence
        over the first index of the horizontal block. Both give the same current since F^ab = -F^ba.
    :return: A CurrentSample.
    """
    local = _finsler_local(A, s, x, y, ORDER_BERWALD)
    convention = _convention(convention)
    c = _speed(s, c)
    return CurrentSample(x=local.x, y=local.y, j=_finsler_current(A, local, convention, c), convention=convention, c=c)


# ---------- correspondence ----------

def correspondence_report(A, s, sampler=None, config=None, convention=Convention.PAPER_RIEMANN, on_sample=None):
    """
    Run both pipelines on a sample set and compare them.

    Checks: field_strength and raised_field_strength (horizontal block against the Riemannian field),
    vertical_block (the mixed block, zero for x-only potentials), first_equation (horizontal cyclic sum
    against the Riemannian one, and the mixed sum against zero), current (both currents in one convention)
    and convention_consistency (the Finsler current in both conventions).
    :param A: An x-only PotentialField.
    :param s: A Riemannian-family structure of dimension 4.
    :param sampler: A Sampler, default merges the config's with the structure's and the potential's overrides.
    :param convention: The convention both currents are compared in.
    :return: A CorrespondenceReport.
    :raises WrongOperationError: For a y-dependent potential or a non-Riemannian structure.
    """
    _require_x_only(A)
    _require_spacetime(s)
    if not s.riemannian:
        raise WrongOperationError("Structure '{0}' is not Riemannian, the pipelines do not correspond.".format(s.label))
    config = config or s.config
    convention = _convention(convention)
    if sampler is None:
        section = finsler.utils.merge_config(config["sampler"], s.sampler_section)
        sampler = finsler.utils.Sampler.from_config(finsler.utils.merge_config(section, A.sampler_section))
    c = _speed(s, None)
    other = Convention.PAPER_FINSLER if convention == Convention.PAPER_RIEMANN else Convention.PAPER_RIEMANN
    residuals = Residuals()
    for index, x, y in sampler.samples(DIMENSION):
        try:
            local = LocalGeometry(s, x, y, order=ORDER_BERWALD)
            x, y = local.x, local.y
            riemann = field_strength_riemann(A, s, x, y)
            field = _field_sample(A, local)
            residuals.record("field_strength", np.max(np.abs(field.F_hh - riemann.F_hh)))
            residuals.record("raised_field_strength", np.max(np.abs(field.F_hh_up - riemann.F_hh_up)))
            residuals.record("vertical_block", max(np.max(np.abs(field.F_hv)), np.max(np.abs(field.F_hv_up))))
            first = _first_residual(A, local)
            residuals.record("first_equation", max(
                np.max(np.abs(first.horizontal - first_equation_residual_riemann(A, x))), first.max_mixed))
            j_riemann = source_current_riemann(A, s, x, y, convention=convention, c=c).j
            j_finsler = _finsler_current(A, local, convention, c)
            residuals.record("current", np.max(np.abs(j_finsler - j_riemann)))
            residuals.record("convention_consistency",
                             np.max(np.abs(_finsler_current(A, local, other, c) - j_finsler)))
        except (DomainError, ArithmeticError) as e:
            residuals.skip(index, e)
        if on_sample is not None:
            on_sample()
    tol = config["tolerances"]
    tolerances = {
        "field_strength": tol["inverse"],
        "raised_field_strength": tol["inverse"],
        "vertical_block": tol["symmetry"],
        "first_equation": tol["inverse"],
        "current": tol["inverse"],
        "convention_consistency": tol["inverse"],
    }
    return CorrespondenceReport(structure=s.describe(), potential=A.describe(), checks=residuals.checks(tolerances),
                                convention=convention)
