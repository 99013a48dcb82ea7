"""
Pointwise quantities of a Finsler structure and the validation of its defining identities.
"""
import logging
import math

import numpy as np

import finsler.utils
from finsler.enums import Status
from finsler.errors import ContractError, DomainError, DegeneracyError, ConditioningError, UnsupportedKindError
from finsler.objects import MetricSample, CartanTensorSample, Check, ValidationReport
from finsler.tower import derive, value_of

logger = logging.getLogger(__name__)

HOMOGENEITY_FACTORS = (0.5, 2.0, -1.0)


def eval_F(s, x, y):
    """
    The fundamental function at a point of the slit tangent bundle.
    :param s: The structure.
    :param x: The point.
    :param y: The direction.
    :return: F(x, y) as a float.
    :raises DomainError: Inside the slit guard, outside the chart, or when the evaluation fails.
    """
    x, y = s.check_point(x, y)
    return value_of(s.fundamental(list(x), list(y)))


def eval_L(s, x, y):
    """
    The Finsler norm L(x, y) = sqrt(F(x, y)).
    :raises UnsupportedKindError: For alternating structures.
    """
    if not s.positive:
        raise UnsupportedKindError("Structure '{0}' is alternating, L is undefined.".format(s.label))
    x, y = s.check_point(x, y)
    return value_of(s.norm(list(x), list(y)))


def minkowski_norm(s, x, y):
    """
    The length of the tangent vector y in the tangent space at x, the same number as eval_L.
    """
    return eval_L(s, x, y)


def vertical_derivatives(s, x, y, order):
    """
    F and its y-derivatives up to `order` at (x, y).
    :return: [F, D1, ..., D_order] with D_k of shape (n,) * k.
    """
    x, y = s.check_point(x, y)
    n = s.dimension
    at = np.concatenate([x, y])
    return derive(lambda v: s.fundamental(v[:n], v[n:]), at, range(n, 2 * n), order)


def guarded_inverse(g, config, x=None, y=None):
    """
    Invert a metric after checking its determinant and condition number against the configured guards.
    :return: (inverse, determinant).
    :raises DegeneracyError: When |det g| < guard * scale^n.
    :raises ConditioningError: When cond(g) is above the guard.
    """
    n = g.shape[0]
    det = float(np.linalg.det(g))
    scale = max(1.0, float(np.max(np.abs(g))))
    if not abs(det) >= config["guards"]["determinant"] * scale ** n:
        raise DegeneracyError("Metric is degenerate at x={0}, y={1}, det g = {2!r}.".format(
            _listed(x), _listed(y), det))
    condition = float(np.linalg.cond(g))
    if condition > config["guards"]["condition"]:
        raise ConditioningError("Metric condition number {0:g} at x={1}, y={2} is above the guard.".format(
            condition, _listed(x), _listed(y)))
    inverse = np.linalg.inv(g)
    return 0.5 * (inverse + inverse.T), det


def _listed(v):
    return None if v is None else np.asarray(v).tolist()


def signature_of(g):
    eigenvalues = np.linalg.eigvalsh(g)
    return int(np.sum(eigenvalues > 0)), int(np.sum(eigenvalues < 0))


def metric_tensor(s, x, y):
    """
    The metric g_ij = 1/2 d^2F / dy^i dy^j with its inverse, determinant and volume factor.
    :return: A MetricSample.
    :raises DegeneracyError: When the metric is (numerically) singular.
    :raises ConditioningError: When it is too badly conditioned.
    """
    x, y = s.check_point(x, y)
    _, _, hessian = vertical_derivatives(s, x, y, 2)
    g = 0.5 * hessian
    g_inv, det = guarded_inverse(g, s.config, x, y)
    return MetricSample(x=x, y=y, g=g, g_inv=g_inv, det_g=det, volume_factor=math.sqrt(abs(det)),
                        signature=signature_of(g))


def cartan_tensor(s, x, y):
    """
    The Cartan tensor C_ijk = 1/2 dg_ij / dy^k = 1/4 d^3F / dy^i dy^j dy^k.
    :return: A CartanTensorSample.
    """
    x, y = s.check_point(x, y)
    derivatives = vertical_derivatives(s, x, y, 3)
    guarded_inverse(0.5 * derivatives[2], s.config, x, y)
    return CartanTensorSample(x=x, y=y, C=0.25 * derivatives[3])


def indicatrix_radius(s, x, u):
    """
    The radius r of the indicatrix L(x, r u) = 1 in the unit direction u.
    :param s: A positive definite structure.
    :param x: The point.
    :param u: A direction of Euclidean length 1.
    :return: r = 1 / L(x, u).
    :raises UnsupportedKindError: For alternating structures.
    """
    if not s.positive:
        raise UnsupportedKindError("Structure '{0}' is alternating, it has no indicatrix.".format(s.label))
    u = finsler.utils.as_vector(u, s.dimension, "u")
    if abs(np.linalg.norm(u) - 1.0) > 1e-12 * s.dimension:
        raise ContractError("Param 'u' must have length 1, got {0!r}.".format(float(np.linalg.norm(u))))
    return 1.0 / eval_L(s, x, u)


class Residuals(object):
    """
    Running maxima of named residuals over a sample set.
    A non-finite residual is stored as inf so it fails every finite tolerance, and an asserted check that no
    sample reached fails as well.
    """

    def __init__(self):
        self.maxima = {}
        self.counts = {}
        self.skipped = []

    def record(self, name, value):
        value = float(value)
        if not math.isfinite(value):
            value = float("inf")
        self.maxima[name] = max(self.maxima.get(name, 0.0), value)
        self.counts[name] = self.counts.get(name, 0) + 1

    def skip(self, index, error):
        logger.warning("Skipping sample %d: %s", index, error)
        self.skipped.append(index)

    def checks(self, tolerances):
        """
        :param tolerances: Mapping from check name to tolerance, None marks a report-only check.
        :return: A list of Checks, one for each name in `tolerances`.
        """
        result = []
        for name, tol in tolerances.items():
            samples = self.counts.get(name, 0)
            status = None
            if samples == 0 and tol is not None:
                logger.warning("Check %s evaluated no samples, %d were skipped", name, len(self.skipped))
                status = Status.FAIL
            result.append(Check(name=name, residual=self.maxima.get(name, 0.0), tolerance=tol, samples=samples,
                                skipped=self.skipped, status=status))
        return result


def sampler_for(s, sampler=None, config=None):
    """
    The sampler for a structure: the given one, or the config's sampler with the structure's overrides.
    """
    if sampler is not None:
        return sampler
    config = config or s.config
    return finsler.utils.Sampler.from_config(finsler.utils.merge_config(config["sampler"], s.sampler_section))


def _relative(residual, scale):
    return abs(residual) / max(abs(scale), 1e-300)


def validate(s, sampler=None, config=None, on_sample=None):
    """
    Check the defining identities of a structure on a seeded sample set.

    Checks: homogeneity of F (and of L for positive structures), reversibility when it is not asserted,
    positivity, both Euler identities, degree-0 homogeneity of g, nondegeneracy, constancy of the signature,
    symmetry and y-contraction of the Cartan tensor, and Cartan flatness (asserted for Riemannian families,
    recorded otherwise).
    Samples outside the smoothness domain are skipped, not fatal, and the signature is read off the first sample
    that evaluates.

    :param s: The structure.
    :param sampler: A Sampler, default is the config's with the structure's overrides.
    :param config: Tolerances and guards, default is the structure's config.
    :param on_sample: Optional callable invoked after every sample, e.g. a progress bar.
    :return: A ValidationReport.
    """
    config = config or s.config
    sampler = sampler_for(s, sampler, config)
    tol = config["tolerances"]
    residuals = Residuals()
    reference = None
    evaluated = 0
    degenerate = 0
    signature_changes = 0
    nonpositive = 0
    for index, x, y in sampler.samples(s.dimension):
        try:
            F, D1, D2, D3 = vertical_derivatives(s, x, y, 3)
            g = 0.5 * D2
            C = 0.25 * D3
            floor = 1e-12 * float(y.dot(y))
            scale_F = max(abs(F), floor)
            scale_g = max(1.0, float(np.max(np.abs(g))))
            for lam in HOMOGENEITY_FACTORS:
                name = "homogeneity" if lam > 0 or s.reversible else "reversibility"
                residuals.record(name, _relative(eval_F(s, x, lam * y) - lam * lam * F, scale_F))
                if lam > 0:
                    _, _, D2_scaled = vertical_derivatives(s, x, lam * y, 2)
                    residuals.record("metric_scaling", np.max(np.abs(0.5 * D2_scaled - g)) / scale_g)
                if s.positive and lam > 0:
                    L = eval_L(s, x, y)
                    residuals.record("homogeneity", _relative(eval_L(s, x, lam * y) - lam * L, L))
            if s.positive and not F > 0:
                nonpositive += 1
            residuals.record("euler_first", _relative(D1.dot(y) - 2.0 * F, scale_F))
            residuals.record("euler_second", _relative(y.dot(g).dot(y) - F, scale_F))
            residuals.record("metric_degree_zero", np.max(np.abs(2.0 * C.dot(y))) / scale_g)
            residuals.record("cartan_contraction", np.max(np.abs(C.dot(y))) / scale_g)
            residuals.record("cartan_symmetry", max(
                np.max(np.abs(C - C.transpose(axes))) for axes in ((1, 0, 2), (0, 2, 1), (2, 1, 0))))
            residuals.record("cartan_flatness", np.max(np.abs(C)))
            try:
                guarded_inverse(g, config, x, y)
                if reference is None:
                    reference = signature_of(g)
                elif signature_of(g) != reference:
                    signature_changes += 1
            except DegeneracyError as e:
                logger.info("Sample %d is degenerate: %s", index, e)
                degenerate += 1
            evaluated += 1
        except DomainError as e:
            residuals.skip(index, e)
        if on_sample is not None:
            on_sample()
    if evaluated:
        residuals.record("nondegeneracy", degenerate)
        residuals.record("signature", signature_changes)
    tolerances = {
        "homogeneity": tol["identity"],
        "euler_first": tol["identity"],
        "euler_second": tol["identity"],
        "metric_degree_zero": tol["identity"],
        "metric_scaling": tol["construction"],
        "cartan_contraction": tol["identity"],
        "cartan_symmetry": tol["symmetry"],
        "cartan_flatness": tol["construction"] if s.riemannian else None,
        "nondegeneracy": 0.0,
        "signature": 0.0,
    }
    if not s.reversible:
        tolerances["reversibility"] = None
    if s.positive:
        if evaluated:
            residuals.record("positivity", nonpositive)
        tolerances["positivity"] = 0.0
    report = ValidationReport(structure=s.describe(), checks=residuals.checks(tolerances))
    logger.debug("Validated %s: %s", s.label, report.status.id)
    return report
