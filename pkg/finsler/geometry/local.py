"""
One Taylor expansion of F around a point of the slit tangent bundle, and everything derived from it.

The point coordinates x^i are seeds 0..n-1 and the directions y^i are seeds n..2n-1 of jets of a fixed
order K. Every geometric object is a fixed number of derivatives of F, so it comes out as a jet of a
lower order: g and the spray G have order K - 2, the Cartan tensor and N order K - 3, the Berwald
coefficients order K - 4. Asking for an object the order does not cover is a ContractError.
"""
import logging
from functools import cached_property

import numpy as np

from finsler.errors import ContractError
from finsler.geometry.core import guarded_inverse
from finsler.tower import Jet, linalg, value_of

logger = logging.getLogger(__name__)

ORDER_SPRAY = 2
ORDER_CONNECTION = 3
ORDER_BERWALD = 4


def _lower(v, slot):
    return v.partial(slot) if isinstance(v, Jet) else 0.0


def order_of(v):
    return v.order if isinstance(v, Jet) else 0


def truncate(v, order):
    """
    Drop the derivatives a jet can not know, e.g. after mixing it with a float that stands for a truncated jet.
    """
    if not isinstance(v, Jet):
        return v
    return v.truncate(max(order, 0))


class LocalGeometry(object):
    """
    :ivar structure: The structure.
    :ivar x: The point, float vector.
    :ivar y: The direction, float vector.
    :ivar order: The jet order K.
    :ivar X: The seeded point jets.
    :ivar Y: The seeded direction jets.
    :ivar F: The jet of F(X, Y).
    """

    def __init__(self, structure, x, y, order=ORDER_CONNECTION, fundamental=None, check=True):
        if check:
            x, y = structure.check_point(x, y)
        else:
            x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
        self.structure = structure
        self.n = structure.dimension
        self.order = order
        self.x = x
        self.y = y
        self.X, self.Y = self.seeds(order)
        self.F = (fundamental or structure.fundamental)(self.X, self.Y)
        if not isinstance(self.F, Jet):
            raise ContractError("F does not depend on the direction, it can not define a metric.")
        self._config = structure.config

    def seeds(self, order):
        """
        Fresh seed jets of the given order at (x, y).
        :return: (X, Y), two lists of n jets over 2n seeds.
        """
        n = self.n
        X = [Jet.variable(self.x[i], i, 2 * n, order) for i in range(n)]
        Y = [Jet.variable(self.y[i], n + i, 2 * n, order) for i in range(n)]
        return X, Y

    def require(self, order, what):
        if self.order < order:
            raise ContractError("{0} needs a jet order of at least {1}, this expansion has {2}.".format(
                what, order, self.order))

    # ---------- derivatives ----------

    def dx(self, v, i):
        return _lower(v, i)

    def dy(self, v, i):
        return _lower(v, self.n + i)

    def delta(self, v, i):
        """
        The horizontal derivative d_i v - N^k_i dv/dy^k as a jet, one order below v and N.
        """
        total = self.dx(v, i)
        for k in range(self.n):
            d = self.dy(v, k)
            if isinstance(d, Jet) or d != 0.0:
                total = total - self.nonlinear_jets[k, i] * d
        return truncate(total, min(order_of(v), self.order - 2) - 1)

    def delta_value(self, v, i):
        """
        The horizontal derivative of v at the base point.
        """
        total = value_of(self.dx(v, i))
        for k in range(self.n):
            total -= self.nonlinear[k, i] * value_of(self.dy(v, k))
        return total

    # ---------- metric and Cartan tensor ----------

    @cached_property
    def metric_jets(self):
        """
        g_ij = 1/2 d^2F / dy^i dy^j as an object array of jets of order K - 2.
        """
        n = self.n
        g = np.empty((n, n), dtype=object)
        first = [self.dy(self.F, i) for i in range(n)]
        for i in range(n):
            for j in range(i, n):
                g[i, j] = 0.5 * self.dy(first[i], j)
                g[j, i] = g[i, j]
        return g

    @cached_property
    def metric(self):
        """
        g_ij at the base point, exactly symmetric.
        """
        n = self.n
        return 0.5 * self.F.tensor(2)[n:, n:]

    @cached_property
    def det_metric(self):
        return self._guarded[1]

    @cached_property
    def inverse_metric(self):
        """
        g^ij at the base point.
        :raises DegeneracyError: When |det g| is below the determinant guard.
        :raises ConditioningError: When the condition number is above the condition guard.
        """
        return self._guarded[0]

    @cached_property
    def _guarded(self):
        return guarded_inverse(self.metric, self._config, self.x, self.y)

    @cached_property
    def metric_x(self):
        """
        dg_ij / dx^s at the base point, indexed [s, i, j].
        """
        self.require(3, "The x-derivative of g")
        n = self.n
        return 0.5 * self.F.tensor(3)[:n, n:, n:]

    @cached_property
    def cartan_lower(self):
        """
        C_ijk = 1/4 d^3F / dy^i dy^j dy^k at the base point, exactly symmetric.
        """
        self.require(3, "The Cartan tensor")
        n = self.n
        return 0.25 * self.F.tensor(3)[n:, n:, n:]

    @cached_property
    def cartan_v(self):
        """
        C^k_ij = g^ks C_sij, indexed [k, i, j].
        """
        return np.einsum("ks,sij->kij", self.inverse_metric, self.cartan_lower)

    # ---------- spray and nonlinear connection ----------

    @cached_property
    def spray_source(self):
        """
        A_i = d^2F/dx^j dy^i y^j - dF/dx^i, jets of order K - 2.
        """
        n = self.n
        source = np.empty(n, dtype=object)
        for i in range(n):
            dyi = self.dy(self.F, i)
            total = 0.0 - self.dx(self.F, i)
            for j in range(n):
                total = total + self.dx(dyi, j) * self.Y[j]
            source[i] = truncate(total, self.order - 2)
        return source

    @cached_property
    def spray_jets(self):
        """
        G^k = 1/4 g^ki A_i, jets of order K - 2.
        """
        self.require(ORDER_SPRAY, "The spray")
        self.inverse_metric  # degeneracy and conditioning guards
        g = self.metric_jets
        solution = linalg.solve(g, self.spray_source)
        return np.array([0.25 * v for v in solution], dtype=object)

    @cached_property
    def spray(self):
        return np.array([value_of(v) for v in self.spray_jets])

    @cached_property
    def nonlinear_jets(self):
        """
        N^k_i = dG^k / dy^i, indexed [k, i], jets of order K - 3.
        """
        self.require(3, "The nonlinear connection")
        n = self.n
        N = np.empty((n, n), dtype=object)
        for k in range(n):
            for i in range(n):
                N[k, i] = self.dy(self.spray_jets[k], i)
        return N

    @cached_property
    def nonlinear(self):
        return linalg.values(self.nonlinear_jets)

    @cached_property
    def nonlinear_explicit(self):
        """
        N^k_i from its closed form g^ka (1/4 dA_a/dy^i - 2 C_abi G^b), without differentiating G.
        """
        self.require(3, "The nonlinear connection")
        n = self.n
        t = self.F.tensor(3)
        h = self.F.tensor(2)
        dA = np.zeros((n, n))
        for a in range(n):
            for i in range(n):
                dA[a, i] = (sum(t[j, n + i, n + a] * self.y[j] for j in range(n))
                            + h[i, n + a] - h[a, n + i])
        rhs = 0.25 * dA - 2.0 * np.einsum("abi,b->ai", self.cartan_lower, self.spray)
        return self.inverse_metric.dot(rhs)

    @cached_property
    def berwald(self):
        """
        G^k_ij = d^2 G^k / dy^i dy^j, indexed [k, i, j], exactly symmetric in (i, j).
        """
        self.require(ORDER_BERWALD, "The Berwald coefficients")
        n = self.n
        result = np.zeros((n, n, n))
        for k in range(n):
            G = self.spray_jets[k]
            if isinstance(G, Jet):
                result[k] = G.tensor(2)[n:, n:]
        return result

    # ---------- Cartan connection ----------

    @cached_property
    def christoffel(self):
        """
        Christoffel symbols of g at frozen y, 1/2 g^ks (d_i g_sj + d_j g_is - d_s g_ij), indexed [k, i, j].
        """
        dg = self.metric_x
        lowered = 0.5 * (np.einsum("isj->sij", dg) + np.einsum("jis->sij", dg) - dg)
        return np.einsum("ks,sij->kij", self.inverse_metric, lowered)

    @cached_property
    def cartan_h(self):
        """
        Horizontal Cartan coefficients: the Christoffel symbols of g minus
        1/2 g^kp (g_pi.s N^s_j + g_jp.s N^s_i - g_ij.s N^s_p), with g_ij.s = 2 C_ijs.
        """
        C2 = 2.0 * self.cartan_lower
        N = self.nonlinear
        correction = (np.einsum("pis,sj->pij", C2, N)
                      + np.einsum("jps,si->pij", C2, N)
                      - np.einsum("ijs,sp->pij", C2, N))
        return self.christoffel - 0.5 * np.einsum("kp,pij->kij", self.inverse_metric, correction)

    @cached_property
    def metric_delta(self):
        """
        delta_s g_ij at the base point, indexed [s, i, j].
        """
        dgy = 2.0 * self.cartan_lower
        return self.metric_x - np.einsum("ks,ijk->sij", self.nonlinear, dgy)

    @cached_property
    def cartan_delta_form(self):
        """
        The horizontal Cartan coefficients written with delta derivatives, 1/2 g^ks (d_i g_sj + d_j g_is - d_s g_ij).
        """
        dg = self.metric_delta
        lowered = 0.5 * (np.einsum("isj->sij", dg) + np.einsum("jis->sij", dg) - dg)
        return np.einsum("ks,sij->kij", self.inverse_metric, lowered)
