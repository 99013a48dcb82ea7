from enum import Enum


class _Matchable(object):
    """
    Lookup helpers shared by the enums below.
    Every member value is a dict with at least an "id" key, the first member is the UNKNOWN placeholder.
    """

    @classmethod
    def all(cls):
        return [m for m in cls][1:]

    @classmethod
    def match_by_id(cls, val):
        """
        Check to see what member is matched with the given id.
        :param val: The id to verify.
        :return: The matching member, or the UNKNOWN member if no match was found.
        """
        for member in cls:
            if member.value["id"] == val:
                return member
        return cls.UNKNOWN

    @property
    def id(self):
        return self.value["id"]


# noinspection PyTypeChecker
class Kind(_Matchable, Enum):
    """
    The kind of a Finsler structure.
    A positive-definite structure has a norm L = sqrt(F), an alternating (pseudo-Finsler) one only
    has the degree-2 function F with a non-degenerate vertical Hessian.
    """
    UNKNOWN =     {"id": "unknown", "name": "Unknown"}
    POSITIVE =    {"id": "positive", "name": "Positive definite"}
    ALTERNATING = {"id": "alternating", "name": "Alternating (pseudo-Finsler)"}


# noinspection PyTypeChecker
class Family(_Matchable, Enum):
    """
    Where a structure comes from.
    "riemannian" marks families whose metric is quadratic in y, those are Cartan-flat by construction.
    """
    UNKNOWN =    {"id": "unknown", "name": "Unknown", "riemannian": False}
    EUCLIDEAN =  {"id": "euclidean", "name": "Euclidean quadratic", "riemannian": True}
    MINKOWSKI =  {"id": "minkowski", "name": "Minkowski quadratic", "riemannian": True}
    QUADRATIC =  {"id": "quadratic", "name": "Constant quadratic", "riemannian": True}
    POINCARE =   {"id": "poincare", "name": "Poincare half-plane", "riemannian": True}
    RIEMANNIAN = {"id": "riemannian", "name": "Riemannian a-field", "riemannian": True}
    RANDERS =    {"id": "randers", "name": "Randers", "riemannian": False}
    PERTURBED =  {"id": "perturbed", "name": "Perturbed quadratic", "riemannian": False}
    EXPRESSION = {"id": "expression", "name": "Expression", "riemannian": False}

    @property
    def riemannian(self):
        return self.value["riemannian"]


# noinspection PyTypeChecker
class Convention(_Matchable, Enum):
    """
    Sign in front of 4*pi/c in the second Maxwell equation.
    The Riemannian form is written with a plus sign, the Finsler form with a minus sign, both are kept.
    """
    UNKNOWN =       {"id": "unknown", "sign": 0.0}
    PAPER_RIEMANN = {"id": "paper-riemann", "sign": 1.0}
    PAPER_FINSLER = {"id": "paper-finsler", "sign": -1.0}

    @property
    def sign(self):
        return self.value["sign"]


# noinspection PyTypeChecker
class ConnectionType(_Matchable, Enum):
    UNKNOWN = {"id": "unknown"}
    CARTAN =  {"id": "cartan"}
    BERWALD = {"id": "berwald"}


# noinspection PyTypeChecker
class DerivativeKind(_Matchable, Enum):
    UNKNOWN =    {"id": "unknown"}
    HORIZONTAL = {"id": "horizontal"}
    VERTICAL =   {"id": "vertical"}


# noinspection PyTypeChecker
class IndexType(_Matchable, Enum):
    """
    Variance of a tensor index, contravariant indices take the opposite correction sign.
    """
    UNKNOWN = {"id": "unknown", "sign": 0.0}
    LOWER =   {"id": "lower", "sign": -1.0}
    UPPER =   {"id": "upper", "sign": 1.0}

    @property
    def sign(self):
        return self.value["sign"]


# noinspection PyTypeChecker
class Scheme(_Matchable, Enum):
    UNKNOWN = {"id": "unknown"}
    RK4 =     {"id": "rk4"}


# noinspection PyTypeChecker
class Mode(_Matchable, Enum):
    UNKNOWN =        {"id": "unknown"}
    RIEMANN =        {"id": "riemann"}
    FINSLER =        {"id": "finsler"}
    CORRESPONDENCE = {"id": "correspondence"}


# noinspection PyTypeChecker
class Status(_Matchable, Enum):
    UNKNOWN = {"id": "unknown"}
    PASS =    {"id": "pass"}
    FAIL =    {"id": "fail"}
    REPORT =  {"id": "report"}

    @staticmethod
    def of(residual, tolerance):
        """
        Turn a residual into a status.
        :param residual: The measured residual, NaN counts as a failure.
        :param tolerance: The bound, None means "record only".
        :return: Status.REPORT without a tolerance, else PASS or FAIL.
        """
        if tolerance is None:
            return Status.REPORT
        return Status.PASS if residual <= tolerance else Status.FAIL
