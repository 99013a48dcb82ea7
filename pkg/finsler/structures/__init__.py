from finsler.structures.base import AbstractStructure, quadratic_form, linear_form
from finsler.structures.families import (
    QuadraticStructure, Euclidean, Minkowski, RiemannianStructure, PoincareHalfPlane, RandersStructure,
    PerturbedQuadratic, ExpressionStructure,
)
from finsler.structures.loader import load_structure, shipped_structure, compile_field
