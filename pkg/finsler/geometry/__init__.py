from finsler.geometry.core import (
    eval_F, eval_L, minkowski_norm, metric_tensor, cartan_tensor, indicatrix_radius, validate, guarded_inverse,
    vertical_derivatives, signature_of,
)
from finsler.geometry.local import LocalGeometry, ORDER_SPRAY, ORDER_CONNECTION, ORDER_BERWALD
from finsler.geometry.connections import (
    TensorField, metric_field, fundamental_field, spray, nonlinear, berwald_coeffs, cartan_coeffs,
    cartan_coeffs_delta_form, connection_sample, horizontal_derivative, covariant_derivative,
    berwald_geodesic_residual, delta_dual, verify_connections,
)
from finsler.geometry.charts import ChartMap, PushedStructure, transform_spray_check, push_forward, load_chart, shipped_chart
from finsler.geometry.geodesics import (
    integrate, arc_length, energy, curve_length, spray_flow_field, rk4_step, flow,
)
