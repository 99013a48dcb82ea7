from finsler.electrodynamics.potential import (
    PotentialField, load_potential, shipped_potential, gauge_transform, DIMENSION,
)
from finsler.electrodynamics.maxwell import (
    field_strength_riemann, first_equation_residual_riemann, source_current_riemann, current_divergence_riemann,
    field_strength_finsler, first_equation_residual_finsler, source_current_finsler, correspondence_report,
)
