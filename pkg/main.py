from pprint import pprint

from finsler import shipped_structure, IntegratorConfig
from finsler.electrodynamics import shipped_potential, correspondence_report
from finsler.geometry import connection_sample, integrate, validate

# The identity suite for the Poincare half-plane.
poincare = shipped_structure("poincare")
pprint(validate(poincare).to_dict())

# Connection coefficients at one point.
pprint(connection_sample(poincare, [0.0, 1.0], [1.0, 0.0]).to_dict())

# A geodesic, it ends at (tanh 1, 1 / cosh 1).
path = integrate(poincare, [0.0, 1.0], [1.0, 0.0], 1.0, IntegratorConfig(steps=1000))
print(path.endpoint)

# Both Maxwell pipelines agree on Minkowski space.
report = correspondence_report(shipped_potential("plane-wave"), shipped_structure("minkowski"))
pprint(report.discrepancies)
