from ricciprofiles.ode_core.integrate import integrate
from ricciprofiles.ode_core.residuals import (
    first_integral_drift,
    first_integral_samples,
    residual_report,
)
from ricciprofiles.ode_core.system import first_integral, rhs
from ricciprofiles.ode_core.taylor import SingularJet, singular_jet, taylor_start

__all__ = [
    "SingularJet",
    "first_integral",
    "first_integral_drift",
    "first_integral_samples",
    "integrate",
    "residual_report",
    "rhs",
    "singular_jet",
    "taylor_start",
]
