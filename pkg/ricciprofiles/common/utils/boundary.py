from __future__ import annotations

import numpy as np

from ricciprofiles.common.base_models.profile import Trajectory
from ricciprofiles.common.exceptions import InvalidRoot

VALUE_TOL = 1e-10
SLOPE_TOL = 1e-8


def boundary_failures(
    trajectory: Trajectory,
    k: int,
    value_tol: float = VALUE_TOL,
    slope_tol: float = SLOPE_TOL,
) -> list[str]:
    """Lists the violated endpoint conditions phi = 0, phi'(0) = k, phi'(T) = -k.

    Also requires phi > 0 at every interior sample.
    """
    phi, phid = trajectory.phi, trajectory.phid
    failures = []
    if abs(phi[0]) > value_tol or abs(phi[-1]) > value_tol:
        failures.append(f"phi(0)={phi[0]:.3e}, phi(T)={phi[-1]:.3e}")
    if abs(phid[0] - k) > slope_tol or abs(phid[-1] + k) > slope_tol:
        failures.append(f"phi'(0)={phid[0]!r}, phi'(T)={phid[-1]!r}")
    if len(phi) > 2 and not np.min(phi[1:-1]) > 0:
        failures.append(f"min interior phi={np.min(phi[1:-1]):.3e}")
    return failures


def check_boundary(
    trajectory: Trajectory,
    k: int,
    value_tol: float = VALUE_TOL,
    slope_tol: float = SLOPE_TOL,
) -> None:
    """Raises InvalidRoot unless the trajectory meets the endpoint conditions."""
    failures = boundary_failures(trajectory, k, value_tol, slope_tol)
    if failures:
        raise InvalidRoot(
            f"{trajectory.branch} profile with a={trajectory.a} fails the boundary "
            "conditions: " + "; ".join(failures)
        )
