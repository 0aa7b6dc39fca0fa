from __future__ import annotations

import numpy as np
from numpy.typing import NDArray

from ricciprofiles.common.base_models.profile import Params, ResidualReport, Trajectory
from ricciprofiles.common.utils.derivatives import differentiate
from ricciprofiles.ode_core.system import (
    constraint_lhs,
    first_integral_array,
    phidd_value,
    xdd_value,
    ydd_numerator,
)


def first_integral_samples(traj: Trajectory) -> NDArray[np.float64]:
    return first_integral_array(
        traj.params.m, traj.x, traj.xd, traj.y, traj.yd, traj.phi, traj.phid
    )


def first_integral_drift(traj: Trajectory) -> float:
    """Returns max |E(t) - E(t_start)| along a trajectory."""
    energy = first_integral_samples(traj)
    return float(np.max(np.abs(energy - energy[0])))


def residual_report(params: Params, traj: Trajectory) -> ResidualReport:
    """Evaluates every equation of the profile system on a trajectory.

    Second derivatives are obtained by differentiating the stored first
    derivatives on the sample grid. The y equation is evaluated in the cleared
    form phi y'' - (m-1) phi x' y' + phi' y' + y e^{y-x}, finite at phi = 0.

    Args:
        params: carries m.
        traj: trajectory with at least 5 samples.
    """
    if len(traj) < 5:
        raise ValueError(f"residual_report needs at least 5 samples, got {len(traj)}")
    m = params.m
    xdd = differentiate(traj.t, traj.xd)
    ydd = differentiate(traj.t, traj.yd)
    phidd = differentiate(traj.t, traj.phid)
    energy = first_integral_samples(traj)

    return ResidualReport(
        t=traj.t,
        eq_xdd1=xdd - xdd_value(traj.xd, traj.yd),
        eq_xdd2=traj.phi * ydd
        - ydd_numerator(m, traj.x, traj.xd, traj.y, traj.yd, traj.phi, traj.phid),
        eq_xdd3=phidd - phidd_value(m, traj.xd, traj.phi, traj.phid),
        eq_int=constraint_lhs(m, traj.x, traj.xd, traj.y, traj.yd, traj.phi, traj.phid),
        drift=energy - energy[0],
    )
