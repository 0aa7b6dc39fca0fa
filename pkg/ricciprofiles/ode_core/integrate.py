from __future__ import annotations

import numpy as np
from loguru import logger
from numpy.typing import NDArray
from scipy.integrate import solve_ivp

from ricciprofiles.common.base_models.profile import (
    STATE_FIELDS,
    Params,
    ProfileState,
    Trajectory,
)
from ricciprofiles.common.config import CONF
from ricciprofiles.common.exceptions import StepFailure
from ricciprofiles.common.types import Branch, Termination
from ricciprofiles.ode_core.system import rhs_array


def integrate(
    params: Params,
    start: ProfileState,
    t_target: float,
    n_samples: int | None = None,
    phi_floor: float | None = None,
    branch: Branch = "shot",
) -> Trajectory:
    """Integrates the profile system from start towards t_target.

    Uses the embedded Runge-Kutta pair params.method with dense output and samples
    the solution on a uniform grid. Integration stops early when phi falls through
    phi_floor, or when a field exceeds params.overflow; the reason is stored in
    Trajectory.termination.

    Args:
        params: system parameters and tolerances.
        start: initial state with phi away from zero (see taylor_start).
        t_target: final time.
        n_samples: number of output samples, defaults to CONF.n_samples.
        phi_floor: phi level that ends the integration, defaults to params.phi_floor.
        branch: branch tag of the returned trajectory.

    Raises:
        StepFailure: the step controller could not meet the tolerance.
    """
    if t_target <= start.t:
        raise ValueError(f"t_target={t_target} must exceed the start time {start.t}")
    n_samples = n_samples or CONF.n_samples
    floor = params.phi_floor if phi_floor is None else phi_floor
    m = params.m

    def fun(t: float, values: NDArray[np.float64]) -> NDArray[np.float64]:
        return rhs_array(m, values, params.phi_floor)

    def phi_crossing(t: float, values: NDArray[np.float64]) -> float:
        return float(values[4] - floor)

    def overflow(t: float, values: NDArray[np.float64]) -> float:
        peak = float(np.max(np.abs(values)))
        return params.overflow - peak if np.isfinite(peak) else -1.0

    phi_crossing.terminal = True  # type: ignore[attr-defined]
    phi_crossing.direction = -1  # type: ignore[attr-defined]
    overflow.terminal = True  # type: ignore[attr-defined]
    overflow.direction = -1  # type: ignore[attr-defined]

    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        solution = solve_ivp(
            fun,
            (start.t, t_target),
            start.as_array(),
            method=params.method,
            rtol=params.rel_tol,
            atol=params.abs_tol,
            dense_output=True,
            events=[phi_crossing, overflow],
        )

    if solution.status == -1:
        raise StepFailure(f"integration from t={start.t} failed: {solution.message}")

    termination: Termination = "t_target"
    if solution.t_events[0].size:
        termination = "phi_floor"
    elif solution.t_events[1].size:
        termination = "overflow"

    t_stop = float(solution.t[-1])
    logger.debug(
        f"integrated [{start.t:.6g}, {t_stop:.6g}] in {solution.t.size - 1} steps, "
        f"{solution.nfev} evaluations, stopped at {termination}"
    )

    if t_stop <= start.t:
        grid = np.array([start.t])
        values = start.as_array()[:, None]
    else:
        grid = np.linspace(start.t, t_stop, max(n_samples, 2))
        with np.errstate(over="ignore", invalid="ignore"):
            values = solution.sol(grid)
        values[:, 0] = start.as_array()
        values[:, -1] = solution.y[:, -1]

    return Trajectory(
        params=params,
        t=grid,
        branch=branch,
        termination=termination,
        **dict(zip(STATE_FIELDS, values)),
    )


if __name__ == "__main__":
    params = Params(m=2, k=1)
    start = ProfileState(t=0.0, x=0.0, xd=0.0, y=0.0, yd=0.0, phi=1.0, phid=0.0)
    traj = integrate(params, start, t_target=1.0)
    print(traj.x[-1], 2 * np.log(np.cosh(0.5)))
