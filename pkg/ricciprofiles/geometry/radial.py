"""Fibre radius of a profile.

The profile variable t and the norm r of a fibre vector are related by
dt/dr = 2 phi(t)/(k r). Since phi vanishes linearly at both ends of [0, T],
t reaches the ends only as r -> 0 and r -> infinity; the equation is solved for
w = log(s/(1-s)), s = t/T, against u = log r, where it is non stiff:

    dw/du = 2 phi / (k T s (1 - s)).
"""

from __future__ import annotations

import numpy as np
import pandas as pd
from numpy.typing import ArrayLike, NDArray
from pydantic import BaseModel, ConfigDict
from scipy.integrate import solve_ivp
from scipy.interpolate import CubicHermiteSpline
from scipy.special import expit

from ricciprofiles.common.base_models.profile import Params, Trajectory
from ricciprofiles.common.types import FloatArray


class RadialProfile(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    r: FloatArray
    t: FloatArray
    anchor_r: float
    T: float

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({"r": self.r, "t": self.t})


def radial_profile(
    params: Params,
    traj: Trajectory,
    r_grid: ArrayLike,
    anchor_r: float = 1.0,
    rel_tol: float = 1e-11,
) -> RadialProfile:
    """Returns t(r) on r_grid, normalized by t(anchor_r) = T/2.

    Args:
        params: carries k.
        traj: profile on [t_start, t_end] with phi > 0 inside.
        r_grid: positive, strictly increasing radii.
        anchor_r: radius mapped to the middle of the interval.
        rel_tol: relative tolerance of the integration in log r.
    """
    r = np.asarray(r_grid, dtype=float)
    if r.ndim != 1 or r.size == 0 or np.any(r <= 0) or np.any(np.diff(r) <= 0):
        raise ValueError("r_grid must be positive and strictly increasing")
    if anchor_r <= 0:
        raise ValueError(f"anchor_r must be positive, got {anchor_r}")
    if np.min(traj.phi[1:-1]) <= 0:
        raise ValueError("radial_profile needs phi > 0 inside the interval")

    k = params.k
    t0, length = traj.t_start, traj.t_end - traj.t_start
    phi = CubicHermiteSpline(traj.t, traj.phi, traj.phid)

    def t_of_w(w: NDArray[np.float64]) -> NDArray[np.float64]:
        # measured from the nearer end to keep the distance to it exact
        return np.where(w <= 0, t0 + length * expit(w), traj.t_end - length * expit(-w))

    def fun(u: float, w: NDArray[np.float64]) -> NDArray[np.float64]:
        return 2 * phi(t_of_w(w)) / (k * length * expit(w) * expit(-w))

    u = np.log(r)
    u_anchor = float(np.log(anchor_r))
    w = np.empty_like(u)
    for part in (u >= u_anchor, u < u_anchor):
        if not np.any(part):
            continue
        targets = u[part]
        end = targets[-1] if targets[-1] >= u_anchor else targets[0]
        if end == u_anchor:
            w[part] = 0.0
            continue
        solution = solve_ivp(
            fun,
            (u_anchor, end),
            [0.0],
            t_eval=targets if end > u_anchor else targets[::-1],
            rtol=rel_tol,
            atol=1e-12,
            method="DOP853",
        )
        if not solution.success:
            raise RuntimeError(f"radial integration failed: {solution.message}")
        values = solution.y[0]
        w[part] = values if end > u_anchor else values[::-1]

    return RadialProfile(r=r, t=t_of_w(w), anchor_r=anchor_r, T=length)
