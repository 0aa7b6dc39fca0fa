"""Right-hand side and first integral of the profile system.

The unknowns x, y, phi of the profile variable t satisfy

    2x''      = y'^2 - x'^2 + 1
    phi y''   = (m-1) phi x' y' - phi' y' - y e^{y-x}
    phi''     = (m-1) x' phi' + m phi - m

and the first order constraint whose left side, multiplied by e^x, is conserved
along every solution.
"""

from __future__ import annotations

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ricciprofiles.common.base_models.profile import Derivatives, Params, ProfileState
from ricciprofiles.common.exceptions import SingularPhi


def xdd_value(xd: ArrayLike, yd: ArrayLike) -> NDArray[np.float64]:
    return (np.square(yd) - np.square(xd) + 1.0) / 2


def phidd_value(m: int, xd: ArrayLike, phi: ArrayLike, phid: ArrayLike) -> NDArray[np.float64]:
    return (m - 1) * np.asarray(xd) * phid + m * np.asarray(phi) - m


def ydd_numerator(
    m: int, x: ArrayLike, xd: ArrayLike, y: ArrayLike, yd: ArrayLike, phi: ArrayLike, phid: ArrayLike
) -> NDArray[np.float64]:
    """phi y'' of the y equation, finite at phi = 0."""
    x, xd, y, yd = map(np.asarray, (x, xd, y, yd))
    return (m - 1) * np.asarray(phi) * xd * yd - np.asarray(phid) * yd - y * np.exp(y - x)


def constraint_lhs(
    m: int, x: ArrayLike, xd: ArrayLike, y: ArrayLike, yd: ArrayLike, phi: ArrayLike, phid: ArrayLike
) -> NDArray[np.float64]:
    """Left side of the constraint, zero on admissible solutions."""
    x, xd, y, yd, phi, phid = map(np.asarray, (x, xd, y, yd, phi, phid))
    return (
        2 * xd * phid
        - (2 * m - 1) * phi * xd**2
        + phi * yd**2
        + 2 * (y - 1) * np.exp(y - x)
        - phi
        + 2 * m
    )


def rhs_array(m: int, values: NDArray[np.float64], phi_floor: float) -> NDArray[np.float64]:
    """Derivative of (x, x', y, y', phi, phi') for the integrator.

    phi is clipped away from zero at the floor instead of raising, since trial
    stages of a step may step past a landing point.
    """
    x, xd, y, yd, phi, phid = values
    phi_safe = phi if abs(phi) >= phi_floor else np.copysign(phi_floor, phi)
    return np.array(
        [
            xd,
            (yd * yd - xd * xd + 1.0) / 2,
            yd,
            ((m - 1) * phi * xd * yd - phid * yd - y * np.exp(y - x)) / phi_safe,
            phid,
            (m - 1) * xd * phid + m * phi - m,
        ]
    )


def rhs(params: Params, state: ProfileState) -> Derivatives:
    """Returns (x', x'', y', y'', phi', phi'') at a profile state.

    Args:
        params: carries m and phi_floor.
        state: point at which the system is evaluated.

    Raises:
        SingularPhi: |phi| is below params.phi_floor; start with taylor_start.
    """
    if abs(state.phi) < params.phi_floor:
        raise SingularPhi(
            f"|phi|={abs(state.phi):.3e} below phi_floor={params.phi_floor:.1e} at t={state.t}"
        )
    m = params.m
    ydd = ydd_numerator(m, state.x, state.xd, state.y, state.yd, state.phi, state.phid)
    return Derivatives(
        xd=state.xd,
        xdd=float(xdd_value(state.xd, state.yd)),
        yd=state.yd,
        ydd=float(ydd) / state.phi,
        phid=state.phid,
        phidd=float(phidd_value(m, state.xd, state.phi, state.phid)),
    )


def first_integral_array(
    m: int, x: ArrayLike, xd: ArrayLike, y: ArrayLike, yd: ArrayLike, phi: ArrayLike, phid: ArrayLike
) -> NDArray[np.float64]:
    return np.exp(x) * constraint_lhs(m, x, xd, y, yd, phi, phid)


def first_integral(params: Params, state: ProfileState) -> float:
    """Returns e^x times the constraint left side, conserved by the system."""
    return float(
        first_integral_array(
            params.m, state.x, state.xd, state.y, state.yd, state.phi, state.phid
        )
    )


if __name__ == "__main__":
    params = Params(m=2, k=1)
    state = ProfileState(t=0.0, x=0.0, xd=1.0, y=0.1, yd=0.2, phi=0.5, phid=0.3)
    print(rhs(params, state))
    print(first_integral(params, state))
