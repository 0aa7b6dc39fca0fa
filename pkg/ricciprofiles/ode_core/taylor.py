"""Regular starts at the singular endpoints phi = 0.

At a point where phi vanishes with slope k, the y equation and the constraint
force y' and x' in terms of (x0, y0); differentiating the y equation once and
twice determines y'' (coefficient 2k) and y''' (coefficient 3k). The jet below
is the third order Taylor polynomial of the unique regular solution branch.
"""

from __future__ import annotations

import numpy as np
from pydantic import BaseModel, ConfigDict

from ricciprofiles.common.base_models.profile import Params, ProfileState
from ricciprofiles.common.types import Side

Coefficients = tuple[float, float, float, float]


class SingularJet(BaseModel):
    """Derivatives of order 0 to 3 of x, y and phi at a phi = 0 endpoint.

    Args:
        x: x and its first three derivatives.
        y: y and its first three derivatives.
        phi: phi and its first three derivatives, phi[0] = 0 and phi[1] = k.
    """

    model_config = ConfigDict(frozen=True)

    x: Coefficients
    y: Coefficients
    phi: Coefficients

    @staticmethod
    def _value(c: Coefficients, h: float) -> float:
        return c[0] + h * (c[1] + h * (c[2] / 2 + h * c[3] / 6))

    @staticmethod
    def _slope(c: Coefficients, h: float) -> float:
        return c[1] + h * (c[2] + h * c[3] / 2)

    def state_at(self, h: float) -> ProfileState:
        """Taylor state at distance h from the endpoint, in the launch direction."""
        return ProfileState(
            t=h,
            x=self._value(self.x, h),
            xd=self._slope(self.x, h),
            y=self._value(self.y, h),
            yd=self._slope(self.y, h),
            phi=self._value(self.phi, h),
            phid=self._slope(self.phi, h),
        )

    def ydd_at(self, h: float) -> float:
        return self.y[2] + h * self.y[3]


def singular_jet(params: Params, x0: float, y0: float) -> SingularJet:
    """Returns the jet of the regular solution with phi(0) = 0, phi'(0) = k.

    Args:
        params: carries m and k.
        x0: x at the endpoint.
        y0: y at the endpoint.
    """
    m, k = params.m, params.k
    e = float(np.exp(y0 - x0))

    # first order data forced by the y equation and the constraint at phi = 0
    y1 = -y0 * e / k
    x1 = -((y0 - 1) * e + m) / k
    phi2 = (m - 1) * x1 * k - m
    x2 = (y1 * y1 - x1 * x1 + 1) / 2
    d1 = y1 - x1
    y2 = ((m - 1) * k * x1 * y1 - phi2 * y1 - e * (y1 + y0 * d1)) / (2 * k)

    x3 = y1 * y2 - x1 * x2
    phi3 = (m - 1) * (x2 * k + x1 * phi2) + m * k
    d2 = y2 - x2
    r2 = (m - 1) * (phi2 * x1 * y1 + 2 * k * (x2 * y1 + x1 * y2)) - e * (
        d1 * (y1 + y0 * d1) + y2 + y1 * d1 + y0 * d2
    )
    y3 = (r2 - phi3 * y1 - 3 * phi2 * y2) / (3 * k)

    return SingularJet(
        x=(x0, x1, x2, x3),
        y=(y0, y1, y2, y3),
        phi=(0.0, float(k), phi2, phi3),
    )


def taylor_start(
    params: Params,
    side: Side,
    x0: float,
    y0: float,
    t_end: float | None = None,
) -> ProfileState:
    """Returns the state at distance params.start_offset from a singular endpoint.

    The right endpoint is handled through the symmetry t -> t_end - t, which keeps
    the system and flips the sign of every first derivative.

    Args:
        params: carries m, k and start_offset.
        side: left (phi'(0) = k) or right (phi'(t_end) = -k).
        x0: x at the endpoint.
        y0: y at the endpoint.
        t_end: location of the right endpoint, required for side="right".
    """
    h = params.start_offset
    state = singular_jet(params, x0, y0).state_at(h)
    if side == "left":
        return state
    if side != "right":
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    if t_end is None:
        raise ValueError("t_end is required for a right endpoint start")
    return ProfileState(
        t=t_end - h,
        x=state.x,
        xd=-state.xd,
        y=state.y,
        yd=-state.yd,
        phi=state.phi,
        phid=-state.phid,
    )
