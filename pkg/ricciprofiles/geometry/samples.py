"""Geometric quantities and gradient soliton residuals along a profile.

With kappa = e^t the Kahler metric built from (x, phi) has Ricci endomorphism
eigenvalues alpha and alpha + beta, the Laplacian and squared gradient of kappa
are lap_kappa and grad_kappa_sq, and s is its scalar curvature. The conformal
metric g/sigma^2 with sigma = e^{(x-y+t)/2} carries the potential f = (m-1) y;
the three soliton residuals vanish exactly when (g/sigma^2, f) is a gradient
Ricci soliton with constant 1.
"""

from __future__ import annotations

from functools import cached_property
from typing import ClassVar, Literal

import numpy as np
import pandas as pd
from numpy.typing import NDArray
from pydantic import BaseModel, ConfigDict, computed_field

from ricciprofiles.common.base_models.profile import Params, Trajectory
from ricciprofiles.common.types import FloatArray
from ricciprofiles.common.utils.derivatives import differentiate
from ricciprofiles.ode_core.system import constraint_lhs, phidd_value, xdd_value

SecondDerivatives = Literal["spline", "equations"]

GEOMETRIC_COLUMNS = ("t", "alpha", "beta", "sigma", "f", "scal", "lap_kappa", "grad_kappa_sq")
RESIDUAL_COLUMNS = ("t", "r_nfz", "r_med", "r_eyd")
EYD_LINES = ("eyd_1", "eyd_2", "eyd_3", "eyd_4", "eyd_5")


class _Columns(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    frame_columns: ClassVar[tuple[str, ...]] = ()

    def to_frame(self, columns: tuple[str, ...] | None = None) -> pd.DataFrame:
        return pd.DataFrame({name: getattr(self, name) for name in columns or self.frame_columns})


class GeometricSample(BaseModel):
    t: float
    alpha: float
    beta: float
    sigma: float
    f: float
    scal: float
    lap_kappa: float
    grad_kappa_sq: float


class GeometricSamples(_Columns):
    """Geometric quantities of a trajectory, one column per quantity."""

    frame_columns: ClassVar[tuple[str, ...]] = GEOMETRIC_COLUMNS

    t: FloatArray
    alpha: FloatArray
    beta: FloatArray
    sigma: FloatArray
    f: FloatArray
    scal: FloatArray
    lap_kappa: FloatArray
    grad_kappa_sq: FloatArray

    @property
    def samples(self) -> tuple[GeometricSample, ...]:
        return tuple(
            GeometricSample(**{name: float(getattr(self, name)[i]) for name in GEOMETRIC_COLUMNS})
            for i in range(self.t.size)
        )


class SolitonResidualSample(BaseModel):
    t: float
    r_nfz: float
    r_med: float
    r_eyd: float


class SolitonResiduals(_Columns):
    """Gradient soliton residuals of a trajectory.

    r_eyd is the sum of the five eyd_* lines, which are kept for inspection.
    r_trace and r_hamilton come from conformal_scalars.
    """

    frame_columns: ClassVar[tuple[str, ...]] = RESIDUAL_COLUMNS

    t: FloatArray
    r_nfz: FloatArray
    r_med: FloatArray
    r_eyd: FloatArray
    eyd_1: FloatArray
    eyd_2: FloatArray
    eyd_3: FloatArray
    eyd_4: FloatArray
    eyd_5: FloatArray
    r_trace: FloatArray
    r_hamilton: FloatArray

    @computed_field
    @cached_property
    def sup_norms(self) -> dict[str, float]:
        names = ("r_nfz", "r_med", "r_eyd", *EYD_LINES, "r_trace", "r_hamilton")
        return {name: float(np.max(np.abs(getattr(self, name)))) for name in names}

    def passes(self, tol: float) -> bool:
        """True when r_nfz, r_med and r_eyd are below tol."""
        return all(self.sup_norms[name] < tol for name in RESIDUAL_COLUMNS[1:])

    @property
    def samples(self) -> tuple[SolitonResidualSample, ...]:
        return tuple(
            SolitonResidualSample(**{name: float(getattr(self, name)[i]) for name in RESIDUAL_COLUMNS})
            for i in range(self.t.size)
        )


class ConformalScalars(_Columns):
    """Laplacian and squared gradient of f and scalar curvature of g/sigma^2."""

    frame_columns: ClassVar[tuple[str, ...]] = ("t", "lap_f", "grad_f_sq", "scal_bar", "r_trace", "r_hamilton")

    t: FloatArray
    lap_f: FloatArray
    grad_f_sq: FloatArray
    scal_bar: FloatArray
    r_trace: FloatArray
    r_hamilton: FloatArray


def _second_derivative_x(
    traj: Trajectory, second_derivatives: SecondDerivatives
) -> NDArray[np.float64]:
    if second_derivatives == "spline":
        return differentiate(traj.t, traj.xd)
    if second_derivatives == "equations":
        return xdd_value(traj.xd, traj.yd)
    raise ValueError(f"second_derivatives must be 'spline' or 'equations', got {second_derivatives!r}")


def geometric_samples(
    params: Params, traj: Trajectory, second_derivatives: SecondDerivatives = "spline"
) -> GeometricSamples:
    """Evaluates alpha, beta, sigma, f, s, lap_kappa and grad_kappa_sq.

    phi'' in the scalar curvature is taken from the phi equation.

    Args:
        params: carries m.
        traj: profile samples.
        second_derivatives: x'' from the sample grid ("spline") or from the x
            equation ("equations").
    """
    m = params.m
    t, x, xd, y, yd, phi, phid = (traj.t, traj.x, traj.xd, traj.y, traj.yd, traj.phi, traj.phid)
    xdd = _second_derivative_x(traj, second_derivatives)
    phidd = phidd_value(m, xd, phi, phid)
    half_scal = m * (m - 1) * (1 - phi) - (2 * m - 1) * phid - phidd

    return GeometricSamples(
        t=t,
        alpha=(m - 1) * (xd + 1) * np.exp(-t),
        beta=(m - 1) * (2 * xdd - yd**2 + xd**2 - 1) / 2,
        sigma=np.exp((x - y + t) / 2),
        f=(m - 1) * y,
        scal=2 * np.exp(-t) * half_scal,
        lap_kappa=2 * (phid + m * phi),
        grad_kappa_sq=2 * np.exp(t) * phi,
    )


def conformal_scalars(
    params: Params, traj: Trajectory, geometry: GeometricSamples | None = None
) -> ConformalScalars:
    """Scalar parts of the soliton equation for g/sigma^2 and f = (m-1) y.

    Returns lap f, |grad f|^2 and the scalar curvature s_bar of the conformal
    metric, with r_trace = lap f + s_bar - 2m and r_hamilton = lap f - |grad f|^2 + 2f,
    both zero on gradient solitons with constant 1.
    """
    m = params.m
    if geometry is None:
        geometry = geometric_samples(params, traj)
    t, x, xd, y, yd, phi = traj.t, traj.x, traj.xd, traj.y, traj.yd, traj.phi
    xdd = differentiate(t, xd)
    ydd = differentiate(t, yd)
    lap_kappa = geometry.lap_kappa
    gap = xd - yd
    scale = np.exp(x - y)

    lap_f = scale * (m - 1) * (yd * lap_kappa + 2 * (ydd - m * yd - (m - 1) * gap * yd) * phi)
    grad_f_sq = scale * 2 * (m - 1) ** 2 * yd**2 * phi
    scal_bar = scale * (
        np.exp(t) * geometry.scal
        + (2 * m - 1) * (gap + 1) * lap_kappa
        + (2 * m - 1)
        * (2 * xdd - 2 * ydd - (m - 1) * gap**2 - 2 * m * gap - m - 1)
        * phi
    )
    f = geometry.f
    return ConformalScalars(
        t=t,
        lap_f=lap_f,
        grad_f_sq=grad_f_sq,
        scal_bar=scal_bar,
        r_trace=lap_f + scal_bar - 2 * m,
        r_hamilton=lap_f - grad_f_sq + 2 * f,
    )


def soliton_residuals(params: Params, traj: Trajectory) -> SolitonResiduals:
    """Evaluates the trace free, mixed and scalar soliton residuals.

    Second derivatives come from the sample grid, except phi'' inside the scalar
    curvature. Each line of the scalar residual is reported separately:

        1: m times the constraint
        2: the scalar curvature formula
        3: the Laplacian of kappa
        4: the phi equation
        5: the x equation, times phi

    Args:
        params: carries m.
        traj: profile with at least 6 samples.
    """
    m = params.m
    geometry = geometric_samples(params, traj)
    t, x, xd, y, yd, phi, phid = (traj.t, traj.x, traj.xd, traj.y, traj.yd, traj.phi, traj.phid)
    xdd = differentiate(t, xd)
    ydd = differentiate(t, yd)
    phidd = differentiate(t, phid)
    lap_kappa = geometry.lap_kappa
    exp_yx = np.exp(y - x)

    r_med = yd * (lap_kappa - 2 * (phid + m * phi)) + 2 * (
        phi * ydd - (m - 1) * phi * xd * yd + phid * yd + y * exp_yx
    )
    lines = (
        m * constraint_lhs(m, x, xd, y, yd, phi, phid),
        -2
        * (
            m * (m - 1)
            - m * (m - 1) * phi
            - (2 * m - 1) * phid
            - phidd
            - np.exp(t) * geometry.scal / 2
        ),
        (2 * m - 1) * (xd + 1) * (lap_kappa - 2 * (phid + m * phi)),
        -2 * (phidd - (m - 1) * xd * phid - m * phi + m),
        (2 * m - 1) * (2 * xdd - yd**2 + xd**2 - 1) * phi,
    )
    scalars = conformal_scalars(params, traj, geometry)

    return SolitonResiduals(
        t=t,
        r_nfz=geometry.beta,
        r_med=r_med,
        r_eyd=np.sum(lines, axis=0),
        **dict(zip(EYD_LINES, lines)),
        r_trace=scalars.r_trace,
        r_hamilton=scalars.r_hamilton,
    )
