from __future__ import annotations

import numpy as np
from loguru import logger
from pydantic import BaseModel

from ricciprofiles.common.base_models.profile import Params, Trajectory
from ricciprofiles.common.types import Case
from ricciprofiles.common.utils.derivatives import differentiate


class CaseTag(BaseModel):
    """Classification of a profile by the shape of sigma = e^{(x-y+t)/2}.

    Args:
        tag: case_i (y = 0), case_ii (sigma constant), case_iii (sigma
            proportional to e^t), nontrivial (sigma is not q0 + q1 e^t) or
            indeterminate.
        q0: constant coefficient of the least squares fit sigma ~ q0 + q1 e^t.
        q1: e^t coefficient of the fit.
        sup_dev: max |sigma - q0 - q1 e^t|.
        eta_i: sup of |y' phi' - (m x' - y') y' phi + y e^{y-x}|.
        eta_ii: sup of |y'' - (y' - x') y'|.
        sigma_defect: sup of |2(sigma'' - sigma') phi / sigma|, zero at both endpoints.
    """

    tag: Case
    q0: float
    q1: float
    sup_dev: float
    eta_i: float
    eta_ii: float
    sigma_defect: float


def sigma_fit(traj: Trajectory) -> tuple[float, float, float]:
    """Least squares fit of sigma against {1, e^t}; returns q0, q1 and the sup deviation."""
    sigma = np.exp((traj.x - traj.y + traj.t) / 2)
    basis = np.column_stack([np.ones_like(traj.t), np.exp(traj.t)])
    (q0, q1), *_ = np.linalg.lstsq(basis, sigma, rcond=None)
    sup_dev = float(np.max(np.abs(sigma - basis @ np.array([q0, q1]))))
    return float(q0), float(q1), sup_dev


def classify_case(params: Params, traj: Trajectory, tol: float = 1e-6) -> CaseTag:
    """Tags a trajectory with its case among the sigma'' = sigma' solutions.

    Args:
        params: carries m.
        traj: profile with at least 4 samples.
        tol: absolute threshold for y, the fit coefficients and the fit deviation.
    """
    m = params.m
    t, x, xd, y, yd, phi, phid = (traj.t, traj.x, traj.xd, traj.y, traj.yd, traj.phi, traj.phid)
    q0, q1, sup_dev = sigma_fit(traj)
    xdd = differentiate(t, xd)
    ydd = differentiate(t, yd)

    if np.max(np.abs(y)) < tol:
        tag: Case = "case_i"
    elif sup_dev > tol:
        tag = "nontrivial"
    elif abs(q1) < tol:
        tag = "case_ii"
    elif abs(q0) < tol:
        tag = "case_iii"
    else:
        tag = "indeterminate"

    case = CaseTag(
        tag=tag,
        q0=q0,
        q1=q1,
        sup_dev=sup_dev,
        eta_i=float(np.max(np.abs(yd * phid - (m * xd - yd) * yd * phi + y * np.exp(y - x)))),
        eta_ii=float(np.max(np.abs(ydd - (yd - xd) * yd))),
        sigma_defect=float(np.max(np.abs((xdd - ydd + ((xd - yd) ** 2 - 1) / 2) * phi))),
    )
    logger.debug(f"{traj.branch} trajectory classified as {case}")
    return case
