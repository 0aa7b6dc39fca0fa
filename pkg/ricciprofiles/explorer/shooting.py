"""Shooting from the left singular endpoint.

A regular start at phi = 0 is fixed by (x0, y0); the first derivatives are
forced there. A shot integrates forward until phi returns to the launch level
k * start_offset and extrapolates the landing at phi = 0. The far endpoint is
regular when the mismatch pair

    phi'(T) + k,    y'(T) - y(T) e^{y(T) - x(T)} / k

vanishes; the second entry is the forced first order relation of the y
equation at phi = 0 with phi' = -k.
"""

from __future__ import annotations

import numpy as np
from loguru import logger
from pydantic import BaseModel

from ricciprofiles.common.base_models.profile import Params, ProfileState, Trajectory
from ricciprofiles.common.exceptions import NoConvergence, StepFailure
from ricciprofiles.common.types import ShotTermination
from ricciprofiles.geometry.classify import classify_case
from ricciprofiles.ode_core.integrate import integrate
from ricciprofiles.ode_core.residuals import first_integral_drift
from ricciprofiles.ode_core.system import rhs
from ricciprofiles.ode_core.taylor import taylor_start

CANDIDATE_SCORE = 1e-3
MISMATCH_TOL = 1e-10
STALL_MISMATCH = 1e-6


class ShotResult(BaseModel):
    """Outcome of one shot.

    Args:
        x0: x at the left endpoint.
        y0: y at the left endpoint.
        hit: phi returned to zero with finite fields.
        T_hit: extrapolated landing time, None without a hit.
        mismatch1: phi'(T) + k.
        mismatch2: y'(T) - y(T) e^{y(T)-x(T)}/k.
        drift: first integral drift along the integrated part.
        nontriviality: sup deviation of sigma from q0 + q1 e^t, zero for y = 0.
        terminated_by: phi_zero, overflow, t_max or step_failure.
    """

    x0: float
    y0: float
    hit: bool
    T_hit: float | None = None
    mismatch1: float = float("nan")
    mismatch2: float = float("nan")
    drift: float = float("nan")
    nontriviality: float = float("nan")
    terminated_by: ShotTermination

    @property
    def mismatch(self) -> tuple[float, float]:
        return self.mismatch1, self.mismatch2

    @property
    def mismatch_norm(self) -> float:
        if not self.hit:
            return float("inf")
        return float(np.hypot(self.mismatch1, self.mismatch2))


class RefineResult(BaseModel):
    """Converged start of a refined shot.

    Args:
        x0: refined x0.
        y0: refined y0.
        iterations: Newton iterations used.
        converged_by: mismatch, step or stalled.
        shot: shot from the refined start.
        candidate: the refined profile is a regular nontrivial solution.
        trajectory: integrated part of the refined shot.
    """

    x0: float
    y0: float
    iterations: int
    converged_by: str
    shot: ShotResult
    candidate: bool = False
    trajectory: Trajectory | None = None

    @property
    def mismatch_norm(self) -> float:
        return self.shot.mismatch_norm

    @property
    def nontriviality(self) -> float:
        return self.shot.nontriviality


def admissible_start(params: Params, x0: float, y0: float) -> ProfileState:
    """Regular state at distance start_offset from a left endpoint with data (x0, y0)."""
    return taylor_start(params, "left", x0, y0)


def _landing_step(phi: float, phid: float, phidd: float) -> float | None:
    """Smallest positive root of phi + phid s + phidd s^2/2, None if phi never reaches 0."""
    if phid >= 0:
        return None
    discriminant = phid * phid - 2 * phi * phidd
    if discriminant < 0:
        return None
    return 2 * phi / (-phid + np.sqrt(discriminant))


def _extrapolate(params: Params, end: ProfileState) -> tuple[float, float, float] | None:
    """Returns T, phi'(T) and the second mismatch from the last integrated state."""
    m, k = params.m, params.k
    derivatives = rhs(params, end)
    step = _landing_step(end.phi, end.phid, derivatives.phidd)
    if step is None:
        return None
    phiddd = (m - 1) * (derivatives.xdd * end.phid + end.xd * derivatives.phidd) + m * end.phid
    phid_T = end.phid + derivatives.phidd * step + phiddd * step**2 / 2
    x_T = end.x + end.xd * step + derivatives.xdd * step**2 / 2
    y_T = end.y + end.yd * step + derivatives.ydd * step**2 / 2
    yd_T = end.yd + derivatives.ydd * step
    regularity = yd_T - y_T * np.exp(y_T - x_T) / k
    return end.t + step, phid_T + k, float(regularity)


def shot_trajectory(
    params: Params, x0: float, y0: float, t_max: float | None = None, n_samples: int | None = None
) -> tuple[ShotResult, Trajectory | None]:
    """Same as shoot, also returning the integrated part of the trajectory."""
    t_max = params.t_max if t_max is None else t_max
    if t_max <= 0:
        raise ValueError(f"t_max must be positive, got {t_max}")
    start = admissible_start(params, x0, y0)
    try:
        traj = integrate(
            params,
            start,
            t_max,
            n_samples=n_samples,
            phi_floor=params.k * params.start_offset,
            branch="shot",
        )
    except StepFailure as error:
        logger.debug(f"shot ({x0:.6g}, {y0:.6g}): {error}")
        return ShotResult(x0=x0, y0=y0, hit=False, terminated_by="step_failure"), None

    terminated_by: ShotTermination = {
        "phi_floor": "phi_zero",
        "overflow": "overflow",
        "t_target": "t_max",
    }[traj.termination or "t_target"]

    nontriviality = float("nan")
    if len(traj) >= 6 and np.all(np.isfinite(traj.state_array())):
        try:
            with np.errstate(over="ignore", invalid="ignore"):
                case = classify_case(params, traj)
            nontriviality = 0.0 if case.tag == "case_i" else case.sup_dev
        except (np.linalg.LinAlgError, ValueError) as error:
            logger.debug(f"shot ({x0:.6g}, {y0:.6g}) not classified: {error}")
    fields = {
        "x0": x0,
        "y0": y0,
        "nontriviality": nontriviality,
    }
    with np.errstate(over="ignore", invalid="ignore"):
        fields["drift"] = first_integral_drift(traj)

    landing = None
    if terminated_by == "phi_zero":
        end = ProfileState.from_array(traj.t_end, traj.state_array()[-1])
        landing = _extrapolate(params, end)
    if landing is None:
        return ShotResult(hit=False, terminated_by=terminated_by, **fields), traj
    T_hit, mismatch1, mismatch2 = landing
    result = ShotResult(
        hit=True,
        T_hit=T_hit,
        mismatch1=mismatch1,
        mismatch2=mismatch2,
        terminated_by=terminated_by,
        **fields,
    )
    return result, traj


def shoot(params: Params, x0: float, y0: float, t_max: float | None = None) -> ShotResult:
    """Integrates from the regular start (x0, y0) and measures the far endpoint.

    Failures are encoded in ShotResult.terminated_by and never raised.

    Args:
        params: system parameters and tolerances.
        x0: x at the left endpoint.
        y0: y at the left endpoint.
        t_max: integration horizon, defaults to params.t_max.
    """
    result, _ = shot_trajectory(params, x0, y0, t_max)
    logger.debug(f"shot {result}")
    return result


def _mismatch_vector(result: ShotResult) -> np.ndarray:
    return np.array(result.mismatch)


def refine(
    params: Params,
    seed: tuple[float, float],
    max_iter: int = 25,
    step: float = 1e-6,
    t_max: float | None = None,
) -> RefineResult:
    """Damped Newton iteration on the mismatch pair as a function of (x0, y0).

    The Jacobian is taken by forward differences. Each Newton step is halved
    until the mismatch norm decreases, at most six times. A failed line search
    counts as convergence once the step or the mismatch is at the integration
    noise level.

    Args:
        params: system parameters and tolerances.
        seed: starting (x0, y0), which must hit.
        max_iter: Newton iterations allowed.
        step: forward difference step.
        t_max: shooting horizon, defaults to params.t_max.

    Raises:
        NoConvergence: the seed misses, a perturbed shot misses, the line search fails or
            max_iter is exhausted.
    """
    point = np.array(seed, dtype=float)
    current = shoot(params, *point, t_max=t_max)
    if not current.hit:
        raise NoConvergence(f"seed {tuple(point)} does not hit: {current.terminated_by}")

    converged_by = None
    iteration = 0
    while iteration < max_iter:
        if current.mismatch_norm < MISMATCH_TOL:
            converged_by = "mismatch"
            break
        iteration += 1
        residual = _mismatch_vector(current)
        jacobian = np.empty((2, 2))
        for j in range(2):
            shifted = point.copy()
            shifted[j] += step
            nearby = shoot(params, *shifted, t_max=t_max)
            if not nearby.hit:
                raise NoConvergence(f"shifted start {tuple(shifted)} does not hit")
            jacobian[:, j] = (_mismatch_vector(nearby) - residual) / step
        try:
            newton = np.linalg.solve(jacobian, -residual)
        except np.linalg.LinAlgError:
            newton, *_ = np.linalg.lstsq(jacobian, -residual, rcond=None)

        damping = 1.0
        accepted = None
        while damping >= 1 / 64:
            trial_point = point + damping * newton
            trial = shoot(params, *trial_point, t_max=t_max)
            if trial.hit and trial.mismatch_norm < current.mismatch_norm:
                accepted = trial_point, trial
                break
            damping /= 2

        scale = 1 + np.linalg.norm(point)
        if accepted is None:
            if np.linalg.norm(newton) < 1e-8 * scale or current.mismatch_norm < STALL_MISMATCH:
                converged_by = "stalled"
                break
            raise NoConvergence(
                f"line search failed at {tuple(point)}, mismatch {current.mismatch_norm:.3e}"
            )
        taken = accepted[0] - point
        point, current = accepted
        logger.debug(f"refine {iteration}: {tuple(point)}, mismatch {current.mismatch_norm:.3e}")
        if np.linalg.norm(taken) <= 1e-10 * scale:
            converged_by = "step"
            break
    else:
        if current.mismatch_norm < MISMATCH_TOL:
            converged_by = "mismatch"

    if converged_by is None:
        raise NoConvergence(
            f"no convergence after {max_iter} iterations, mismatch {current.mismatch_norm:.3e}"
        )

    candidate = current.mismatch_norm < MISMATCH_TOL and current.nontriviality > CANDIDATE_SCORE
    if candidate:
        logger.warning(f"nontrivial regular candidate at {tuple(point)}: {current}")
    logger.info(
        f"refined to x0={point[0]!r}, y0={point[1]!r} in {iteration} iterations ({converged_by})"
    )
    _, trajectory = shot_trajectory(params, *point, t_max=t_max)
    return RefineResult(
        x0=float(point[0]),
        y0=float(point[1]),
        iterations=iteration,
        converged_by=converged_by,
        shot=current,
        candidate=candidate,
        trajectory=trajectory,
    )


if __name__ == "__main__":
    from ricciprofiles.soliton.koiso_cao import initial_data, solve_cao_parameter

    params = Params(m=2, k=1)
    data = initial_data(params, solve_cao_parameter(params))
    print(shoot(params, data.x0, data.y0))
