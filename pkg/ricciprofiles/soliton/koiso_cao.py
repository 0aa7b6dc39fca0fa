"""Koiso-Cao profiles: sigma constant, y' - x' = 1.

With e^{y0-x0} = m - k and a = (m-1) y'(0) the profile is explicit,

    y = y0 + y'0 (e^t - 1),   x = x0 - t + y'0 (e^t - 1),

and phi solves (G phi)' = F with G = exp(mt - a e^t), F = (m - (m-k) e^t) G,
phi(0) = 0. The far endpoint is T = log Q, Q = (m+k)/(m-k), where phi'(T) = -k
for every a; phi(T) = 0 is the single condition J(a) = int_0^T F dt = 0.
"""

from __future__ import annotations

from itertools import pairwise

import numpy as np
from loguru import logger
from numpy.typing import ArrayLike, NDArray
from pydantic import BaseModel, ConfigDict
from scipy.integrate import quad

from ricciprofiles.common.base_models.profile import Params, ProfileState, Trajectory
from ricciprofiles.common.config import CONF
from ricciprofiles.common.types import Objective
from ricciprofiles.common.utils.boundary import boundary_failures, check_boundary
from ricciprofiles.common.utils.roots import bisect_root

A_SWITCH = 0.5
QUAD_OPTIONS = {"epsabs": 1e-15, "epsrel": 1e-13, "limit": 200}


class CaoData(BaseModel):
    """Initial data at t = 0 of a Koiso-Cao profile.

    Args:
        params: carries m and k.
        a: family parameter, a = (m-1) y'(0).
        x0: x(0).
        y0: y(0).
        yd0: y'(0).
    """

    model_config = ConfigDict(frozen=True)

    params: Params
    a: float
    x0: float
    y0: float
    yd0: float

    @property
    def xd0(self) -> float:
        return self.yd0 - 1

    @property
    def phi0(self) -> float:
        return 0.0

    @property
    def phid0(self) -> float:
        return float(self.params.k)

    def cnd_residuals(self) -> tuple[float, float, float]:
        """Defects of y'0 - x'0 = 1, (1 - m e^{x0-y0}) y'0 = y0 and
        phi'0 = [(m-1) y'0 - m] phi0 + m - e^{y0-x0}."""
        m = self.params.m
        return (
            self.yd0 - self.xd0 - 1,
            (1 - m * np.exp(self.x0 - self.y0)) * self.yd0 - self.y0,
            self.phid0 - (((m - 1) * self.yd0 - m) * self.phi0 + m - np.exp(self.y0 - self.x0)),
        )

    def start_state(self) -> ProfileState:
        return ProfileState(
            t=0.0,
            x=self.x0,
            xd=self.xd0,
            y=self.y0,
            yd=self.yd0,
            phi=self.phi0,
            phid=self.phid0,
        )


class CaoSolution(BaseModel):
    params: Params
    a: float
    T: float
    trajectory: Trajectory
    objective_used: Objective
    j_residual: float
    s_residual: float
    phi_end: float


class ObjectiveOutcome(BaseModel):
    """Profile assembled at the root of one objective."""

    objective: Objective
    a: float
    phi_end: float
    phid_end: float
    j_residual: float
    s_residual: float
    boundary_failures: list[str]

    @property
    def passes(self) -> bool:
        return not self.boundary_failures


class DiscrepancyReport(BaseModel):
    """Both root loci of the far endpoint condition, side by side."""

    params: Params
    outcomes: dict[Objective, ObjectiveOutcome]


def interval_ratio(params: Params) -> float:
    """Q = (m+k)/(m-k), the value of e^T."""
    return (params.m + params.k) / (params.m - params.k)


def cao_interval(params: Params) -> float:
    return float(np.log(interval_ratio(params)))


def h_moment(order: int, a: float, Q: float, a_switch: float = A_SWITCH) -> float:
    """Returns H = int_0^Q kappa^order e^{-a kappa} d kappa.

    For a >= a_switch the integration by parts identity
    n H_{n-1} = a H_n + Q^n e^{-aQ} is run upwards from H_0 = (1 - e^{-aQ})/a;
    smaller a uses adaptive quadrature, since the recursion divides by a.

    Args:
        order: power of kappa, at least 0.
        a: exponential rate, at least 0.
        Q: upper limit, positive.
        a_switch: smallest a handled by the recursion.
    """
    if order < 0 or Q <= 0:
        raise ValueError(f"h_moment needs order >= 0 and Q > 0, got {order}, {Q}")
    if a == 0:
        return Q ** (order + 1) / (order + 1)
    if a < a_switch:
        value, _ = quad(lambda kappa: kappa**order * np.exp(-a * kappa), 0.0, Q, **QUAD_OPTIONS)
        return float(value)
    tail = np.exp(-a * Q)
    moment = -np.expm1(-a * Q) / a
    for n in range(1, order + 1):
        moment = (n * moment - Q**n * tail) / a
    return float(moment)


def s_of_a(params: Params, a: float) -> float:
    """Returns S(a) = H_{m-1} + (k-m) H_m with upper limit Q = (m+k)/(m-k).

    For a > 0 the moments are combined through m H_{m-1} = a H_m + Q^m e^{-aQ},

        S(a) = (1 - m(m-k)/a) H_{m-1} + (m-k) Q^m e^{-aQ}/a,

    which keeps the sign of S exact at a = m(m-k).
    """
    if a < 0:
        raise ValueError(f"s_of_a needs a >= 0, got {a}")
    m, k = params.m, params.k
    Q = interval_ratio(params)
    lower = h_moment(m - 1, a, Q)
    if a == 0:
        return lower + (k - m) * h_moment(m, a, Q)
    return float((1 - m * (m - k) / a) * lower + (m - k) * Q**m * np.exp(-a * Q) / a)


def _weight(params: Params, a: float, t: ArrayLike) -> NDArray[np.float64]:
    """G = exp(mt - a e^t)."""
    t = np.asarray(t, dtype=float)
    return np.exp(params.m * t - a * np.exp(t))


def _source(params: Params, a: float, t: ArrayLike) -> NDArray[np.float64]:
    """F = (m - (m-k) e^t) G."""
    m, k = params.m, params.k
    t = np.asarray(t, dtype=float)
    return (m - (m - k) * np.exp(t)) * _weight(params, a, t)


def quadrature_objective(params: Params, a: float) -> float:
    """Returns J(a) = int_0^T (m - (m-k)e^t) exp(mt - a e^t) dt, zero iff phi(T) = 0."""
    if a < 0:
        raise ValueError(f"quadrature_objective needs a >= 0, got {a}")
    value, _ = quad(lambda t: float(_source(params, a, t)), 0.0, cao_interval(params), **QUAD_OPTIONS)
    return float(value)


OBJECTIVES = {"quadrature_J": quadrature_objective, "paper_S": s_of_a}


def solve_cao_parameter(
    params: Params, objective: Objective = "quadrature_J", delta: float = 1e-12
) -> float:
    """Returns the root a in (0, m(m-k)) of the chosen objective by bisection.

    Args:
        params: carries m and k.
        objective: quadrature_J, the far boundary condition itself, or paper_S.
        delta: left end of the bracket.

    Raises:
        NoBracket: the objective has no sign change on the bracket.
    """
    if objective not in OBJECTIVES:
        raise ValueError(f"objective must be one of {sorted(OBJECTIVES)}, got {objective!r}")
    m, k = params.m, params.k
    func = OBJECTIVES[objective]
    a = bisect_root(
        lambda a: func(params, a),
        delta,
        float(m * (m - k)),
        name=f"{objective} (m={m}, k={k})",
    )
    logger.info(f"Koiso-Cao parameter for m={m}, k={k} from {objective}: a={a!r}")
    return a


def initial_data(params: Params, a: float) -> CaoData:
    """Data at t = 0 with y'0 = a/(m-1), y0 = -k y'0/(m-k), x0 = y0 - log(m-k)."""
    if a <= 0:
        raise ValueError(f"initial_data needs a > 0, got {a}")
    m, k = params.m, params.k
    yd0 = a / (m - 1)
    y0 = -k * yd0 / (m - k)
    return CaoData(params=params, a=a, x0=y0 - float(np.log(m - k)), y0=y0, yd0=yd0)


def evaluate_cao(params: Params, a: float, t: ArrayLike) -> Trajectory:
    """Closed form profile of parameter a sampled at t >= 0, without boundary checks.

    phi is (1/G) int_0^t F, accumulated by adaptive quadrature between
    consecutive samples, so phi at T equals J(a)/G(T).
    """
    m, k = params.m, params.k
    t = np.asarray(t, dtype=float)
    if t.size == 0 or t[0] < 0:
        raise ValueError("evaluate_cao needs a non empty grid with t >= 0")
    yd0 = a / (m - 1)
    y0 = -k * yd0 / (m - k)
    x0 = y0 - float(np.log(m - k))

    edges = np.concatenate([[0.0], t])
    pieces = [
        quad(lambda s: float(_source(params, a, s)), lo, hi, **QUAD_OPTIONS)[0]
        for lo, hi in pairwise(edges)
    ]
    phi = np.cumsum(pieces) / _weight(params, a, t)
    growth = np.expm1(t)
    exp_t = np.exp(t)

    return Trajectory(
        params=params,
        t=t,
        x=x0 - t + yd0 * growth,
        xd=yd0 * exp_t - 1,
        y=y0 + yd0 * growth,
        yd=yd0 * exp_t,
        phi=phi,
        phid=(a * exp_t - m) * phi + m - (m - k) * exp_t,
        branch="koiso_cao",
        a=a,
        extra={"T": cao_interval(params)},
    )


def build_cao_profile(
    params: Params,
    a: float,
    n_samples: int | None = None,
    objective_used: Objective = "quadrature_J",
    check: bool = True,
) -> CaoSolution:
    """Assembles the Koiso-Cao profile of parameter a on a uniform grid of [0, T].

    Args:
        params: carries m and k.
        a: root of the objective.
        n_samples: number of samples, defaults to CONF.n_samples.
        objective_used: objective a was solved from, recorded in the result.
        check: raise InvalidRoot when the boundary conditions fail.

    Raises:
        InvalidRoot: check is set and the profile fails the boundary conditions.
    """
    n_samples = n_samples or CONF.n_samples
    T = cao_interval(params)
    trajectory = evaluate_cao(params, a, np.linspace(0.0, T, n_samples))
    trajectory = trajectory.with_columns(
        extra={**trajectory.extra, "objective": objective_used}
    )
    if check:
        check_boundary(trajectory, params.k)

    solution = CaoSolution(
        params=params,
        a=a,
        T=T,
        trajectory=trajectory,
        objective_used=objective_used,
        j_residual=quadrature_objective(params, a),
        s_residual=s_of_a(params, a),
        phi_end=float(trajectory.phi[-1]),
    )
    logger.info(
        f"Koiso-Cao profile m={params.m}, k={params.k}: a={a:.12g}, T={T:.12g}, "
        f"phi(T)={solution.phi_end:.2e}, J={solution.j_residual:.2e}, S={solution.s_residual:.2e}"
    )
    return solution


def objective_discrepancy(params: Params, n_samples: int | None = None) -> DiscrepancyReport:
    """Assembles the profiles at the roots of J and of S and compares their far endpoints."""
    outcomes = {}
    for objective in OBJECTIVES:
        a = solve_cao_parameter(params, objective)
        solution = build_cao_profile(params, a, n_samples, objective, check=False)
        traj = solution.trajectory
        outcomes[objective] = ObjectiveOutcome(
            objective=objective,
            a=a,
            phi_end=solution.phi_end,
            phid_end=float(traj.phid[-1]),
            j_residual=solution.j_residual,
            s_residual=solution.s_residual,
            boundary_failures=boundary_failures(traj, params.k),
        )
        if outcomes[objective].boundary_failures:
            logger.warning(
                f"{objective} root a={a:.6g} fails the boundary conditions: "
                + "; ".join(outcomes[objective].boundary_failures)
            )
    return DiscrepancyReport(params=params, outcomes=outcomes)


if __name__ == "__main__":
    params = Params(m=2, k=1)
    report = objective_discrepancy(params)
    for outcome in report.outcomes.values():
        print(outcome)
