from __future__ import annotations

import numpy as np
import pytest

from ricciprofiles.common.base_models import Params
from ricciprofiles.common.exceptions import NoConvergence
from ricciprofiles.einstein import EinsteinData, solve_page_parameter
from ricciprofiles.einstein.page import page_interval, solve_phi_linear, theta, xi_of_t
from ricciprofiles.explorer import admissible_start, refine, shoot, shot_trajectory
from ricciprofiles.ode_core import first_integral, integrate
from ricciprofiles.soliton import (
    CaoData,
    cao_interval,
    evaluate_cao,
    initial_data,
    solve_cao_parameter,
)

params = Params(m=2, k=1)


@pytest.fixture(scope="module")
def page() -> EinsteinData:
    return EinsteinData.from_page(params, solve_page_parameter(params))


@pytest.fixture(scope="module")
def cao() -> CaoData:
    return initial_data(params, solve_cao_parameter(params))


def test_admissible_start_constraint(cao: CaoData) -> None:
    start = admissible_start(params, cao.x0, cao.y0)
    assert start.t == params.start_offset
    assert abs(first_integral(params, start)) < 1e-10 * np.exp(cao.x0)


def test_admissible_start_follows_page(page: EinsteinData) -> None:
    a = page.xd0
    start = admissible_start(params, page.x0, 0.0)
    T = page_interval(a)
    traj = integrate(params, start, T - params.start_offset, n_samples=401)
    assert traj.t_end > 0.99 * T
    big_theta, _ = theta(a, traj.t)
    assert np.max(np.abs(traj.x - page.x0 - 2 * np.log(big_theta))) < 1e-6
    assert np.max(np.abs(traj.xd - xi_of_t(a, traj.t))) < 1e-6
    assert np.max(np.abs(traj.phi - solve_phi_linear(params, page, traj.t))) < 1e-6
    assert np.max(np.abs(traj.y)) == 0.0


def test_admissible_start_follows_cao(cao: CaoData) -> None:
    start = admissible_start(params, cao.x0, cao.y0)
    T = cao_interval(params)
    traj = integrate(params, start, T - params.start_offset, n_samples=401)
    assert traj.t_end > 0.99 * T
    closed = evaluate_cao(params, cao.a, traj.t)
    assert np.max(np.abs(traj.x - closed.x)) < 1e-6
    assert np.max(np.abs(traj.y - closed.y)) < 1e-6
    assert np.max(np.abs(traj.phi - closed.phi)) < 1e-6


def test_shoot_page(page: EinsteinData) -> None:
    result = shoot(params, page.x0, 0.0)
    assert result.hit
    assert result.terminated_by == "phi_zero"
    assert abs(result.T_hit - page_interval(page.xd0)) < 1e-6
    assert abs(result.mismatch1) < 1e-6
    assert abs(result.mismatch2) < 1e-12
    assert result.drift < 1e-7
    assert result.nontriviality == 0.0


def test_shoot_cao(cao: CaoData) -> None:
    result = shoot(params, cao.x0, cao.y0)
    assert result.hit
    assert abs(result.T_hit - np.log(3.0)) < 1e-6
    assert abs(result.mismatch1) < 1e-6
    # the y equation amplifies integration errors like 1/(T - t) near the landing
    assert abs(result.mismatch2) < 1e-5
    assert result.drift < 1e-7
    assert result.nontriviality < 1e-6


def test_shoot_perturbed(cao: CaoData) -> None:
    result = shoot(params, cao.x0 + 1, cao.y0)
    assert not result.hit or result.mismatch_norm > 1e-2


def test_shoot_is_deterministic(cao: CaoData) -> None:
    first = shoot(params, cao.x0 + 0.1, cao.y0 - 0.05)
    second = shoot(params, cao.x0 + 0.1, cao.y0 - 0.05)
    assert first.model_dump_json() == second.model_dump_json()


@pytest.mark.parametrize("x0", [-1.5, -0.5, 0.3])
def test_y_axis_is_invariant(x0: float) -> None:
    _, traj = shot_trajectory(params, x0, 0.0)
    assert traj is not None
    assert np.max(np.abs(traj.y)) < 1e-10


def test_shoot_t_max_and_validation(cao: CaoData) -> None:
    result = shoot(params, cao.x0, cao.y0, t_max=0.5)
    assert not result.hit
    assert result.terminated_by == "t_max"
    assert result.mismatch_norm == np.inf
    with pytest.raises(ValueError):
        shoot(params, cao.x0, cao.y0, t_max=0.0)


def test_refine_cao(cao: CaoData) -> None:
    refined = refine(params, (1.01 * cao.x0, 1.01 * cao.y0))
    assert refined.iterations <= 25
    assert abs(refined.x0 - cao.x0) < 1e-8
    assert abs(refined.y0 - cao.y0) < 1e-8
    assert not refined.candidate
    assert refined.mismatch_norm == refined.shot.mismatch_norm
    assert refined.trajectory is not None
    assert abs(refined.trajectory.t_end - refined.shot.T_hit) < 1e-3


def test_refine_page_keeps_y_axis(page: EinsteinData) -> None:
    refined = refine(params, (1.01 * page.x0, 0.0))
    assert refined.iterations <= 25
    assert abs(refined.y0) < 1e-12
    assert abs(refined.x0 - page.x0) < 1e-8
    assert refined.shot.nontriviality == 0.0


def test_refine_far_seed(cao: CaoData) -> None:
    with pytest.raises(NoConvergence):
        refine(params, (cao.x0 + 2, cao.y0 + 2), max_iter=1)


if __name__ == "__main__":
    data = initial_data(params, solve_cao_parameter(params))
    print(shoot(params, data.x0, data.y0))
