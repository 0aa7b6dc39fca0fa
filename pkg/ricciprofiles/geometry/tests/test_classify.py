from __future__ import annotations

import numpy as np
import pytest

from ricciprofiles.common.base_models import Params, Trajectory
from ricciprofiles.einstein import build_page_profile, solve_page_parameter
from ricciprofiles.geometry import classify_case, invert_profile
from ricciprofiles.soliton import build_cao_profile, evaluate_cao, solve_cao_parameter

params = Params(m=2, k=1)


@pytest.fixture(scope="module")
def cao() -> Trajectory:
    return build_cao_profile(params, solve_cao_parameter(params)).trajectory


def test_page_is_case_i() -> None:
    page = build_page_profile(params, solve_page_parameter(params)).trajectory
    case = classify_case(params, page)
    assert case.tag == "case_i"
    assert case.eta_i < 1e-12


def test_cao_is_case_ii(cao: Trajectory) -> None:
    case = classify_case(params, cao)
    assert case.tag == "case_ii"
    assert abs(case.q1) < 1e-9
    assert case.eta_ii < 1e-6
    assert case.eta_i < 1e-9
    assert case.sigma_defect < 1e-6


def test_inverted_cao_is_case_iii(cao: Trajectory) -> None:
    case = classify_case(params, invert_profile(cao))
    assert case.tag == "case_iii"
    assert abs(case.q0) < 1e-9


def test_classification_survives_resampling(cao: Trajectory) -> None:
    a = solve_cao_parameter(params)
    coarse = evaluate_cao(params, a, np.linspace(0.0, cao.t_end, 301))
    fine = classify_case(params, cao)
    other = classify_case(params, coarse)
    assert other.tag == fine.tag
    assert abs(other.q0 - fine.q0) < 1e-8
    assert abs(other.q1 - fine.q1) < 1e-8


def test_nontrivial_profile() -> None:
    t = np.linspace(0.0, 1.0, 101)
    traj = Trajectory(
        params=params,
        t=t,
        x=t**2,
        xd=2 * t,
        y=0.5 * np.ones_like(t),
        yd=np.zeros_like(t),
        phi=np.ones_like(t),
        phid=np.zeros_like(t),
    )
    case = classify_case(params, traj)
    assert case.tag == "nontrivial"
    assert case.sup_dev > 1e-3


def test_sigma_defect_is_weighted_by_phi() -> None:
    t = np.linspace(0.0, 1.0, 201)
    traj = Trajectory(
        params=params,
        t=t,
        x=t**2,
        xd=2 * t,
        y=np.zeros_like(t),
        yd=np.zeros_like(t),
        phi=t * (1 - t),
        phid=1 - 2 * t,
    )
    # 2(sigma'' - sigma')/sigma = x'' + (x'^2 - 1)/2 = 1.5 + 2t^2 here
    expected = np.max((1.5 + 2 * t**2) * t * (1 - t))
    assert np.isclose(classify_case(params, traj).sigma_defect, expected, rtol=1e-8)


if __name__ == "__main__":
    test_page_is_case_i()
