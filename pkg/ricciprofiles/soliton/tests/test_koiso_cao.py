from __future__ import annotations

import time

import numpy as np
import pytest

from ricciprofiles.common.base_models import Params
from ricciprofiles.common.exceptions import InvalidRoot
from ricciprofiles.common.utils.derivatives import differentiate
from ricciprofiles.ode_core import first_integral, first_integral_samples, residual_report
from ricciprofiles.soliton import (
    build_cao_profile,
    cao_interval,
    evaluate_cao,
    h_moment,
    initial_data,
    objective_discrepancy,
    quadrature_objective,
    s_of_a,
    solve_cao_parameter,
)

params = Params(m=2, k=1)
cases = [(2, 1), (3, 1), (3, 2), (4, 1)]
all_pairs = [(m, k) for m in range(2, 6) for k in range(1, m)]


def test_h_moment() -> None:
    assert h_moment(2, 0.0, 3.0) == 9.0
    assert np.isclose(h_moment(1, 1.0, 3.0), 1 - 4 * np.exp(-3.0), rtol=1e-14)
    m, a, Q = 3, 1.2, 3.0
    identity = m * h_moment(m - 1, a, Q) - a * h_moment(m, a, Q) - Q**m * np.exp(-a * Q)
    assert abs(identity) < 1e-12 * m * h_moment(m - 1, a, Q)


@pytest.mark.parametrize("a", [0.3, 0.49, 0.5, 0.8, 2.0])
def test_h_moment_branches_agree(a: float) -> None:
    below = h_moment(4, a, 2.5, a_switch=np.inf)
    above = h_moment(4, a, 2.5, a_switch=0.0)
    assert np.isclose(below, above, rtol=1e-11)


def test_s_of_a() -> None:
    assert np.isclose(s_of_a(params, 0.0), -4.5, rtol=1e-15)
    assert np.isclose(s_of_a(params, 1.0), -0.3528, atol=1e-4)
    assert s_of_a(params, 2.0) > 0


@pytest.mark.parametrize("m, k", all_pairs)
def test_s_of_a_sign_change(m: int, k: int) -> None:
    p = Params(m=m, k=k)
    assert s_of_a(p, 0.0) < 0 < s_of_a(p, float(m * (m - k)))


def test_quadrature_objective() -> None:
    assert np.isclose(quadrature_objective(params, 0.0), -2 / 3, rtol=1e-13)
    assert quadrature_objective(params, 2.0) > 0


def test_solve_cao_parameter() -> None:
    a_j = solve_cao_parameter(params)
    assert abs(a_j - 0.52) < 0.02
    assert abs(quadrature_objective(params, a_j)) < 1e-12

    a_s = solve_cao_parameter(params, "paper_S")
    assert abs(a_s - 1.9) < 0.05
    assert abs(s_of_a(params, a_s)) < 1e-12
    assert 0 < a_j < 2 and 0 < a_s < 2

    with pytest.raises(ValueError):
        solve_cao_parameter(params, "newton")  # type: ignore[arg-type]


def test_initial_data() -> None:
    data = initial_data(params, 0.5)
    assert (data.yd0, data.y0, data.xd0) == (0.5, -0.5, -0.5)
    assert np.isclose(data.x0, -0.5, atol=1e-15)
    assert data.phid0 == 1.0
    assert max(map(abs, data.cnd_residuals())) < 1e-15
    assert abs(first_integral(params, data.start_state())) < 1e-14


def test_initial_data_random() -> None:
    rng = np.random.default_rng(7)
    for _ in range(20):
        m = int(rng.integers(2, 6))
        k = int(rng.integers(1, m))
        p = Params(m=m, k=k)
        data = initial_data(p, float(rng.uniform(0.01, m * (m - k))))
        assert max(map(abs, data.cnd_residuals())) < 1e-14 * max(1.0, abs(data.yd0))


def test_phi_end_matches_quadrature() -> None:
    a = 0.3
    T = cao_interval(params)
    traj = evaluate_cao(params, a, np.linspace(0.0, T, 201))
    g_end = np.exp(2 * T - a * np.exp(T))
    assert np.isclose(traj.phi[-1], quadrature_objective(params, a) / g_end, rtol=1e-10)
    assert np.isclose(traj.phid[-1], -1.0 + (a * 3 - 2) * traj.phi[-1], rtol=1e-12)


@pytest.mark.parametrize("m, k", cases)
def test_build_cao_profile(m: int, k: int) -> None:
    p = Params(m=m, k=k)
    a = solve_cao_parameter(p)
    solution = build_cao_profile(p, a, n_samples=1001)
    traj = solution.trajectory
    assert traj.branch == "koiso_cao"
    assert solution.T == np.log((m + k) / (m - k))
    assert abs(traj.phi[0]) < 1e-8 and abs(traj.phi[-1]) < 1e-8
    assert abs(traj.phid[0] - k) < 1e-8 and abs(traj.phid[-1] + k) < 1e-8
    assert np.min(traj.phi[1:-1]) > 0

    report = residual_report(p, traj)
    assert report.passes(1e-8), report.sup_norms

    sigma = np.exp((traj.x - traj.y + traj.t) / 2)
    assert np.max(np.abs(sigma - sigma[0])) < 1e-9
    np.testing.assert_allclose(traj.yd - traj.xd, 1.0, atol=1e-12)
    ydd = differentiate(traj.t, traj.yd)
    np.testing.assert_allclose(ydd, (traj.yd - traj.xd) * traj.yd, atol=1e-6)
    assert np.max(np.abs(first_integral_samples(traj))) < 1e-9


def test_build_cao_profile_rejects_other_roots() -> None:
    with pytest.raises(InvalidRoot):
        build_cao_profile(params, 1.0)
    solution = build_cao_profile(params, 1.0, check=False)
    assert abs(solution.phi_end) > 1e-3


def test_objective_discrepancy() -> None:
    report = objective_discrepancy(params, n_samples=201)
    quadrature, s_root = report.outcomes["quadrature_J"], report.outcomes["paper_S"]
    assert quadrature.passes
    assert abs(quadrature.j_residual) < 1e-12
    assert abs(s_root.s_residual) < 1e-12
    assert s_root.a > quadrature.a
    assert not s_root.passes
    assert abs(s_root.phi_end) > 1e-6


@pytest.mark.parametrize("m, k", cases)
def test_build_cao_profile_runtime(m: int, k: int) -> None:
    p = Params(m=m, k=k)
    start = time.perf_counter()
    solution = build_cao_profile(p, solve_cao_parameter(p))
    residual_report(p, solution.trajectory)
    assert time.perf_counter() - start < 1.0


if __name__ == "__main__":
    test_build_cao_profile(2, 1)
