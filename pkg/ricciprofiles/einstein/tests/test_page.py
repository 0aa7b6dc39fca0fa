from __future__ import annotations

import time
from fractions import Fraction

import numpy as np
import pytest

from ricciprofiles.common.base_models import Params
from ricciprofiles.common.exceptions import InvalidRoot, NoBracket
from ricciprofiles.common.utils.derivatives import differentiate
from ricciprofiles.einstein import (
    EinsteinData,
    build_page_profile,
    dsx_residual,
    g_f_functions,
    p_bracket_value,
    p_poly,
    phi_from_xi,
    phid_from_xi,
    s_poly,
    solve_page_parameter,
    solve_phi_linear,
    t_of_xi,
    theta,
    xi_of_t,
)
from ricciprofiles.ode_core import residual_report
from ricciprofiles.ode_core.system import constraint_lhs

params = Params(m=2, k=1)
cases = [(2, 1), (3, 1), (3, 2), (4, 1), (4, 3), (5, 2)]


def test_s_poly_expansion() -> None:
    for a in (-0.4, -0.25, 0.1):
        xi = np.linspace(-0.9, 0.9, 7)
        expected = (
            -(2 * a**2 + a)
            - (2 * a**2 + 2 * a + 2) * xi**2
            + (a + 2) * xi**4 / 3
        )
        np.testing.assert_allclose(s_poly(params, a, xi), expected, rtol=1e-13, atol=1e-15)


@pytest.mark.parametrize("m, k", cases)
def test_s_poly_even_and_p_consistent(m: int, k: int) -> None:
    p = Params(m=m, k=k)
    xi = np.linspace(-0.95, 0.95, 11)
    for a in (-0.25 * k / m, -0.6 * k / m, 0.3):
        np.testing.assert_array_equal(s_poly(p, a, xi), s_poly(p, a, -xi))
        assert np.isclose(s_poly(p, a, a) / a, p_poly(p, a), rtol=1e-12, atol=1e-14)


def test_p_poly_quartic() -> None:
    a = np.linspace(-0.5, 0.5, 9)
    expected = a**4 / 3 - 4 * a**3 / 3 - 2 * a**2 - 4 * a - 1
    np.testing.assert_allclose(p_poly(params, a), expected, rtol=1e-14, atol=1e-15)
    assert p_poly(params, Fraction(0)) == -1


@pytest.mark.parametrize("m, k", cases)
def test_p_bracket(m: int, k: int) -> None:
    p = Params(m=m, k=k)
    exact = p_poly(p, Fraction(-k, m))
    assert exact > 0
    assert np.isclose(p_bracket_value(p), float(exact), rtol=1e-13)
    assert p_poly(p, Fraction(0)) == -k


def test_p_bracket_rational() -> None:
    assert p_poly(params, Fraction(-1, 2)) == Fraction(11, 16)
    assert np.isclose(p_bracket_value(params), 11 / 16, rtol=1e-15)


def test_solve_page_parameter() -> None:
    a = solve_page_parameter(params)
    assert abs(a + 0.2817) < 1e-3
    assert abs(p_poly(params, a)) < 1e-12

    a3 = solve_page_parameter(Params(m=3, k=1))
    assert -1 / 3 < a3 < 0
    assert abs(p_poly(Params(m=3, k=1), a3)) < 1e-12


def test_solve_page_parameter_bracket_failure(monkeypatch: pytest.MonkeyPatch) -> None:
    import ricciprofiles.einstein.page as page

    monkeypatch.setattr(page, "p_poly", lambda params, a: 1.0)
    with pytest.raises(NoBracket):
        page.solve_page_parameter(params)


def test_theta_and_xi() -> None:
    a = -0.3
    t = np.linspace(0, 3, 31)
    th, thd = theta(a, t)
    np.testing.assert_allclose(2 * thd / th, xi_of_t(a, t), rtol=1e-14, atol=1e-15)
    np.testing.assert_allclose(t_of_xi(a, xi_of_t(a, t)), t, atol=1e-12)
    assert np.isclose(th[0], 1.0, rtol=1e-15)
    with pytest.raises(ValueError):
        theta(1.0, t)


def test_phi_from_xi() -> None:
    a = solve_page_parameter(params)
    assert abs(phi_from_xi(params, a, a)) < 1e-12
    assert abs(phi_from_xi(params, a, -a)) < 1e-12
    expected = -2 * (2 * a**2 + a) / (1 - a**2)
    assert np.isclose(phi_from_xi(params, a, 0.0), expected, rtol=1e-12)
    assert expected > 0
    assert np.isclose(phid_from_xi(params, a, a), 1.0, atol=1e-10)
    assert np.isclose(phid_from_xi(params, a, -a), -1.0, atol=1e-10)


@pytest.mark.parametrize("m, k", cases)
def test_dsx(m: int, k: int) -> None:
    p = Params(m=m, k=k)
    a = solve_page_parameter(p)
    xi = np.linspace(-0.98, 0.98, 100)
    assert np.max(np.abs(dsx_residual(p, a, xi))) < 1e-8


@pytest.mark.parametrize("m, k", cases)
def test_build_page_profile(m: int, k: int) -> None:
    p = Params(m=m, k=k)
    a = solve_page_parameter(p)
    solution = build_page_profile(p, a, n_samples=1001)
    traj = solution.trajectory
    assert traj.branch == "einstein"
    assert len(traj) == 1001
    assert np.isclose(solution.T, 2 * np.log((1 - a) / (1 + a)), rtol=1e-15)
    assert abs(traj.phi[0]) < 1e-10 and abs(traj.phi[-1]) < 1e-10
    assert abs(traj.phid[0] - k) < 1e-8 and abs(traj.phid[-1] + k) < 1e-8
    assert np.min(traj.phi[1:-1]) > 0

    report = residual_report(p, traj)
    assert report.passes(1e-8), report.sup_norms
    assert np.all(report.eq_xdd2 == 0)


def test_build_page_profile_rejects_non_root() -> None:
    with pytest.raises(InvalidRoot):
        build_page_profile(params, -0.2)


def test_einstein_data_constraint() -> None:
    a = solve_page_parameter(params)
    data = EinsteinData.from_page(params, a)
    assert data.phid0 == 1.0 and data.phi0 == 0.0
    assert abs(data.constraint_defect()) < 1e-14
    with pytest.raises(ValueError):
        EinsteinData(params=params, x0=0.0, xd0=0.1, phi0=0.0, phid0=1.0)
    with pytest.raises(ValueError):
        EinsteinData(params=params, x0=0.0, xd0=1.5, phi0=0.0, phid0=1.0)


def test_solve_phi_linear_matches_page() -> None:
    a = solve_page_parameter(params)
    solution = build_page_profile(params, a)
    data = EinsteinData.from_page(params, a)
    phi, phid = solve_phi_linear(params, data, solution.trajectory.t, with_derivative=True)
    np.testing.assert_allclose(phi, solution.trajectory.phi, atol=1e-9)
    np.testing.assert_allclose(phid, solution.trajectory.phid, atol=1e-9)


@pytest.mark.parametrize("phid0", [0.0, 0.7, -1.3])
def test_solve_phi_linear_zero_slope(phid0: float) -> None:
    m = 3
    p = Params(m=m, k=1)
    x0 = 0.2
    data = EinsteinData(params=p, x0=x0, xd0=0.0, phi0=2 * m - 2 * np.exp(-x0), phid0=phid0)
    t = np.linspace(0.0, 2.0, 401)
    phi, phid = solve_phi_linear(p, data, t, with_derivative=True)
    assert np.isclose(phi[0], data.phi0, rtol=1e-13)
    assert np.isclose(phid[0], phid0, atol=1e-13)

    xd = np.tanh(t / 2)
    x = x0 + 2 * np.log(theta(0.0, t)[0])
    residual = constraint_lhs(m, x, xd, 0.0 * t, 0.0 * t, phi, phid)
    assert np.max(np.abs(residual)) < 1e-10
    np.testing.assert_allclose(differentiate(t, phi), phid, atol=1e-8)


def test_g_f_functions() -> None:
    a = solve_page_parameter(params)
    data = EinsteinData.from_page(params, a)
    T = 2 * np.log((1 - a) / (1 + a))
    t = np.linspace(0.05 * T, 0.3 * T, 501)
    g, f = g_f_functions(data, t)
    phi = solve_phi_linear(params, data, t)
    derivative = differentiate(t, g * phi)
    np.testing.assert_allclose(derivative, f, rtol=1e-7)


@pytest.mark.parametrize("m, k", cases)
def test_build_page_profile_runtime(m: int, k: int) -> None:
    p = Params(m=m, k=k)
    start = time.perf_counter()
    solution = build_page_profile(p, solve_page_parameter(p))
    residual_report(p, solution.trajectory)
    assert time.perf_counter() - start < 1.0


if __name__ == "__main__":
    test_build_page_profile(2, 1)
