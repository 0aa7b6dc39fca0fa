from __future__ import annotations

import numpy as np
import pytest

from ricciprofiles.common.base_models import Params, Trajectory
from ricciprofiles.einstein import build_page_profile, solve_page_parameter
from ricciprofiles.geometry import conformal_scalars, geometric_samples, soliton_residuals
from ricciprofiles.soliton import build_cao_profile, solve_cao_parameter

params = Params(m=2, k=1)


@pytest.fixture(scope="module")
def page() -> Trajectory:
    return build_page_profile(params, solve_page_parameter(params)).trajectory


@pytest.fixture(scope="module")
def cao() -> Trajectory:
    return build_cao_profile(params, solve_cao_parameter(params)).trajectory


def wavy_profile(m: int) -> Trajectory:
    """A smooth profile that solves none of the equations."""
    t = np.linspace(0.0, 1.5, 301)
    return Trajectory(
        params=Params(m=m, k=1),
        t=t,
        x=0.3 * np.sin(t) - t**2 / 5,
        xd=0.3 * np.cos(t) - 2 * t / 5,
        y=0.2 + 0.1 * t**3,
        yd=0.3 * t**2,
        phi=1 + 0.5 * np.cos(2 * t),
        phid=-np.sin(2 * t),
    )


def test_geometric_samples_page(page: Trajectory) -> None:
    geometry = geometric_samples(params, page)
    assert np.all(geometry.f == 0)
    np.testing.assert_allclose(geometry.sigma, np.exp((page.x + page.t) / 2), rtol=1e-15)
    assert np.all(geometry.sigma > 0)
    assert np.max(np.abs(geometry.beta)) < 1e-8
    exact = geometric_samples(params, page, second_derivatives="equations")
    assert np.max(np.abs(exact.beta)) < 1e-12
    np.testing.assert_allclose(geometry.grad_kappa_sq, 2 * np.exp(page.t) * page.phi)
    assert list(geometry.to_frame().columns) == [
        "t", "alpha", "beta", "sigma", "f", "scal", "lap_kappa", "grad_kappa_sq"
    ]
    assert len(geometry.samples) == len(page)


def test_alpha_vanishes_with_x_slope() -> None:
    traj = wavy_profile(2).with_columns(xd=np.full(301, -1.0))
    assert np.all(geometric_samples(params, traj, "equations").alpha == 0)


def test_scal_cao(cao: Trajectory) -> None:
    geometry = geometric_samples(params, cao)
    m = 2
    assert np.all(np.isfinite(geometry.scal))
    for i in (0, 400, 1000):
        phi, phid, xd = cao.phi[i], cao.phid[i], cao.xd[i]
        phidd = (m - 1) * xd * phid + m * phi - m
        expected = 2 * np.exp(-cao.t[i]) * (m * (m - 1) - m * (m - 1) * phi - (2 * m - 1) * phid - phidd)
        assert np.isclose(geometry.scal[i], expected, rtol=1e-12, atol=1e-12)


def test_soliton_residuals_known_families(page: Trajectory, cao: Trajectory) -> None:
    for traj in (page, cao):
        residuals = soliton_residuals(params, traj)
        assert residuals.passes(1e-7), residuals.sup_norms
        for name in ("eyd_1", "eyd_2", "eyd_3", "eyd_4", "eyd_5", "r_trace", "r_hamilton"):
            assert residuals.sup_norms[name] < 1e-7, name


@pytest.mark.parametrize("m, k", [(3, 1), (3, 2)])
def test_soliton_residuals_other_dimensions(m: int, k: int) -> None:
    p = Params(m=m, k=k)
    page = build_page_profile(p, solve_page_parameter(p)).trajectory
    assert soliton_residuals(p, page).passes(1e-7)
    cao = build_cao_profile(p, solve_cao_parameter(p)).trajectory
    assert soliton_residuals(p, cao).passes(1e-7)


def test_soliton_residuals_detect_perturbation(page: Trajectory) -> None:
    bent = page.with_columns(x=page.x + 0.01 * np.sin(page.t))
    residuals = soliton_residuals(params, bent)
    assert max(residuals.sup_norms[name] for name in ("r_nfz", "r_med", "r_eyd")) > 1e-3


@pytest.mark.parametrize("m", [2, 3, 5])
def test_scalar_identities(m: int) -> None:
    p = Params(m=m, k=1)
    traj = wavy_profile(m)
    residuals = soliton_residuals(p, traj)
    scalars = conformal_scalars(p, traj)
    scale = np.exp(traj.y - traj.x)

    np.testing.assert_allclose(
        scale * scalars.r_hamilton / (m - 1), residuals.r_med, rtol=1e-10, atol=1e-10
    )
    combined = scale * (scalars.r_trace + m / (m - 1) * scalars.r_hamilton)
    np.testing.assert_allclose(combined, residuals.r_eyd, rtol=1e-10, atol=1e-9)
    assert np.max(np.abs(residuals.r_eyd)) > 1e-2


if __name__ == "__main__":
    test_scalar_identities(2)
