from __future__ import annotations

import numpy as np
import pytest

from ricciprofiles.common.base_models import Params, ProfileState
from ricciprofiles.common.exceptions import SingularPhi
from ricciprofiles.ode_core import first_integral, rhs

params = Params(m=2, k=1)


def test_rhs_at_rest() -> None:
    state = ProfileState(t=0.0, x=0.0, xd=1.0, y=0.0, yd=0.0, phi=1.0, phid=0.0)
    d = rhs(params, state)
    assert (d.xd, d.xdd, d.yd, d.ydd, d.phid, d.phidd) == (1.0, 0.0, 0.0, 0.0, 0.0, 0.0)


def test_rhs_values() -> None:
    state = ProfileState(t=0.3, x=0.0, xd=0.0, y=0.5, yd=1.0, phi=2.0, phid=1.0)
    d = rhs(params, state)
    assert d.xdd == 1.0
    assert np.isclose(d.ydd, (-1 - 0.5 * np.exp(0.5)) / 2, rtol=1e-15, atol=0)
    assert d.phidd == 2.0


def test_rhs_is_pure() -> None:
    state = ProfileState(t=0.1, x=0.2, xd=-0.4, y=0.3, yd=0.7, phi=0.9, phid=0.1)
    first = rhs(params, state).as_array()
    second = rhs(params, state).as_array()
    np.testing.assert_array_equal(first, second)


@pytest.mark.parametrize("phi", [0.0, 1e-14, -1e-13])
def test_rhs_rejects_vanishing_phi(phi: float) -> None:
    state = ProfileState(t=0.0, x=0.0, xd=0.0, y=0.0, yd=0.0, phi=phi, phid=1.0)
    with pytest.raises(SingularPhi):
        rhs(params, state)


def test_first_integral_constant_seed() -> None:
    state = ProfileState(t=0.0, x=0.0, xd=0.0, y=0.0, yd=0.0, phi=1.0, phid=0.0)
    assert first_integral(params, state) == 1.0


def test_first_integral_scales_with_exp_x() -> None:
    m = 3
    p = Params(m=m, k=1)
    state = ProfileState(t=0.0, x=1.5, xd=0.2, y=-0.1, yd=0.4, phi=0.8, phid=-0.3)
    lhs = (
        2 * 0.2 * -0.3
        - (2 * m - 1) * 0.8 * 0.2**2
        + 0.8 * 0.4**2
        + 2 * (-0.1 - 1) * np.exp(-0.1 - 1.5)
        - 0.8
        + 2 * m
    )
    assert np.isclose(first_integral(p, state), np.exp(1.5) * lhs, rtol=1e-14)


if __name__ == "__main__":
    test_rhs_values()
