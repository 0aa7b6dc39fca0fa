"""Einstein profiles (y = 0): the Page / Berard Bergery family.

With y = 0 the profile system reduces to x = x0 + 2 log(Theta) where
2 Theta = (1 + a) e^{t/2} + (1 - a) e^{-t/2}, a = x'(0), and a linear first
order equation for phi. In the variable xi = x' = 2 Theta'/Theta, which obeys
2 xi' = 1 - xi^2, that equation integrates to

    (1 - a^2)(1 - xi^2)^m phi = 2 (R(xi) + K xi)

with an even polynomial R of degree 2m and a constant K. For Page data R is the
polynomial S(a, xi) and K = 0; the boundary conditions then reduce to the single
polynomial equation P(a) = S(a, a)/a = 0 on (-k/m, 0).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb

import numpy as np
from loguru import logger
from numpy.polynomial import Polynomial
from numpy.polynomial import polynomial as P
from numpy.typing import ArrayLike, NDArray
from pydantic import BaseModel, ConfigDict, model_validator

from ricciprofiles.common.base_models.profile import Params, Trajectory
from ricciprofiles.common.config import CONF
from ricciprofiles.common.exceptions import InvalidRoot
from ricciprofiles.common.utils.boundary import check_boundary
from ricciprofiles.common.utils.roots import bisect_root


def _binom(n: int, j: int) -> int:
    return comb(n, j) if 0 <= j <= n else 0


class EinsteinData(BaseModel):
    """Initial data (x0, x'(0), phi(0), phi'(0)) of an Einstein profile, y = 0.

    The data must satisfy 2 x'0 phi'0 = [(2m-1) x'0^2 + 1] phi0 + 2 e^{-x0} - 2m,
    which is the constraint at t = 0.
    """

    model_config = ConfigDict(frozen=True)

    params: Params
    x0: float
    xd0: float
    phi0: float
    phid0: float

    @model_validator(mode="after")
    def _check_constraint(self) -> EinsteinData:
        if not abs(self.xd0) < 1:
            raise ValueError(f"need |x'(0)| < 1, got {self.xd0}")
        defect = self.constraint_defect()
        if abs(defect) > 1e-9 * (1 + abs(np.exp(-self.x0)) + abs(self.phi0)):
            raise ValueError(f"initial data violate the constraint by {defect:.3e}")
        return self

    def constraint_defect(self) -> float:
        m = self.params.m
        return float(
            2 * self.xd0 * self.phid0
            - ((2 * m - 1) * self.xd0**2 + 1) * self.phi0
            - 2 * np.exp(-self.x0)
            + 2 * m
        )

    @classmethod
    def from_page(cls, params: Params, a: float) -> EinsteinData:
        """Data of the Page family, phi(0) = 0 and phi'(0) = k."""
        m, k = params.m, params.k
        return cls(
            params=params, x0=-float(np.log(k * a + m)), xd0=a, phi0=0.0, phid0=float(k)
        )


class PageSolution(BaseModel):
    params: Params
    a: float
    T: float
    p_residual: float
    trajectory: Trajectory


def theta(a: float, t: ArrayLike) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Returns Theta and Theta' with 2 Theta = (1+a)e^{t/2} + (1-a)e^{-t/2}.

    Args:
        a: x'(0), |a| < 1.
        t: profile variable.
    """
    if not abs(a) < 1:
        raise ValueError(f"theta needs |a| < 1, got {a}")
    t = np.asarray(t, dtype=float)
    grow, decay = (1 + a) * np.exp(t / 2), (1 - a) * np.exp(-t / 2)
    return (grow + decay) / 2, (grow - decay) / 4


def xi_of_t(a: float, t: ArrayLike) -> NDArray[np.float64]:
    """xi = 2 Theta'/Theta = tanh(t/2 + artanh a)."""
    return np.tanh(np.asarray(t, dtype=float) / 2 + np.arctanh(a))


def t_of_xi(a: float, xi: ArrayLike) -> NDArray[np.float64]:
    return 2 * (np.arctanh(np.asarray(xi, dtype=float)) - np.arctanh(a))


def page_interval(a: float) -> float:
    """T = 2 log((1-a)/(1+a)), where xi reaches -a."""
    return float(2 * np.log((1 - a) / (1 + a)))


def linear_numerator(m: int, a: float, c: float) -> Polynomial:
    """Even polynomial R(xi) of the phi equation along x' = xi with e^{-x0} = c.

    R = sum_j (-1)^j xi^{2j}/(2j-1) [C(m-1,j) A + C(m-1,j-1) c], A = c - m(1-a^2),
    so that d(R/xi)/dxi = (1-xi^2)^{m-1} (A xi^{-2} - c).
    """
    big_a = c - m * (1 - a * a)
    coefficients = np.zeros(2 * m + 1)
    for j in range(m + 1):
        coefficients[2 * j] = (
            (-1) ** j
            / (2 * j - 1)
            * (_binom(m - 1, j) * big_a + _binom(m - 1, j - 1) * c)
        )
    return Polynomial(coefficients)


def s_polynomial(params: Params, a: float) -> Polynomial:
    """S(a, .) as a polynomial in xi."""
    m, k = params.m, params.k
    return linear_numerator(m, a, k * a + m)


def s_poly(params: Params, a: float, xi: ArrayLike) -> NDArray[np.float64]:
    """Returns S(a, xi) = sum_{j=0}^{m} (-1)^j xi^{2j}/(2j-1) [C(m-1,j)(ma+k)a + C(m-1,j-1)(ka+m)]."""
    return s_polynomial(params, a)(np.asarray(xi, dtype=float))


@lru_cache
def _p_coefficients(m: int, k: int) -> tuple[Fraction, ...]:
    """Exact coefficients, in increasing powers of a, of P(a) = S(a, a)/a."""
    coefficients = [Fraction(0)] * (2 * m + 2)
    coefficients[0] -= k
    coefficients[1] -= m
    for j in range(1, m + 1):
        sign = Fraction((-1) ** j, 2 * j - 1)
        upper, lower = _binom(m - 1, j), _binom(m - 1, j - 1)
        coefficients[2 * j + 1] += sign * upper * m
        coefficients[2 * j] += sign * (upper + lower) * k
        coefficients[2 * j - 1] += sign * lower * m
    return tuple(coefficients)


def p_poly(params: Params, a: ArrayLike | Fraction) -> NDArray[np.float64] | Fraction:
    """Returns P(a) = S(a, a)/a, with P(0) = -k.

    A Fraction argument is evaluated in exact rational arithmetic.
    """
    coefficients = _p_coefficients(params.m, params.k)
    if isinstance(a, Fraction):
        value = Fraction(0)
        for c in reversed(coefficients):
            value = value * a + c
        return value
    return P.polyval(np.asarray(a, dtype=float), [float(c) for c in coefficients])


def p_bracket_value(params: Params) -> float:
    """Returns P(-k/m) = (1 - k/m)(m + k) int_0^{k/m} (1 - a^2)^{m-1} da > 0.

    At a = -k/m the factor ma + k of S vanishes, leaving (ka + m) times the
    binomial expansion of the integral.
    """
    m, k = params.m, params.k
    antiderivative = (Polynomial([1.0, 0.0, -1.0]) ** (m - 1)).integ()
    return (1 - k / m) * (m + k) * float(antiderivative(k / m) - antiderivative(0))


def solve_page_parameter(params: Params, delta: float = 1e-12, maxiter: int = 200) -> float:
    """Returns the root a in (-k/m, 0) of P by bisection.

    Args:
        params: carries m and k.
        delta: distance of the bracket ends from -k/m and 0.
        maxiter: maximum number of bisection steps.

    Raises:
        NoBracket: P has no sign change on the bracket.
    """
    m, k = params.m, params.k
    a = bisect_root(
        lambda a: float(p_poly(params, a)),
        -k / m + delta,
        -delta,
        maxiter=maxiter,
        name=f"P (m={m}, k={k})",
    )
    logger.info(f"Page parameter for m={m}, k={k}: a={a!r}")
    return a


def phi_from_xi(params: Params, a: float, xi: ArrayLike) -> NDArray[np.float64]:
    """Returns phi = 2 S(a, xi) / [(1 - a^2)(1 - xi^2)^m]."""
    xi = np.asarray(xi, dtype=float)
    return 2 * s_poly(params, a, xi) / ((1 - a * a) * (1 - xi * xi) ** params.m)


def _phi_pair(
    m: int, a: float, numerator: Polynomial, xi: NDArray[np.float64]
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """phi and d phi/dt for (1-a^2)(1-xi^2)^m phi = 2 numerator(xi), 2 xi' = 1 - xi^2."""
    one = 1 - xi * xi
    scale = (1 - a * a) * one**m
    value = numerator(xi)
    phi = 2 * value / scale
    phid = (numerator.deriv()(xi) * one + 2 * m * xi * value) / scale
    return phi, phid


def phid_from_xi(params: Params, a: float, xi: ArrayLike) -> NDArray[np.float64]:
    """Returns phi' = [S'(xi)(1 - xi^2) + 2m xi S] / [(1 - a^2)(1 - xi^2)^m]."""
    xi = np.asarray(xi, dtype=float)
    return _phi_pair(params.m, a, s_polynomial(params, a), xi)[1]


def g_f_functions(
    data: EinsteinData, t: ArrayLike
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Integrating factor G and source F with (G phi)' = F.

    G = 2/(Theta^{2m-1} Theta') and F = (e^{-x0} - m Theta^2)/(Theta^m Theta')^2,
    both singular where Theta' = 0.
    """
    m = data.params.m
    th, thd = theta(data.xd0, t)
    g = 2 / (th ** (2 * m - 1) * thd)
    f = (np.exp(-data.x0) - m * th**2) / (th**m * thd) ** 2
    return g, f


def solve_phi_linear(
    params: Params,
    data: EinsteinData,
    grid: ArrayLike,
    with_derivative: bool = False,
) -> NDArray[np.float64] | tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Solves 2x'phi' = [(2m-1)x'^2 + 1]phi + 2e^{-x} - 2m along x = x0 + 2 log Theta.

    The antiderivative of F is a Laurent polynomial in xi, so (G phi)' = F is
    integrated exactly; the solution is regular where Theta' = 0.

    Args:
        params: carries m.
        data: initial data satisfying the constraint at t = 0.
        grid: sample times.
        with_derivative: also return phi'.
    """
    m = params.m
    a = data.xd0
    c = float(np.exp(-data.x0))
    numerator = linear_numerator(m, a, c)
    # K from phi'(0); the constraint then makes phi(0) = phi0
    weight = (1 - a * a) + 2 * m * a * a
    gauge = (
        data.phid0 * (1 - a * a) ** (m + 1)
        - numerator.deriv()(a) * (1 - a * a)
        - 2 * m * a * numerator(a)
    ) / weight
    numerator = numerator + Polynomial([0.0, gauge])

    xi = xi_of_t(a, grid)
    phi, phid = _phi_pair(m, a, numerator, xi)
    return (phi, phid) if with_derivative else phi


def dsx_residual(params: Params, a: float, xi: ArrayLike) -> NDArray[np.float64]:
    """Relative defect of 4(1-xi^2) d[S/xi]/dxi = (1-a^2)^{m+1} F(xi)."""
    m, k = params.m, params.k
    xi = np.asarray(xi, dtype=float)
    s = s_polynomial(params, a)
    lhs = 4 * (1 - xi**2) * (s.deriv()(xi) * xi - s(xi)) / xi**2
    f = (
        4
        * (1 - a * a) ** (-m - 1)
        * ((m * a + k) * a / xi**2 - (k * a + m))
        * (1 - xi**2) ** m
    )
    rhs = (1 - a * a) ** (m + 1) * f
    return (lhs - rhs) / np.abs(rhs)


def build_page_profile(
    params: Params, a: float, n_samples: int | None = None
) -> PageSolution:
    """Assembles the Page profile of a root a of P on a uniform grid of [0, T].

    Args:
        params: carries m and k.
        a: root of P in (-k/m, 0).
        n_samples: number of samples, defaults to CONF.n_samples.

    Raises:
        InvalidRoot: the profile fails the boundary conditions.
    """
    m, k = params.m, params.k
    n_samples = n_samples or CONF.n_samples
    T = page_interval(a)
    if not T > 0:
        raise InvalidRoot(f"a={a} gives a non positive interval T={T}")

    t = np.linspace(0.0, T, n_samples)
    xi = xi_of_t(a, t)
    th, _ = theta(a, t)
    x0 = -np.log(k * a + m)
    phi, phid = _phi_pair(m, a, s_polynomial(params, a), xi)
    zeros = np.zeros_like(t)

    trajectory = Trajectory(
        params=params,
        t=t,
        x=x0 + 2 * np.log(th),
        xd=xi,
        y=zeros,
        yd=zeros,
        phi=phi,
        phid=phid,
        branch="einstein",
        a=a,
        extra={"T": T},
    )
    check_boundary(trajectory, k)

    p_residual = float(p_poly(params, a))
    logger.info(f"Page profile m={m}, k={k}: a={a:.12g}, T={T:.12g}, P(a)={p_residual:.2e}")
    return PageSolution(
        params=params, a=a, T=T, p_residual=p_residual, trajectory=trajectory
    )


if __name__ == "__main__":
    params = Params(m=2, k=1)
    a = solve_page_parameter(params)
    solution = build_page_profile(params, a)
    print(solution.a, solution.T, solution.p_residual)
