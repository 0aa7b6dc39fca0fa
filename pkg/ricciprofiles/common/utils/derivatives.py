"""Differentiation of sampled profile columns."""

from __future__ import annotations

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.interpolate import make_interp_spline


def differentiate(t: ArrayLike, values: ArrayLike) -> NDArray[np.float64]:
    """Returns the derivative of sampled values at the sample times.

    Uses the derivative of the quintic not-a-knot interpolating spline (cubic when
    fewer than six samples are given), which is accurate to high order on smooth
    data, uniform or not.

    Args:
        t: strictly increasing sample times.
        values: samples of a smooth function of t.
    """
    t = np.asarray(t, dtype=float)
    values = np.asarray(values, dtype=float)
    if t.size < 4:
        raise ValueError(f"need at least 4 samples to differentiate, got {t.size}")
    degree = 5 if t.size >= 6 else 3
    spline = make_interp_spline(t, values, k=degree)
    return spline.derivative()(t)
