from __future__ import annotations

from collections.abc import Callable

import numpy as np
from loguru import logger
from scipy.optimize import bisect

from ricciprofiles.common.exceptions import NoBracket


def bisect_root(
    func: Callable[[float], float],
    lower: float,
    upper: float,
    maxiter: int = 200,
    xtol: float = 1e-15,
    name: str = "objective",
) -> float:
    """Returns a root of func on [lower, upper] by bisection.

    Args:
        func: continuous scalar function.
        lower: left end of the bracket.
        upper: right end of the bracket.
        maxiter: maximum number of bisection steps.
        xtol: absolute width at which the bracket is accepted.
        name: label used in log and error messages.

    Raises:
        NoBracket: func has no sign change on the bracket.
    """
    f_lower, f_upper = func(lower), func(upper)
    logger.debug(f"{name}: f({lower:.6g})={f_lower:.6g}, f({upper:.6g})={f_upper:.6g}")
    if not np.isfinite(f_lower) or not np.isfinite(f_upper):
        raise NoBracket(f"{name} is not finite at the bracket ends [{lower}, {upper}]")
    if f_lower == 0.0:
        return lower
    if f_upper == 0.0:
        return upper
    if np.sign(f_lower) == np.sign(f_upper):
        raise NoBracket(
            f"{name} has no sign change on [{lower}, {upper}]: "
            f"f(lower)={f_lower}, f(upper)={f_upper}"
        )
    root = bisect(func, lower, upper, xtol=xtol, maxiter=maxiter)
    logger.debug(f"{name}: root {root!r}, residual {func(root):.3e}")
    return float(root)
