from __future__ import annotations

import importlib

import numpy as np
from loguru import logger

import ricciprofiles
from ricciprofiles.common.base_models import Params, Trajectory
from ricciprofiles.common.config import CONF, configure_logging
from ricciprofiles.geometry import classify_case

params = Params(m=2, k=1)
t = np.linspace(0.0, 1.0, 11)
traj = Trajectory(
    params=params,
    t=t,
    x=t**2,
    xd=2 * t,
    y=np.zeros_like(t),
    yd=np.zeros_like(t),
    phi=np.ones_like(t),
    phid=np.zeros_like(t),
)


def test_logging_silent_until_configured() -> None:
    importlib.reload(ricciprofiles)
    messages: list[str] = []
    sink = logger.add(messages.append, level="DEBUG")
    try:
        classify_case(params, traj)
        assert messages == []
    finally:
        logger.remove(sink)

    configure_logging("debug")
    sink = logger.add(messages.append, level="DEBUG")
    try:
        classify_case(params, traj)
        assert any("classified" in message for message in messages)
    finally:
        logger.remove(sink)
        configure_logging(CONF.log)


if __name__ == "__main__":
    test_logging_silent_until_configured()
