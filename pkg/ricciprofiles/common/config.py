"""Store configuration."""

from __future__ import annotations

__all__ = ["CONF", "PATH", "Settings", "configure_logging"]

import pathlib
import sys
from typing import Literal

from loguru import logger
from pydantic_settings import BaseSettings, SettingsConfigDict

module_path = pathlib.Path(__file__).parents[1].absolute()
repo_path = module_path.parent

LogLevel = Literal["quiet", "info", "debug"]

_loguru_levels: dict[str, str] = {
    "quiet": "WARNING",
    "info": "INFO",
    "debug": "DEBUG",
}


class Path:
    module = module_path
    repo = repo_path
    test_data = repo / "test-data"
    cwd = pathlib.Path.cwd()


class Settings(BaseSettings):
    """Numerical defaults, overridable with ``SOLITON_*`` environment variables.

    Attributes:
        log: verbosity of the stderr sink (quiet, info, debug).
        n_samples: number of samples of assembled and integrated trajectories.
        rel_tol: relative tolerance of the Runge-Kutta step controller.
        abs_tol: absolute tolerance of the Runge-Kutta step controller.
        start_offset: distance from a singular endpoint at which integration starts.
        phi_floor: smallest |phi| for which the right-hand side is evaluated.
        overflow: integration stops once any field exceeds this magnitude.
        method: embedded Runge-Kutta pair used by scipy.integrate.solve_ivp.
        n_jobs: worker processes used by grid scans.
    """

    model_config = SettingsConfigDict(env_prefix="SOLITON_", extra="ignore")

    log: LogLevel = "info"
    n_samples: int = 1001
    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    start_offset: float = 1e-4
    phi_floor: float = 1e-12
    overflow: float = 1e12
    method: Literal["RK45", "DOP853"] = "RK45"
    n_jobs: int = 1


def configure_logging(level: LogLevel | None = None) -> None:
    """Replace the loguru sinks with a single stderr sink at the requested level.

    The package logger is disabled on import and enabled here.
    """
    level = level or CONF.log
    logger.remove()
    logger.add(sys.stderr, level=_loguru_levels[level])
    logger.enable("ricciprofiles")


CONF = Settings()
PATH = Path()

if __name__ == "__main__":
    print(PATH.module)
    print(CONF)
