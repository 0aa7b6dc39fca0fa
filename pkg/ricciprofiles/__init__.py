"""ricciprofiles - profile solutions of Ricci solitons conformal to Kahler metrics."""

__version__ = "0.1.0"

from loguru import logger

from ricciprofiles.common.base_models import Params, ProfileState, Trajectory
from ricciprofiles.common.config import CONF, PATH
from ricciprofiles.einstein import build_page_profile, solve_page_parameter
from ricciprofiles.explorer import refine, scan, shoot
from ricciprofiles.geometry import classify_case, invert_profile, soliton_residuals
from ricciprofiles.ode_core import integrate, residual_report, taylor_start
from ricciprofiles.soliton import build_cao_profile, solve_cao_parameter

logger.disable("ricciprofiles")

__all__ = [
    "CONF",
    "PATH",
    "Params",
    "ProfileState",
    "Trajectory",
    "build_cao_profile",
    "build_page_profile",
    "classify_case",
    "integrate",
    "invert_profile",
    "refine",
    "residual_report",
    "scan",
    "shoot",
    "soliton_residuals",
    "solve_cao_parameter",
    "solve_page_parameter",
    "taylor_start",
]
