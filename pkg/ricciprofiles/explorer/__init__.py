from ricciprofiles.explorer.scan import SCAN_COLUMNS, ScanAxis, ScanGrid, scan
from ricciprofiles.explorer.shooting import (
    RefineResult,
    ShotResult,
    admissible_start,
    refine,
    shoot,
    shot_trajectory,
)

__all__ = [
    "SCAN_COLUMNS",
    "RefineResult",
    "ScanAxis",
    "ScanGrid",
    "ShotResult",
    "admissible_start",
    "refine",
    "scan",
    "shoot",
    "shot_trajectory",
]
