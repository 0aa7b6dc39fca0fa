from ricciprofiles.common.base_models.profile import (
    Derivatives,
    Params,
    ProfileState,
    ResidualReport,
    Trajectory,
)

__all__ = ["Derivatives", "Params", "ProfileState", "ResidualReport", "Trajectory"]
