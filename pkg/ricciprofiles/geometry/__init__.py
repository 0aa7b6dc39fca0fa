from ricciprofiles.geometry.classify import CaseTag, classify_case, sigma_fit
from ricciprofiles.geometry.inversion import invert_profile, sigma_inversion_defect
from ricciprofiles.geometry.radial import RadialProfile, radial_profile
from ricciprofiles.geometry.samples import (
    ConformalScalars,
    GeometricSample,
    GeometricSamples,
    SolitonResidualSample,
    SolitonResiduals,
    conformal_scalars,
    geometric_samples,
    soliton_residuals,
)

__all__ = [
    "CaseTag",
    "ConformalScalars",
    "GeometricSample",
    "GeometricSamples",
    "RadialProfile",
    "SolitonResidualSample",
    "SolitonResiduals",
    "classify_case",
    "conformal_scalars",
    "geometric_samples",
    "invert_profile",
    "radial_profile",
    "sigma_fit",
    "sigma_inversion_defect",
    "soliton_residuals",
]
