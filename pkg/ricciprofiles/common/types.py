from __future__ import annotations

from typing import Annotated, Literal

import numpy as np
from numpy.typing import NDArray
from pydantic import BeforeValidator
from pydantic.functional_serializers import PlainSerializer


def _as_float_array(value: object) -> NDArray[np.float64]:
    array = np.array(value, dtype=float)
    if array.ndim != 1:
        raise ValueError(f"expected a one dimensional array, got shape {array.shape}")
    return array


FloatArray = Annotated[
    np.ndarray,
    BeforeValidator(_as_float_array),
    PlainSerializer(lambda x: x.tolist(), when_used="json"),
]
Branch = Literal["einstein", "koiso_cao", "inverted", "shot", "external"]
Side = Literal["left", "right"]
Termination = Literal["t_target", "phi_floor", "overflow"]
Objective = Literal["quadrature_J", "paper_S"]
Case = Literal["case_i", "case_ii", "case_iii", "nontrivial", "indeterminate"]
ShotTermination = Literal["phi_zero", "overflow", "t_max", "step_failure"]
