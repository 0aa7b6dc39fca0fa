from __future__ import annotations

from collections.abc import Iterable, Mapping
from functools import cached_property
from typing import Any

import numpy as np
import pandas as pd
from numpy.typing import NDArray
from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    PositiveFloat,
    computed_field,
    field_validator,
    model_validator,
)

from ..config import CONF
from ..types import Branch, FloatArray, Termination

STATE_FIELDS = ("x", "xd", "y", "yd", "phi", "phid")
COLUMNS = ("t", *STATE_FIELDS)
MetadataValue = float | int | str | bool | None


class Params(BaseModel):
    """Integers (m, k) and the numerical tolerances shared by every solver.

    Args:
        m: complex dimension, at least 2.
        k: twist, 1 <= k < m.
        rel_tol: relative tolerance of the integrator.
        abs_tol: absolute tolerance of the integrator.
        start_offset: distance from a singular endpoint at which shots start.
        phi_floor: smallest |phi| accepted by the right-hand side.
        overflow: integration stops once a field exceeds this magnitude.
        method: embedded Runge-Kutta pair.
    """

    model_config = ConfigDict(frozen=True)

    m: int = Field(ge=2)
    k: int = Field(ge=1)
    rel_tol: PositiveFloat = Field(default_factory=lambda: CONF.rel_tol)
    abs_tol: PositiveFloat = Field(default_factory=lambda: CONF.abs_tol)
    start_offset: float = Field(
        default_factory=lambda: CONF.start_offset, gt=0.0, le=1e-2
    )
    phi_floor: PositiveFloat = Field(default_factory=lambda: CONF.phi_floor)
    overflow: PositiveFloat = Field(default_factory=lambda: CONF.overflow)
    method: str = Field(default_factory=lambda: CONF.method)

    @model_validator(mode="after")
    def _check_twist(self) -> Params:
        if self.k >= self.m:
            raise ValueError(f"need m > k > 0, got m={self.m}, k={self.k}")
        return self

    @property
    def t_max(self) -> float:
        """Default shooting horizon, ten times the Koiso-Cao interval length."""
        return 10 * float(np.log((self.m + self.k) / (self.m - self.k)))

    def with_tolerance(self, rel_tol: float) -> Params:
        return self.model_copy(update={"rel_tol": rel_tol})


class ProfileState(BaseModel):
    """One point (t, x, x', y, y', phi, phi') of a profile curve."""

    model_config = ConfigDict(frozen=True)

    t: float
    x: float
    xd: float
    y: float
    yd: float
    phi: float
    phid: float

    @field_validator("*")
    @classmethod
    def _finite(cls, value: float) -> float:
        if not np.isfinite(value):
            raise ValueError(f"profile state fields must be finite, got {value}")
        return value

    def as_array(self) -> NDArray[np.float64]:
        """Returns (x, x', y, y', phi, phi')."""
        return np.array([getattr(self, name) for name in STATE_FIELDS])

    @classmethod
    def from_array(cls, t: float, values: Iterable[float]) -> ProfileState:
        return cls(t=t, **dict(zip(STATE_FIELDS, map(float, values))))


class Derivatives(BaseModel):
    """Time derivative of a profile state: (x', x'', y', y'', phi', phi'')."""

    model_config = ConfigDict(frozen=True)

    xd: float
    xdd: float
    yd: float
    ydd: float
    phid: float
    phidd: float

    def as_array(self) -> NDArray[np.float64]:
        return np.array(
            [self.xd, self.xdd, self.yd, self.ydd, self.phid, self.phidd]
        )


class Trajectory(BaseModel):
    """Ordered samples of a profile curve, stored column by column.

    Args:
        params: parameters the profile was computed with.
        t: strictly increasing sample times.
        x: x samples.
        xd: x' samples.
        y: y samples.
        yd: y' samples.
        phi: phi samples.
        phid: phi' samples.
        branch: origin of the samples.
        a: family parameter of closed-form branches.
        termination: why an integration stopped, None for assembled profiles.
        extra: free-form metadata carried into serialized output.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    params: Params
    t: FloatArray
    x: FloatArray
    xd: FloatArray
    y: FloatArray
    yd: FloatArray
    phi: FloatArray
    phid: FloatArray
    branch: Branch = "external"
    a: float | None = None
    termination: Termination | None = None
    extra: dict[str, MetadataValue] = Field(default_factory=dict)

    @model_validator(mode="after")
    def _check_samples(self) -> Trajectory:
        n = self.t.size
        if n == 0:
            raise ValueError("a trajectory needs at least one sample")
        for name in STATE_FIELDS:
            if getattr(self, name).size != n:
                raise ValueError(
                    f"column {name!r} has {getattr(self, name).size} samples, expected {n}"
                )
        if n > 1 and not np.all(np.diff(self.t) > 0):
            raise ValueError("sample times must be strictly increasing")
        for name in COLUMNS:
            getattr(self, name).setflags(write=False)
        return self

    def __len__(self) -> int:
        return int(self.t.size)

    @property
    def t_start(self) -> float:
        return float(self.t[0])

    @property
    def t_end(self) -> float:
        return float(self.t[-1])

    @property
    def samples(self) -> tuple[ProfileState, ...]:
        return tuple(
            ProfileState(**{name: float(getattr(self, name)[i]) for name in COLUMNS})
            for i in range(len(self))
        )

    def columns(self) -> dict[str, NDArray[np.float64]]:
        return {name: getattr(self, name) for name in COLUMNS}

    def state_array(self) -> NDArray[np.float64]:
        """Returns an (n, 6) array of (x, x', y, y', phi, phi')."""
        return np.column_stack([getattr(self, name) for name in STATE_FIELDS])

    def with_columns(self, **columns: Any) -> Trajectory:
        """Returns a copy with some columns replaced, validated again."""
        data = self.model_dump(exclude=set(COLUMNS) | {"params"})
        return Trajectory(params=self.params, **{**self.columns(), **data, **columns})

    @classmethod
    def from_columns(
        cls, params: Params, columns: Mapping[str, Any], **kwargs: Any
    ) -> Trajectory:
        return cls(params=params, **{name: columns[name] for name in COLUMNS}, **kwargs)

    @classmethod
    def from_states(
        cls, params: Params, states: Iterable[ProfileState], **kwargs: Any
    ) -> Trajectory:
        states = list(states)
        columns = {name: [getattr(s, name) for s in states] for name in COLUMNS}
        return cls.from_columns(params, columns, **kwargs)


class ResidualReport(BaseModel):
    """Per-sample residuals of the profile system and the first integral drift."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    t: FloatArray
    eq_xdd1: FloatArray
    eq_xdd2: FloatArray
    eq_xdd3: FloatArray
    eq_int: FloatArray
    drift: FloatArray

    @computed_field
    @cached_property
    def sup_norms(self) -> dict[str, float]:
        """Maximum absolute value of every residual column."""
        return {
            name: float(np.max(np.abs(getattr(self, name))))
            for name in ("eq_xdd1", "eq_xdd2", "eq_xdd3", "eq_int", "drift")
        }

    def passes(self, tol: float) -> bool:
        """True when the equation residuals (drift excluded) are below tol."""
        return all(
            value < tol for name, value in self.sup_norms.items() if name != "drift"
        )

    def to_frame(self) -> pd.DataFrame:
        names = ("t", "eq_xdd1", "eq_xdd2", "eq_xdd3", "eq_int", "drift")
        return pd.DataFrame({name: getattr(self, name) for name in names})
