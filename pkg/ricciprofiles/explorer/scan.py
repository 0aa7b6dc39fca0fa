from __future__ import annotations

from functools import partial
from itertools import product
from multiprocessing import Pool

import numpy as np
import pandas as pd
from loguru import logger
from numpy.typing import NDArray
from pydantic import BaseModel, Field, model_validator
from tqdm.auto import tqdm

from ricciprofiles.common.base_models.profile import Params
from ricciprofiles.common.config import CONF
from ricciprofiles.explorer.shooting import ShotResult, shoot

SCAN_COLUMNS = (
    "x0",
    "y0",
    "hit",
    "T_hit",
    "mismatch1",
    "mismatch2",
    "drift",
    "nontriviality",
    "terminated_by",
)


class ScanAxis(BaseModel):
    """Uniform range of one start coordinate.

    Args:
        min_value: first value.
        max_value: last value, included.
        steps: number of values.
    """

    min_value: float
    max_value: float
    steps: int = Field(ge=1)

    @model_validator(mode="after")
    def _check_range(self) -> ScanAxis:
        if not (np.isfinite(self.min_value) and np.isfinite(self.max_value)):
            raise ValueError("scan ranges must be finite")
        if self.max_value < self.min_value:
            raise ValueError(f"max_value={self.max_value} below min_value={self.min_value}")
        return self

    @classmethod
    def around(cls, center: float, half_width: float, steps: int) -> ScanAxis:
        return cls(min_value=center - half_width, max_value=center + half_width, steps=steps)

    def values(self) -> NDArray[np.float64]:
        """Returns the grid values, min and max included."""
        return np.linspace(self.min_value, self.max_value, self.steps)


class ScanGrid(BaseModel):
    """Shots on the product of two axes, stored row by row (x0 outer, y0 inner)."""

    params: Params
    x0_axis: ScanAxis
    y0_axis: ScanAxis
    results: list[ShotResult]

    @model_validator(mode="after")
    def _check_size(self) -> ScanGrid:
        expected = self.x0_axis.steps * self.y0_axis.steps
        if len(self.results) != expected:
            raise ValueError(f"{len(self.results)} results for a grid of {expected} nodes")
        return self

    @property
    def shape(self) -> tuple[int, int]:
        return self.x0_axis.steps, self.y0_axis.steps

    def result(self, row: int, column: int) -> ShotResult:
        return self.results[row * self.y0_axis.steps + column]

    def field(self, name: str) -> NDArray[np.float64]:
        """Returns one numeric ShotResult field as a (rows, columns) array."""
        if name == "mismatch_norm":
            values = [r.mismatch_norm for r in self.results]
        else:
            values = [getattr(r, name) for r in self.results]
        return np.array(values, dtype=float).reshape(self.shape)

    def best(self) -> ShotResult | None:
        """Hit with the smallest mismatch norm, None when nothing hits."""
        hits = [r for r in self.results if r.hit]
        return min(hits, key=lambda r: r.mismatch_norm) if hits else None

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            [r.model_dump(include=set(SCAN_COLUMNS)) for r in self.results],
            columns=list(SCAN_COLUMNS),
        )


def _shoot_node(params: Params, t_max: float | None, node: tuple[float, float]) -> ShotResult:
    return shoot(params, node[0], node[1], t_max=t_max)


def scan(
    params: Params,
    x0_axis: ScanAxis,
    y0_axis: ScanAxis,
    t_max: float | None = None,
    n_jobs: int | None = None,
) -> ScanGrid:
    """Shoots from every node of the (x0, y0) grid.

    Nodes are independent; with n_jobs > 1 they are distributed over a process
    pool. The result order is the grid order whatever the scheduling.

    Args:
        params: system parameters and tolerances.
        x0_axis: x0 values, rows of the grid.
        y0_axis: y0 values, columns of the grid.
        t_max: shooting horizon, defaults to params.t_max.
        n_jobs: worker processes, defaults to CONF.n_jobs.
    """
    n_jobs = n_jobs or CONF.n_jobs
    nodes = list(product(x0_axis.values().tolist(), y0_axis.values().tolist()))
    task = partial(_shoot_node, params, t_max)
    logger.info(f"scanning {len(nodes)} starts with {n_jobs} process(es)")

    if n_jobs > 1:
        with Pool(n_jobs) as pool:
            results = list(tqdm(pool.imap(task, nodes), total=len(nodes)))
    else:
        results = [task(node) for node in tqdm(nodes)]

    grid = ScanGrid(params=params, x0_axis=x0_axis, y0_axis=y0_axis, results=results)
    best = grid.best()
    if best is not None:
        logger.info(f"smallest mismatch {best.mismatch_norm:.3e} at x0={best.x0:.6g}, y0={best.y0:.6g}")
    else:
        logger.warning("no start of the grid hits phi = 0")
    return grid
