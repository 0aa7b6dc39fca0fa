"""Read and write trajectories as CSV (plus a metadata sidecar) or JSON."""

from __future__ import annotations

import json
import pathlib
from typing import Any, Literal

import numpy as np
import pandas as pd
from loguru import logger
from pydantic import BaseModel, ValidationError

from ricciprofiles.common.base_models.profile import (
    COLUMNS,
    MetadataValue,
    Params,
    Trajectory,
)
from ricciprofiles.common.exceptions import MalformedInput
from ricciprofiles.common.types import Branch, Termination

Format = Literal["csv", "json"]
FLOAT_FORMAT = "%.17g"


class TrajectoryMetadata(BaseModel):
    m: int
    k: int
    branch: Branch
    a: float | None = None
    t_start: float
    t_end: float
    termination: Termination | None = None
    params: dict[str, Any] | None = None
    extra: dict[str, MetadataValue] = {}

    @classmethod
    def from_trajectory(cls, traj: Trajectory) -> TrajectoryMetadata:
        return cls(
            m=traj.params.m,
            k=traj.params.k,
            branch=traj.branch,
            a=traj.a,
            t_start=traj.t_start,
            t_end=traj.t_end,
            termination=traj.termination,
            params=traj.params.model_dump(),
            extra=traj.extra,
        )


def metadata_path(path: pathlib.Path) -> pathlib.Path:
    """Sidecar holding the metadata of a CSV trajectory."""
    return path.with_suffix(".meta.json")


def trajectory_frame(traj: Trajectory) -> pd.DataFrame:
    return pd.DataFrame(traj.columns())


def write_frame(frame: pd.DataFrame, path: str | pathlib.Path) -> pathlib.Path:
    """Writes a report table with full double precision."""
    path = pathlib.Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT)
    return path


def write_trajectory(
    traj: Trajectory, path: str | pathlib.Path, fmt: Format | None = None
) -> pathlib.Path:
    """Writes a trajectory and its metadata.

    Args:
        traj: trajectory to write.
        path: output file, ``.csv`` or ``.json``.
        fmt: csv or json, defaults to the file suffix.
    """
    path = pathlib.Path(path)
    fmt = fmt or ("json" if path.suffix == ".json" else "csv")
    path.parent.mkdir(parents=True, exist_ok=True)
    metadata = TrajectoryMetadata.from_trajectory(traj).model_dump(mode="json")

    if fmt == "csv":
        write_frame(trajectory_frame(traj), path)
        metadata_path(path).write_text(json.dumps(metadata, indent=2))
    elif fmt == "json":
        samples = {name: column.tolist() for name, column in traj.columns().items()}
        path.write_text(json.dumps({"metadata": metadata, "samples": samples}))
    else:
        raise ValueError(f"Unsupported format {fmt!r} not in ('csv', 'json')")

    logger.info(f"Wrote {len(traj)} samples to {str(path)!r}")
    return path


def _params_from_metadata(
    metadata: dict[str, Any] | None, m: int | None, k: int | None
) -> Params:
    if metadata and metadata.get("params"):
        return Params(**metadata["params"])
    if metadata and "m" in metadata and "k" in metadata:
        return Params(m=metadata["m"], k=metadata["k"])
    if m is None or k is None:
        raise MalformedInput("no metadata found: pass m and k explicitly")
    return Params(m=m, k=k)


def _trajectory_kwargs(metadata: dict[str, Any] | None) -> dict[str, Any]:
    if not metadata:
        return {}
    keys = ("branch", "a", "termination", "extra")
    return {key: metadata[key] for key in keys if metadata.get(key) is not None}


def read_trajectory(
    path: str | pathlib.Path, m: int | None = None, k: int | None = None
) -> Trajectory:
    """Reads a trajectory written by write_trajectory.

    Args:
        path: ``.csv`` or ``.json`` file.
        m: complex dimension, used when a CSV file has no metadata sidecar.
        k: twist, used when a CSV file has no metadata sidecar.

    Raises:
        FileNotFoundError: path does not exist.
        MalformedInput: the file does not follow the trajectory schema.
    """
    path = pathlib.Path(path)
    if not path.exists():
        raise FileNotFoundError(f"No trajectory file {str(path)!r}")

    try:
        if path.suffix == ".json":
            document = json.loads(path.read_text())
            metadata = document.get("metadata")
            columns = {
                name: np.asarray(document["samples"][name], dtype=float)
                for name in COLUMNS
            }
        else:
            frame = pd.read_csv(path, float_precision="round_trip")
            if tuple(frame.columns) != COLUMNS:
                raise MalformedInput(
                    f"expected header {','.join(COLUMNS)}, got {','.join(map(str, frame.columns))}"
                )
            columns = {name: frame[name].to_numpy(dtype=float) for name in COLUMNS}
            sidecar = metadata_path(path)
            metadata = json.loads(sidecar.read_text()) if sidecar.exists() else None

        for name, column in columns.items():
            if column.ndim != 1 or not np.all(np.isfinite(column)):
                raise MalformedInput(f"column {name!r} is missing values")

        params = _params_from_metadata(metadata, m, k)
        return Trajectory.from_columns(params, columns, **_trajectory_kwargs(metadata))
    except MalformedInput:
        raise
    except (
        ValueError,
        KeyError,
        TypeError,
        AttributeError,
        ValidationError,
        pd.errors.ParserError,
        pd.errors.EmptyDataError,
    ) as e:
        raise MalformedInput(f"cannot read trajectory {str(path)!r}: {e}") from e
