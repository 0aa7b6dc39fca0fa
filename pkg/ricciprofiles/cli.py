"""Command line interface: ``ricciprofiles <command> --help``.

Exit codes: 0 success, 2 no root bracket, 3 residual or boundary failure
(reports are still written), 64 usage error, 65 malformed input file.
"""

from __future__ import annotations

import json
import pathlib
from enum import Enum
from typing import Any

import typer
from typer._click.exceptions import UsageError
from loguru import logger
from pydantic import ValidationError

from ricciprofiles.common.base_models.profile import Params, Trajectory
from ricciprofiles.common.config import CONF, configure_logging
from ricciprofiles.common.exceptions import InvalidRoot, MalformedInput, NoBracket, NoConvergence
from ricciprofiles.common.utils.boundary import boundary_failures
from ricciprofiles.common.utils.trajectory_io import read_trajectory, write_frame, write_trajectory
from ricciprofiles.einstein import build_page_profile, solve_page_parameter
from ricciprofiles.explorer import ScanAxis, refine, scan, shot_trajectory
from ricciprofiles.geometry import classify_case, invert_profile, radial_profile, soliton_residuals
from ricciprofiles.ode_core import residual_report
from ricciprofiles.soliton import build_cao_profile, initial_data, solve_cao_parameter

EXIT_NO_BRACKET = 2
EXIT_FAILED = 3
EXIT_USAGE = 64
EXIT_MALFORMED = 65

RESIDUAL_TOL = 1e-7
VERIFY_TOL = 1e-6


class OutputFormat(str, Enum):
    csv = "csv"
    json = "json"


class ObjectiveChoice(str, Enum):
    quadrature_J = "quadrature_J"
    paper_S = "paper_S"


class LogChoice(str, Enum):
    quiet = "quiet"
    info = "info"
    debug = "debug"


app = typer.Typer(
    add_completion=False,
    help="Profile solutions of Ricci solitons on line bundle compactifications.",
)


@app.callback()
def setup(
    log: LogChoice = typer.Option(None, "--log", help="Verbosity, defaults to SOLITON_LOG."),
) -> None:
    configure_logging(log.value if log else None)


def _fail(message: str, code: int) -> typer.Exit:
    typer.echo(f"Error: {message}", err=True)
    return typer.Exit(code)


def _params(m: int, k: int) -> Params:
    try:
        return Params(m=m, k=k)
    except ValidationError as e:
        raise _fail(f"invalid (m, k) = ({m}, {k}): {e.errors()[0]['msg']}", EXIT_USAGE)


def _load(path: pathlib.Path, m: int | None, k: int | None) -> Trajectory:
    try:
        return read_trajectory(path, m, k)
    except (MalformedInput, FileNotFoundError) as e:
        raise _fail(str(e), EXIT_MALFORMED)


def _write_report(path: pathlib.Path, **fields: Any) -> pathlib.Path:
    """Writes a JSON run report that also records every configured default."""
    path.parent.mkdir(parents=True, exist_ok=True)
    document = {"settings": CONF.model_dump(), **fields}
    path.write_text(json.dumps(document, indent=2, default=str))
    logger.info(f"Wrote report {str(path)!r}")
    return path


def _write_profile(
    traj: Trajectory, name: str, out: pathlib.Path, fmt: OutputFormat
) -> dict[str, Any]:
    """Writes a trajectory with its residual tables and returns the report fields."""
    params = traj.params
    write_trajectory(traj, out / f"{name}.{fmt.value}", fmt.value)
    report = residual_report(params, traj)
    write_frame(report.to_frame(), out / f"{name}_residuals.csv")
    solitons = soliton_residuals(params, traj)
    write_frame(solitons.to_frame(), out / f"{name}_soliton.csv")
    return {
        "params": params.model_dump(),
        "sup_norms": report.sup_norms,
        "soliton_sup_norms": solitons.sup_norms,
        "residuals_pass": all(value < RESIDUAL_TOL for value in report.sup_norms.values()),
        "boundary_failures": boundary_failures(traj, params.k),
    }


def _finish(fields: dict[str, Any]) -> None:
    if not fields["residuals_pass"] or fields["boundary_failures"]:
        for failure in fields["boundary_failures"]:
            logger.warning(failure)
        if not fields["residuals_pass"]:
            logger.warning(f"residuals above {RESIDUAL_TOL:.0e}: {fields['sup_norms']}")
        raise typer.Exit(EXIT_FAILED)


@app.command()
def page(
    m: int = typer.Option(2, "--m", help="Complex dimension m >= 2."),
    k: int = typer.Option(1, "--k", help="Twist 1 <= k < m."),
    samples: int = typer.Option(None, "--samples", help="Number of samples."),
    out: pathlib.Path = typer.Option(pathlib.Path("results"), "--out", help="Output directory."),
    fmt: OutputFormat = typer.Option(OutputFormat.csv, "--format", help="Trajectory format."),
) -> None:
    """Builds the Einstein (Page) profile and its residual reports."""
    params = _params(m, k)
    try:
        a = solve_page_parameter(params)
        solution = build_page_profile(params, a, samples)
    except NoBracket as e:
        raise _fail(str(e), EXIT_NO_BRACKET)
    except InvalidRoot as e:
        raise _fail(str(e), EXIT_FAILED)

    traj = solution.trajectory
    traj = traj.with_columns(extra={**traj.extra, "P_residual": solution.p_residual})
    name = f"page_m{m}_k{k}"
    fields = _write_profile(traj, name, out, fmt)
    _write_report(
        out / f"{name}_report.json",
        command="page",
        a=a,
        T=solution.T,
        P_residual=solution.p_residual,
        **fields,
    )
    typer.echo(f"a = {a!r}, T = {solution.T!r}")
    _finish(fields)


@app.command()
def cao(
    m: int = typer.Option(2, "--m", help="Complex dimension m >= 2."),
    k: int = typer.Option(1, "--k", help="Twist 1 <= k < m."),
    objective: ObjectiveChoice = typer.Option(
        ObjectiveChoice.quadrature_J, "--objective", help="Objective the parameter is solved from."
    ),
    samples: int = typer.Option(None, "--samples", help="Number of samples."),
    out: pathlib.Path = typer.Option(pathlib.Path("results"), "--out", help="Output directory."),
    fmt: OutputFormat = typer.Option(OutputFormat.csv, "--format", help="Trajectory format."),
) -> None:
    """Builds the Koiso-Cao profile; both objectives are evaluated at the root."""
    params = _params(m, k)
    try:
        a = solve_cao_parameter(params, objective.value)
    except NoBracket as e:
        raise _fail(str(e), EXIT_NO_BRACKET)
    solution = build_cao_profile(params, a, samples, objective.value, check=False)

    traj = solution.trajectory
    traj = traj.with_columns(
        extra={
            **traj.extra,
            "J_residual": solution.j_residual,
            "S_residual": solution.s_residual,
        }
    )
    name = f"cao_m{m}_k{k}_{objective.value}"
    fields = _write_profile(traj, name, out, fmt)
    _write_report(
        out / f"{name}_report.json",
        command="cao",
        objective=objective.value,
        a=a,
        T=solution.T,
        J_residual=solution.j_residual,
        S_residual=solution.s_residual,
        phi_end=solution.phi_end,
        **fields,
    )
    typer.echo(f"a = {a!r}, T = {solution.T!r}, phi(T) = {solution.phi_end:.3e}")
    _finish(fields)


@app.command()
def verify(
    file: pathlib.Path = typer.Argument(..., help="Trajectory file, .csv or .json."),
    m: int = typer.Option(None, "--m", help="Used when the file has no metadata."),
    k: int = typer.Option(None, "--k", help="Used when the file has no metadata."),
    out: pathlib.Path = typer.Option(pathlib.Path("results"), "--out", help="Output directory."),
) -> None:
    """Evaluates the profile equations and the first integral on a trajectory file."""
    traj = _load(file, m, k)
    try:
        report = residual_report(traj.params, traj)
    except ValueError as e:
        raise _fail(f"{file}: {e}", EXIT_MALFORMED)
    write_frame(report.to_frame(), out / f"{file.stem}_residuals.csv")
    passes = report.passes(VERIFY_TOL)
    _write_report(
        out / f"{file.stem}_verify.json",
        command="verify",
        source=str(file),
        params=traj.params.model_dump(),
        sup_norms=report.sup_norms,
        passes=passes,
    )
    typer.echo(json.dumps(report.sup_norms, indent=2))
    if not passes:
        raise typer.Exit(EXIT_FAILED)


@app.command()
def classify(
    file: pathlib.Path = typer.Argument(..., help="Trajectory file, .csv or .json."),
    m: int = typer.Option(None, "--m", help="Used when the file has no metadata."),
    k: int = typer.Option(None, "--k", help="Used when the file has no metadata."),
    tol: float = typer.Option(1e-6, "--tol", help="Threshold of the case tests."),
) -> None:
    """Prints the case of a trajectory among the sigma'' = sigma' solutions."""
    traj = _load(file, m, k)
    if len(traj) < 6:
        raise _fail(f"{file}: classify needs at least 6 samples", EXIT_MALFORMED)
    typer.echo(classify_case(traj.params, traj, tol).model_dump_json(indent=2))


@app.command()
def invert(
    file: pathlib.Path = typer.Argument(..., help="Trajectory file, .csv or .json."),
    m: int = typer.Option(None, "--m", help="Used when the file has no metadata."),
    k: int = typer.Option(None, "--k", help="Used when the file has no metadata."),
    out: pathlib.Path = typer.Option(pathlib.Path("results"), "--out", help="Output directory."),
    fmt: OutputFormat = typer.Option(OutputFormat.csv, "--format", help="Trajectory format."),
) -> None:
    """Writes the trajectory pulled back by t -> t_start + t_end - t."""
    traj = _load(file, m, k)
    path = write_trajectory(invert_profile(traj), out / f"{file.stem}_inverted.{fmt.value}", fmt.value)
    typer.echo(str(path))


@app.command()
def radial(
    file: pathlib.Path = typer.Argument(..., help="Trajectory file, .csv or .json."),
    m: int = typer.Option(None, "--m", help="Used when the file has no metadata."),
    k: int = typer.Option(None, "--k", help="Used when the file has no metadata."),
    r_min: float = typer.Option(1e-6, "--r-min", help="Smallest radius."),
    r_max: float = typer.Option(1e6, "--r-max", help="Largest radius."),
    points: int = typer.Option(121, "--points", help="Number of log spaced radii."),
    anchor: float = typer.Option(1.0, "--anchor", help="Radius mapped to the middle of the interval."),
    out: pathlib.Path = typer.Option(pathlib.Path("results"), "--out", help="Output directory."),
) -> None:
    """Writes t(r) on a log spaced grid of fibre radii."""
    if not 0 < r_min < r_max or points < 2 or anchor <= 0:
        raise _fail("need 0 < r-min < r-max, points >= 2 and anchor > 0", EXIT_USAGE)
    traj = _load(file, m, k)
    grid = [r_min * (r_max / r_min) ** (i / (points - 1)) for i in range(points)]
    try:
        profile = radial_profile(traj.params, traj, grid, anchor_r=anchor)
    except ValueError as e:
        raise _fail(f"{file}: {e}", EXIT_MALFORMED)
    path = write_frame(profile.to_frame(), out / f"{file.stem}_radial.csv")
    typer.echo(str(path))


@app.command()
def shoot(
    m: int = typer.Option(2, "--m", help="Complex dimension m >= 2."),
    k: int = typer.Option(1, "--k", help="Twist 1 <= k < m."),
    x0: float = typer.Option(..., "--x0", help="x at the left endpoint."),
    y0: float = typer.Option(..., "--y0", help="y at the left endpoint."),
    t_max: float = typer.Option(None, "--t-max", help="Shooting horizon."),
    refine_start: bool = typer.Option(False, "--refine/--no-refine", help="Newton refine (x0, y0) first."),
    max_iter: int = typer.Option(25, "--max-iter", help="Newton iterations of --refine."),
    out: pathlib.Path = typer.Option(pathlib.Path("results"), "--out", help="Output directory."),
    fmt: OutputFormat = typer.Option(OutputFormat.csv, "--format", help="Trajectory format."),
) -> None:
    """Shoots from a regular start at phi = 0 and reports the far endpoint mismatch."""
    params = _params(m, k)
    name = f"shot_m{m}_k{k}"
    refined = None
    if refine_start:
        try:
            refined = refine(params, (x0, y0), max_iter=max_iter, t_max=t_max)
        except NoConvergence as e:
            _write_report(out / f"{name}.json", command="shoot", seed=[x0, y0], error=str(e))
            raise _fail(str(e), EXIT_FAILED)
        x0, y0 = refined.x0, refined.y0

    result, traj = shot_trajectory(params, x0, y0, t_max)
    if traj is not None:
        extra = {**traj.extra, "x0": x0, "y0": y0, "hit": result.hit}
        write_trajectory(traj.with_columns(extra=extra), out / f"{name}.{fmt.value}", fmt.value)
    _write_report(
        out / f"{name}.json",
        command="shoot",
        params=params.model_dump(),
        shot=result.model_dump(),
        refine=refined.model_dump(exclude={"shot", "trajectory"}) if refined else None,
    )
    typer.echo(result.model_dump_json(indent=2))


@app.command("scan")
def scan_command(
    m: int = typer.Option(2, "--m", help="Complex dimension m >= 2."),
    k: int = typer.Option(1, "--k", help="Twist 1 <= k < m."),
    x0_min: float = typer.Option(None, "--x0-min", help="Defaults to the Koiso-Cao x0 - 0.5."),
    x0_max: float = typer.Option(None, "--x0-max", help="Defaults to the Koiso-Cao x0 + 0.5."),
    y0_min: float = typer.Option(None, "--y0-min", help="Defaults to the Koiso-Cao y0 - 0.5."),
    y0_max: float = typer.Option(None, "--y0-max", help="Defaults to the Koiso-Cao y0 + 0.5."),
    steps: int = typer.Option(21, "--steps", help="Values per axis."),
    t_max: float = typer.Option(None, "--t-max", help="Shooting horizon."),
    jobs: int = typer.Option(None, "--jobs", help="Worker processes, defaults to SOLITON_N_JOBS."),
    out: pathlib.Path = typer.Option(pathlib.Path("results"), "--out", help="Output directory."),
) -> None:
    """Shoots from every node of an (x0, y0) grid and writes the mismatch table."""
    params = _params(m, k)
    if None in (x0_min, x0_max, y0_min, y0_max):
        center = initial_data(params, solve_cao_parameter(params))
        x0_min = center.x0 - 0.5 if x0_min is None else x0_min
        x0_max = center.x0 + 0.5 if x0_max is None else x0_max
        y0_min = center.y0 - 0.5 if y0_min is None else y0_min
        y0_max = center.y0 + 0.5 if y0_max is None else y0_max
    try:
        x0_axis = ScanAxis(min_value=x0_min, max_value=x0_max, steps=steps)
        y0_axis = ScanAxis(min_value=y0_min, max_value=y0_max, steps=steps)
    except ValidationError as e:
        raise _fail(f"invalid scan ranges: {e.errors()[0]['msg']}", EXIT_USAGE)

    grid = scan(params, x0_axis, y0_axis, t_max=t_max, n_jobs=jobs)
    name = f"scan_m{m}_k{k}"
    path = write_frame(grid.to_frame(), out / f"{name}.csv")
    best = grid.best()
    _write_report(
        out / f"{name}_report.json",
        command="scan",
        params=params.model_dump(),
        x0_axis=x0_axis.model_dump(),
        y0_axis=y0_axis.model_dump(),
        best=best.model_dump() if best else None,
    )
    typer.echo(str(path))


def main(argv: list[str] | None = None) -> int:
    """Console entry point; returns the exit code instead of raising SystemExit."""
    command = typer.main.get_command(app)
    try:
        code = command.main(args=argv, prog_name="ricciprofiles", standalone_mode=False)
    except UsageError as e:
        e.show()
        return EXIT_USAGE
    return code if isinstance(code, int) else 0


if __name__ == "__main__":
    raise SystemExit(main())
