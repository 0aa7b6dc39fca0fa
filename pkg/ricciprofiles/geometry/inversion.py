from __future__ import annotations

import numpy as np

from ricciprofiles.common.base_models.profile import Trajectory

SOURCE_BRANCH = "source_branch"


def invert_profile(traj: Trajectory) -> Trajectory:
    """Pulls a profile back by t -> t_start + t_end - t.

    The profile system is invariant under this reflection once every first
    derivative changes sign. Inverting twice restores the sample values and the
    original branch tag.
    """
    t = (traj.t_start + traj.t_end) - traj.t[::-1]
    extra = dict(traj.extra)
    if traj.branch == "inverted":
        branch = extra.pop(SOURCE_BRANCH, "external")
    else:
        branch = "inverted"
        extra[SOURCE_BRANCH] = traj.branch
    return Trajectory(
        params=traj.params,
        t=t,
        x=traj.x[::-1],
        xd=-traj.xd[::-1],
        y=traj.y[::-1],
        yd=-traj.yd[::-1],
        phi=traj.phi[::-1],
        phid=-traj.phid[::-1],
        branch=branch,
        a=traj.a,
        termination=traj.termination,
        extra=extra,
    )


def sigma_inversion_defect(traj: Trajectory, inverted: Trajectory) -> float:
    """Returns max relative |sigma_hat(t) - e^{t - T/2} sigma(T - t)| over the samples.

    Both trajectories are taken on [0, T]; sigma = e^{(x-y+t)/2}.
    """
    T = traj.t_end - traj.t_start
    sigma = np.exp((traj.x - traj.y + (traj.t - traj.t_start)) / 2)
    t_hat = inverted.t - inverted.t_start
    sigma_hat = np.exp((inverted.x - inverted.y + t_hat) / 2)
    expected = np.exp(t_hat - T / 2) * sigma[::-1]
    return float(np.max(np.abs(sigma_hat - expected) / np.abs(expected)))
