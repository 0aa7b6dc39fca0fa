"""Errors raised by the profile solvers."""

from __future__ import annotations

__all__ = [
    "InvalidRoot",
    "MalformedInput",
    "NoBracket",
    "NoConvergence",
    "RicciProfileError",
    "SingularPhi",
    "StepFailure",
]


class RicciProfileError(Exception):
    """Base class of every error raised by ricciprofiles."""


class SingularPhi(RicciProfileError, ZeroDivisionError):
    """phi is below the floor, so the y equation cannot be solved for y''."""


class StepFailure(RicciProfileError, RuntimeError):
    """The step controller could not meet the tolerance."""


class NoBracket(RicciProfileError, ValueError):
    """The objective has no sign change on the search interval."""


class InvalidRoot(RicciProfileError, ValueError):
    """The profile assembled from a root fails the boundary checks."""


class NoConvergence(RicciProfileError, RuntimeError):
    """Newton refinement of a shooting seed did not converge."""


class MalformedInput(RicciProfileError, ValueError):
    """A trajectory file does not follow the CSV or JSON schema."""
