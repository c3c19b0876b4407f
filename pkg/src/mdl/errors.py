"""Shared exception types and the cap override hook."""

import os


def cap_override(default: int) -> int:
    """Search caps honor MDL_CAP_OVERRIDE (may make runs non-terminating)."""
    v = os.environ.get("MDL_CAP_OVERRIDE")
    return int(v) if v else default


class CapExceeded(RuntimeError):
    """An operation refused an instance beyond its documented size cap."""


class PremiseError(ValueError):
    """A procedure's precondition does not hold for the given input."""


class UniformMinorDetected(RuntimeError):
    """A forbidden uniform restriction showed up mid-procedure.

    Carries the witness subset (a bit mask) whose restriction is the
    uniform matroid that the caller asserted was excluded.
    """

    def __init__(self, message: str, witness: int):
        super().__init__(message)
        self.witness = witness
