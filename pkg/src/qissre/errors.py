"""Exception hierarchy shared by the estimation modules and the CLI."""

from __future__ import annotations


class EstimationError(Exception):
    """Base class for every error raised by qissre.

    ``stage`` names the pipeline step that failed (``"distance"``,
    ``"factory"``, ...) when the error was raised from inside ``estimate``.
    """

    def __init__(self, message: str, *, stage: str | None = None):
        super().__init__(message)
        self.stage = stage

    def __str__(self) -> str:
        msg = super().__str__()
        if self.stage:
            return f"[{self.stage}] {msg}"
        return msg


class ValidationError(EstimationError, ValueError):
    """Input violates a documented precondition or invariant."""


class InfeasibleError(EstimationError):
    """Inputs are valid but no fault-tolerant estimate exists for them."""


class AboveThresholdError(InfeasibleError):
    """Physical error rate is at or above the surface-code threshold."""


class FactoryInfeasibleError(InfeasibleError):
    """No T-state distillation chain meets the requested output error."""


class UnsupportedModalityError(InfeasibleError):
    """Scenario is catalogued but the cost model cannot estimate it."""


def with_stage(exc: EstimationError, stage: str) -> EstimationError:
    if exc.stage is None:
        exc.stage = stage
    return exc
