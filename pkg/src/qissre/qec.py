"""Surface-code error model.

Logical error per cycle follows ``a * (p / p_star) ** ((d + 1) / 2)``; a
logical qubit costs ``2 d**2`` physical qubits and one logical cycle lasts
``(4 t_2q + 2 t_meas) * d``.  Durations are nanoseconds throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ._num import ceil_odd
from .errors import AboveThresholdError, ValidationError

MIN_DISTANCE = 3


@dataclass(frozen=True)
class QecParams:
    crossing_prefactor: float = 0.03
    threshold: float = 0.01

    def __post_init__(self):
        if not 0 < self.crossing_prefactor <= 1:
            raise ValidationError(f"crossing_prefactor must be in (0, 1], got {self.crossing_prefactor}")
        if not 0 < self.threshold < 1:
            raise ValidationError(f"threshold must be in (0, 1), got {self.threshold}")


DEFAULT_QEC = QecParams()


@dataclass(frozen=True)
class PhysicalParams:
    """Error rates (probabilities) and operation times (ns) of a qubit technology."""

    one_q_gate_error: float
    two_q_gate_error: float
    idle_error: float
    meas_error: float
    t_gate_error: float
    meas_time: float
    one_q_gate_time: float
    two_q_gate_time: float
    t_gate_time: float

    ERROR_FIELDS = ("one_q_gate_error", "two_q_gate_error", "idle_error", "meas_error", "t_gate_error")
    TIME_FIELDS = ("meas_time", "one_q_gate_time", "two_q_gate_time", "t_gate_time")

    def __post_init__(self):
        for name in self.ERROR_FIELDS:
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and 0 <= v < 1):
                raise ValidationError(f"{name} must be a probability in [0, 1), got {v!r}")
        for name in self.TIME_FIELDS:
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and v >= 0 and math.isfinite(v)):
                raise ValidationError(f"{name} must be a non-negative duration in ns, got {v!r}")

    @property
    def clifford_error(self) -> float:
        """Single rate fed to the surface-code model: the worst non-T error."""
        return max(self.one_q_gate_error, self.two_q_gate_error, self.idle_error, self.meas_error)

    @property
    def worst_error_field(self) -> str:
        return max(
            ("one_q_gate_error", "two_q_gate_error", "idle_error", "meas_error"),
            key=lambda f: getattr(self, f),
        )

    def scaled_times(self, factor: float) -> PhysicalParams:
        return PhysicalParams(
            **{f: getattr(self, f) for f in self.ERROR_FIELDS},
            **{f: getattr(self, f) * factor for f in self.TIME_FIELDS},
        )


def _check_physical(p: float, qec: QecParams) -> None:
    if not p > 0:
        raise ValidationError(f"physical error rate must be > 0, got {p}")
    if p >= qec.threshold:
        raise AboveThresholdError(
            f"physical error rate {p:g} is not below the threshold {qec.threshold:g}"
        )


def check_distance(d: int) -> int:
    if isinstance(d, bool) or not isinstance(d, int):
        raise ValidationError(f"code distance must be an int, got {d!r}")
    if d < MIN_DISTANCE or d % 2 == 0:
        raise ValidationError(f"code distance must be odd and >= {MIN_DISTANCE}, got {d}")
    return d


def logical_error_rate(d: int, p: float, qec: QecParams = DEFAULT_QEC) -> float:
    """Logical error probability per qubit per cycle at distance ``d``.

    ``d`` may be any positive odd integer here (d=1 is the unencoded limit);
    only distances returned by :func:`required_distance` are guaranteed >= 3.
    """
    if isinstance(d, bool) or not isinstance(d, int) or d < 1 or d % 2 == 0:
        raise ValidationError(f"code distance must be a positive odd int, got {d!r}")
    _check_physical(p, qec)
    return qec.crossing_prefactor * (p / qec.threshold) ** ((d + 1) // 2)


def required_distance(p_target: float, p: float, qec: QecParams = DEFAULT_QEC) -> int:
    """Smallest odd distance >= 3 whose logical error rate is at most ``p_target``."""
    if not 0 < p_target < 1:
        raise ValidationError(f"target logical error rate must be in (0, 1), got {p_target}")
    _check_physical(p, qec)
    x = 2 * math.log(qec.crossing_prefactor / p_target) / math.log(qec.threshold / p) - 1
    d = max(MIN_DISTANCE, ceil_odd(x))
    # the closed form can be off by one step when x sits on an odd integer
    while logical_error_rate(d, p, qec) > p_target:
        d += 2
    while d - 2 >= MIN_DISTANCE and logical_error_rate(d - 2, p, qec) <= p_target:
        d -= 2
    return d


def physical_qubits_per_logical(d: int) -> int:
    check_distance(d)
    return 2 * d * d


def logical_cycle_time(d: int, params: PhysicalParams) -> float:
    check_distance(d)
    # T-gate time does not enter the cycle; only syndrome extraction does
    return (4 * params.two_q_gate_time + 2 * params.meas_time) * d
