"""Logical resource counts: the QISS per-day model and the JSON counts file."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import IO, Any

from ._num import ceil_log2, round_half_up
from .errors import ValidationError

# Counts reported for a single Grover rotation at 10 scheduled days.
ANCHOR_DAYS = 10
ANCHOR = {"m_meas": 5858, "m_r": 7938, "m_t": 912, "m_tof": 5820, "d_r": 3653}
ANCHOR_ROTATION_ANCILLAS = 38
SHIFT_COMBINATIONS_PER_DAY = 16


@dataclass(frozen=True)
class LogicalCounts:
    """Logical tallies of one circuit.

    q_alg: algorithmic logical qubits; m_meas: measurements; m_r: arbitrary
    single-qubit rotations; m_t: T gates; m_tof: Toffolis; d_r: rotation depth.
    """

    q_alg: int
    m_meas: int = 0
    m_r: int = 0
    m_t: int = 0
    m_tof: int = 0
    d_r: int = 0

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if isinstance(v, bool) or not isinstance(v, int):
                raise ValidationError(f"{f.name} must be an integer, got {v!r}")
            if v < 0:
                raise ValidationError(f"{f.name} must be non-negative, got {v}")
        if self.q_alg < 1:
            raise ValidationError("q_alg must be >= 1 (empty circuit)")
        if self.d_r > self.m_r:
            raise ValidationError(f"d_r ({self.d_r}) cannot exceed m_r ({self.m_r})")

    def scaled(self, k: int) -> LogicalCounts:
        """Counts of ``k`` back-to-back repetitions on the same qubits."""
        if k < 1:
            raise ValidationError(f"repetition factor must be >= 1, got {k}")
        return LogicalCounts(
            q_alg=self.q_alg,
            m_meas=self.m_meas * k,
            m_r=self.m_r * k,
            m_t=self.m_t * k,
            m_tof=self.m_tof * k,
            d_r=self.d_r * k,
        )

    def to_dict(self) -> dict[str, int]:
        return asdict(self)


def _check_days(n_days: int) -> int:
    if isinstance(n_days, bool) or not isinstance(n_days, int) or n_days < 1:
        raise ValidationError(f"number of days must be an integer >= 1, got {n_days!r}")
    return n_days


def qiss_algorithm_qubits(n_days: int) -> int:
    """Qubits of the QISS circuit with the single-condition-qubit buffer check."""
    n = _check_days(n_days)
    return 6 * n + 10 + ceil_log2(19 * n)


def qiss_logical_counts(n_days: int) -> LogicalCounts:
    """Counts for one Grover rotation, proportional to days and anchored at n=10.

    Only the 10-day counts are published; every gate/measurement tally and the
    rotation-synthesis ancilla count are scaled as ``round(v10 * n / 10)``
    (ties rounded up), so n=10 reproduces the anchor exactly.
    """
    n = _check_days(n_days)
    scaled = {k: round_half_up(v * n, ANCHOR_DAYS) for k, v in ANCHOR.items()}
    ancillas = round_half_up(ANCHOR_ROTATION_ANCILLAS * n, ANCHOR_DAYS)
    return LogicalCounts(q_alg=qiss_algorithm_qubits(n) + ancillas, **scaled)


def shop_measurements(n_days: int) -> int:
    """Measurements of the shop registers, a component of ``m_meas``."""
    return 4 * _check_days(n_days)


def solution_space_size(n_days: int) -> int:
    """Number of candidate schedules, 16**n (exact, arbitrary precision)."""
    return SHIFT_COMBINATIONS_PER_DAY ** _check_days(n_days)


COUNT_KEYS = tuple(f.name for f in fields(LogicalCounts))


def counts_from_mapping(doc: Any) -> LogicalCounts:
    if not isinstance(doc, dict):
        raise ValidationError("counts document must be a JSON object")
    unknown = sorted(set(doc) - set(COUNT_KEYS))
    if unknown:
        raise ValidationError(f"unknown counts field(s): {', '.join(unknown)}")
    missing = [k for k in COUNT_KEYS if k not in doc]
    if missing:
        raise ValidationError(f"missing counts field(s): {', '.join(missing)}")
    for k in COUNT_KEYS:
        v = doc[k]
        # JSON has one number type; accept 5.0 but not 5.5 or "5"
        if isinstance(v, float) and v.is_integer():
            doc = {**doc, k: int(v)}
        elif isinstance(v, bool) or not isinstance(v, int):
            raise ValidationError(f"counts field {k!r} must be an integer, got {v!r}")
    return LogicalCounts(**{k: doc[k] for k in COUNT_KEYS})


def parse_counts(document: str | bytes | IO[str] | Path) -> LogicalCounts:
    """Parse a counts file: a JSON object with exactly the six LogicalCounts keys."""
    if isinstance(document, Path):
        document = document.read_text()
    elif hasattr(document, "read"):
        document = document.read()
    try:
        doc = json.loads(document)
    except json.JSONDecodeError as e:
        raise ValidationError(f"counts document is not valid JSON: {e}") from None
    return counts_from_mapping(doc)


def dump_counts(counts: LogicalCounts) -> str:
    return json.dumps(counts.to_dict(), indent=2) + "\n"
