"""Hardware scenario catalog, scenario files and the qubit-count roadmap."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import IO, Any, Iterable

from .counts import LogicalCounts
from .errors import AboveThresholdError, UnsupportedModalityError, ValidationError
from .estimator import (
    DEFAULT_SYNTHESIS,
    PERFECT_CLOCK_NS,
    EstimateResult,
    SynthesisConstants,
    estimate,
    estimate_perfect,
)
from .qec import DEFAULT_QEC, PhysicalParams, QecParams

T_GATE_ERROR_FLOOR = 5e-8

SUPERCONDUCTING = "superconducting"
TRAPPED_ION = "trapped-ion"
MAJORANA = "majorana"
PERFECT = "perfect"
SUPPORTED_MODALITIES = (SUPERCONDUCTING, TRAPPED_ION, PERFECT)


@dataclass(frozen=True)
class Scenario:
    name: str
    params: PhysicalParams
    modality: str = SUPERCONDUCTING
    perfect: bool = False
    perfect_clock: float = PERFECT_CLOCK_NS
    description: str = field(default="", compare=False)
    t_gate_clamped: bool = field(default=False, compare=False)

    def __post_init__(self):
        if self.perfect:
            nonzero = [f for f in PhysicalParams.ERROR_FIELDS if getattr(self.params, f) != 0]
            if nonzero:
                raise ValidationError(
                    f"perfect scenario {self.name!r} has non-zero error rates: {', '.join(nonzero)}"
                )
            if not self.perfect_clock > 0:
                raise ValidationError(f"perfect_clock must be > 0 ns, got {self.perfect_clock}")

    def check_threshold(self, qec: QecParams = DEFAULT_QEC) -> None:
        if self.perfect:
            return
        p = self.params.clifford_error
        if p >= qec.threshold:
            raise ValidationError(
                f"scenario {self.name!r}: {self.params.worst_error_field} = {p:g} "
                f"is not below the surface-code threshold {qec.threshold:g}"
            )

    def estimate(
        self,
        counts: LogicalCounts,
        eps: float,
        qec: QecParams = DEFAULT_QEC,
        consts: SynthesisConstants = DEFAULT_SYNTHESIS,
        **factory_opts,
    ) -> EstimateResult:
        """Dispatch to the perfect-qubit bypass or the surface-code pipeline.

        ``factory_opts`` (exact_binomial, confidence, max_rounds) are passed to
        :func:`qissre.estimator.estimate`.
        """
        if self.modality not in SUPPORTED_MODALITIES:
            raise UnsupportedModalityError(
                f"scenario {self.name!r}: {self.modality} qubits are catalogued but their "
                "logical cycle time model is not available",
                stage="scenario",
            )
        if self.perfect:
            return estimate_perfect(counts, eps, self.perfect_clock, consts)
        if self.params.clifford_error >= qec.threshold:
            raise AboveThresholdError(
                f"scenario {self.name!r}: {self.params.worst_error_field} = "
                f"{self.params.clifford_error:g} is not below the threshold {qec.threshold:g}",
                stage="distance",
            )
        return estimate(counts, self.params, eps, qec, consts, **factory_opts)


def make_scenario(
    name: str,
    *,
    one_q_gate_error: float,
    two_q_gate_error: float,
    idle_error: float,
    meas_error: float,
    t_gate_error: float,
    meas_time: float,
    one_q_gate_time: float,
    two_q_gate_time: float,
    t_gate_time: float,
    modality: str = SUPERCONDUCTING,
    perfect: bool = False,
    perfect_clock: float = PERFECT_CLOCK_NS,
    description: str = "",
) -> Scenario:
    """Build a scenario, raising the T-gate error to the floor for noisy qubits."""
    clamped = False
    if not perfect and t_gate_error < T_GATE_ERROR_FLOOR:
        t_gate_error, clamped = T_GATE_ERROR_FLOOR, True
    params = PhysicalParams(
        one_q_gate_error=one_q_gate_error,
        two_q_gate_error=two_q_gate_error,
        idle_error=idle_error,
        meas_error=meas_error,
        t_gate_error=t_gate_error,
        meas_time=meas_time,
        one_q_gate_time=one_q_gate_time,
        two_q_gate_time=two_q_gate_time,
        t_gate_time=t_gate_time,
    )
    return Scenario(
        name=name,
        params=params,
        modality=modality,
        perfect=perfect,
        perfect_clock=perfect_clock,
        description=description,
        t_gate_clamped=clamped,
    )


def flat_scenario(error: float, meas_time: float, name: str | None = None, **kw) -> Scenario:
    """Uniform error rates; every gate takes half the measurement time."""
    gate = meas_time / 2
    return make_scenario(
        name or f"flat-{error:g}-{meas_time:g}ns",
        one_q_gate_error=error,
        two_q_gate_error=error,
        idle_error=error,
        meas_error=error,
        t_gate_error=error,
        meas_time=meas_time,
        one_q_gate_time=gate,
        two_q_gate_time=gate,
        t_gate_time=gate,
        **kw,
    )


def _heterogeneous(name, q1, q2, idle, meas, meas_time, description):
    # unspecified T gate: same error and duration as a single-qubit gate
    return make_scenario(
        name,
        one_q_gate_error=q1,
        two_q_gate_error=q2,
        idle_error=idle,
        meas_error=meas,
        t_gate_error=q1,
        meas_time=meas_time,
        one_q_gate_time=25.0,
        two_q_gate_time=34.0,
        t_gate_time=25.0,
        description=description,
    )


def _predefined(name, modality, meas_err, q1_err, q2_err, t_err, meas_t, q1_t, q2_t, t_t, description):
    # unspecified idle error: same as measurement error
    return make_scenario(
        name,
        one_q_gate_error=q1_err,
        two_q_gate_error=q2_err,
        idle_error=meas_err,
        meas_error=meas_err,
        t_gate_error=t_err,
        meas_time=meas_t,
        one_q_gate_time=q1_t,
        two_q_gate_time=q2_t,
        t_gate_time=t_t,
        modality=modality,
        description=description,
    )


def _build_catalog() -> tuple[Scenario, ...]:
    us = 1000.0
    return (
        flat_scenario(1e-3, 100.0, "flat-1e-3", description="flat 1e-3, 50/100 ns gate/measurement"),
        flat_scenario(1e-4, 100.0, "flat-1e-4", description="flat 1e-4, 50/100 ns gate/measurement"),
        _heterogeneous("ref", 1.09e-3, 6.05e-3, 2.46e-2, 1.96e-2, 500.0,
                       "present-day reference device (above threshold)"),
        _heterogeneous("rer", 1.09e-4, 6.05e-4, 2.46e-3, 1.96e-3, 500.0,
                       "reference error rates reduced tenfold"),
        _heterogeneous("fm", 1.09e-3, 4.90e-3, 1.63e-3, 5.00e-3, 140.0,
                       "reference device with fast, high-fidelity measurement"),
        _predefined("trapped-ion-1e-3", TRAPPED_ION, 1e-3, 1e-3, 1e-3, 1e-6,
                    100 * us, 100 * us, 100 * us, 100 * us, "trapped ions, 1e-3, 100 us operations"),
        _predefined("trapped-ion-1e-4", TRAPPED_ION, 1e-4, 1e-4, 1e-4, 1e-6,
                    100 * us, 100 * us, 100 * us, 100 * us, "trapped ions, 1e-4, 100 us operations"),
        # no single-qubit gates; the two-qubit entries are joint measurements
        _predefined("majorana-1e-4", MAJORANA, 1e-4, 0.0, 1e-4, 1e-2,
                    100.0, 0.0, 100.0, 100.0, "Majorana, 1e-4 (catalogue only)"),
        _predefined("majorana-1e-6", MAJORANA, 1e-6, 0.0, 1e-6, 1e-2,
                    100.0, 0.0, 100.0, 100.0, "Majorana, 1e-6 (catalogue only)"),
        flat_scenario(1e-6, 10.0, "flat-1e-6", description="flat 1e-6, 5/10 ns gate/measurement"),
        flat_scenario(1e-8, 10.0, "flat-1e-8", description="flat 1e-8, 5/10 ns, T error at floor"),
        flat_scenario(1e-9, 1.0, "flat-1e-9", description="flat 1e-9, 0.5/1 ns, T error at floor"),
        make_scenario(
            "perfect",
            one_q_gate_error=0.0,
            two_q_gate_error=0.0,
            idle_error=0.0,
            meas_error=0.0,
            t_gate_error=0.0,
            meas_time=PERFECT_CLOCK_NS,
            one_q_gate_time=0.0,
            two_q_gate_time=0.0,
            t_gate_time=0.0,
            modality=PERFECT,
            perfect=True,
            description="error-free qubits on a 5 GHz clock, no error correction",
        ),
    )


_CATALOG = _build_catalog()
NEAR_TERM = ("flat-1e-3", "flat-1e-4", "ref", "rer", "fm")
HIGH_FIDELITY = ("flat-1e-3", "flat-1e-4", "flat-1e-6", "flat-1e-8", "flat-1e-9", "perfect")


def builtin_scenarios() -> list[Scenario]:
    return list(_CATALOG)


def get_scenario(name: str) -> Scenario:
    key = name.strip().lower()
    for s in _CATALOG:
        if s.name == key:
            return s
    known = ", ".join(s.name for s in _CATALOG)
    raise ValidationError(f"unknown scenario {name!r} (known: {known})")


# scenario file keys -> PhysicalParams fields
_FILE_ERRORS = ("one_q_gate_error", "two_q_gate_error", "idle_error", "meas_error", "t_gate_error")
_FILE_TIMES = {
    "meas_time_ns": "meas_time",
    "one_q_gate_time_ns": "one_q_gate_time",
    "two_q_gate_time_ns": "two_q_gate_time",
    "t_gate_time_ns": "t_gate_time",
}
_FILE_OPTIONAL = ("perfect", "modality", "perfect_clock_ns", "description")


def scenario_from_mapping(doc: Any, *, check_threshold: bool = True, qec: QecParams = DEFAULT_QEC) -> Scenario:
    if not isinstance(doc, dict):
        raise ValidationError("scenario document must be a JSON object")
    required = ("name", *_FILE_ERRORS, *_FILE_TIMES)
    missing = [k for k in required if k not in doc]
    if missing:
        raise ValidationError(f"missing scenario field(s): {', '.join(missing)}")
    unknown = sorted(set(doc) - set(required) - set(_FILE_OPTIONAL))
    if unknown:
        raise ValidationError(f"unknown scenario field(s): {', '.join(unknown)}")
    if not isinstance(doc["name"], str) or not doc["name"]:
        raise ValidationError("scenario name must be a non-empty string")
    values = {}
    for key in (*_FILE_ERRORS, *_FILE_TIMES):
        v = doc[key]
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise ValidationError(f"scenario field {key!r} must be a number, got {v!r}")
        values[_FILE_TIMES.get(key, key)] = float(v)
    perfect = doc.get("perfect", False)
    if not isinstance(perfect, bool):
        raise ValidationError(f"scenario field 'perfect' must be a boolean, got {perfect!r}")
    modality = doc.get("modality", PERFECT if perfect else SUPERCONDUCTING)
    scenario = make_scenario(
        doc["name"],
        **values,
        modality=modality,
        perfect=perfect,
        perfect_clock=float(doc.get("perfect_clock_ns", PERFECT_CLOCK_NS)),
        description=doc.get("description", ""),
    )
    if check_threshold:
        scenario.check_threshold(qec)
    return scenario


def load_scenario(document: str | bytes | IO[str] | Path, *, check_threshold: bool = True) -> Scenario:
    """Parse and validate a scenario JSON document.

    The T-gate error of noisy scenarios is raised to 5e-8 if lower, and
    ``t_gate_clamped`` is set on the result.
    """
    if isinstance(document, Path):
        document = document.read_text()
    elif hasattr(document, "read"):
        document = document.read()
    try:
        doc = json.loads(document)
    except json.JSONDecodeError as e:
        raise ValidationError(f"scenario document is not valid JSON: {e}") from None
    return scenario_from_mapping(doc, check_threshold=check_threshold)


def scenario_to_mapping(s: Scenario) -> dict[str, Any]:
    doc: dict[str, Any] = {"name": s.name}
    for key in _FILE_ERRORS:
        doc[key] = getattr(s.params, key)
    for key, attr in _FILE_TIMES.items():
        doc[key] = getattr(s.params, attr)
    doc["perfect"] = s.perfect
    doc["modality"] = s.modality
    if s.perfect_clock != PERFECT_CLOCK_NS:
        doc["perfect_clock_ns"] = s.perfect_clock
    if s.description:
        doc["description"] = s.description
    return doc


def dump_scenario(s: Scenario) -> str:
    return json.dumps(scenario_to_mapping(s), indent=2) + "\n"


@dataclass(frozen=True)
class RoadmapEntry:
    """One announced or released device.  ``year`` is None for undated milestones."""

    company: str
    modality: str
    designation: str
    year: int | None
    qubits: int
    released: bool
    lower_bound: bool = False

    def __post_init__(self):
        if self.qubits < 1:
            raise ValidationError(f"roadmap entry {self.designation!r}: qubits must be >= 1")
        if self.year is not None and self.year < 2017:
            raise ValidationError(f"roadmap entry {self.designation!r}: year must be >= 2017")


ROADMAP_HEADER = ("company", "modality", "designation", "year", "qubits", "released", "lower_bound")


def _parse_bool(value: str, column: str, line: int) -> bool:
    v = value.strip().lower()
    if v in ("true", "yes", "1"):
        return True
    if v in ("false", "no", "0", ""):
        return False
    raise ValidationError(f"roadmap line {line}: {column} must be a boolean, got {value!r}")


def parse_roadmap(text: str) -> list[RoadmapEntry]:
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise ValidationError("roadmap file is empty") from None
    if tuple(h.strip() for h in header) != ROADMAP_HEADER:
        raise ValidationError(f"roadmap header must be {','.join(ROADMAP_HEADER)}")
    entries = []
    for line, row in enumerate(reader, start=2):
        if not row or not any(cell.strip() for cell in row):
            continue
        if len(row) != len(ROADMAP_HEADER):
            raise ValidationError(f"roadmap line {line}: expected {len(ROADMAP_HEADER)} columns")
        company, modality, designation, year, qubits, released, lower = (c.strip() for c in row)
        try:
            entries.append(
                RoadmapEntry(
                    company=company,
                    modality=modality,
                    designation=designation,
                    year=int(year) if year else None,
                    qubits=int(qubits),
                    released=_parse_bool(released, "released", line),
                    lower_bound=_parse_bool(lower, "lower_bound", line),
                )
            )
        except ValueError as e:
            if isinstance(e, ValidationError):
                raise
            raise ValidationError(f"roadmap line {line}: {e}") from None
    if not entries:
        raise ValidationError("roadmap has no entries")
    return entries


def load_roadmap(path: str | Path | None = None) -> list[RoadmapEntry]:
    """Read a roadmap CSV; without a path, the bundled dataset."""
    if path is None:
        text = resources.files("qissre").joinpath("data/roadmap.csv").read_text()
    else:
        text = Path(path).read_text()
    return parse_roadmap(text)


def feasibility_year(required_qubits: int, roadmap: Iterable[RoadmapEntry]) -> RoadmapEntry | None:
    """Earliest device with at least ``required_qubits``; undated entries rank last."""
    roadmap = list(roadmap)
    if not roadmap:
        raise ValidationError("roadmap is empty")
    fits = [e for e in roadmap if e.qubits >= required_qubits]
    if not fits:
        return None
    return min(fits, key=lambda e: (e.year is None, e.year or 0, e.qubits))
