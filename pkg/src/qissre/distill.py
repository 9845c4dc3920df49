"""Multi-round 15-to-1 T-state distillation factories.

A factory is synthesised backwards from the T-state error the algorithm
needs: the last round gets a Clifford budget of ``target / 7.1``, which fixes
its code distance, and what is left of ``target`` bounds the input error it
can tolerate.  That bound becomes the target of the previous round, until the
bound is loose enough to accept raw physical T states.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from statistics import NormalDist

from ._num import ceil_snap
from .errors import FactoryInfeasibleError, ValidationError
from .qec import (
    DEFAULT_QEC,
    PhysicalParams,
    QecParams,
    logical_cycle_time,
    logical_error_rate,
    physical_qubits_per_logical,
    required_distance,
)

# 15-to-1 output error is CUBIC_COEFF * P_T**3 + CLIFFORD_COEFF * P
CUBIC_COEFF = 35.0
CLIFFORD_COEFF = 7.1
# acceptance is 1 - T_REJECT * P_T - CLIFFORD_REJECT * P
T_REJECT = 15.0
CLIFFORD_REJECT = 356.0
INPUTS_PER_UNIT = 15
DEFAULT_CONFIDENCE = 0.999
DEFAULT_MAX_ROUNDS = 10


@dataclass(frozen=True)
class DistillationUnitSpec:
    """One 15-to-1 unit variant.

    Logical units cost ``qubit_factor * n(d)`` qubits and run for
    ``runtime_factor * tau(d)``; physical units cost ``qubit_factor`` qubits and
    run for ``runtime_factor * t_meas``.
    """

    name: str
    logical: bool
    qubit_factor: int
    runtime_factor: int

    def qubits(self, d: int | None) -> int:
        if self.logical:
            return self.qubit_factor * physical_qubits_per_logical(d)
        return self.qubit_factor

    def runtime(self, d: int | None, params: PhysicalParams) -> float:
        if self.logical:
            return self.runtime_factor * logical_cycle_time(d, params)
        return self.runtime_factor * params.meas_time


SPACE_EFFICIENT_PHYSICAL = DistillationUnitSpec("15-to-1 space-efficient physical", False, 12, 46)
SPACE_EFFICIENT_LOGICAL = DistillationUnitSpec("15-to-1 space-efficient logical", True, 20, 13)
RM_PREP_PHYSICAL = DistillationUnitSpec("15-to-1 RM-prep physical", False, 31, 23)
RM_PREP_LOGICAL = DistillationUnitSpec("15-to-1 RM-prep logical", True, 31, 11)
UNIT_SPECS = (SPACE_EFFICIENT_PHYSICAL, SPACE_EFFICIENT_LOGICAL, RM_PREP_PHYSICAL, RM_PREP_LOGICAL)


def output_error(p_t_in: float, clifford: float) -> float:
    return CUBIC_COEFF * p_t_in**3 + CLIFFORD_COEFF * clifford


def acceptance_probability(p_t_in: float, clifford_bound: float) -> float:
    return max(0.0, 1.0 - T_REJECT * p_t_in - CLIFFORD_REJECT * clifford_bound)


def required_t_state_error(m: int, eps_dis: float) -> float:
    """Per-state error allowed when ``m`` T states share the budget ``eps_dis``."""
    if m < 1:
        raise ValidationError("no T states required; skip distillation instead")
    if not 0 < eps_dis < 1:
        raise ValidationError(f"distillation budget must be in (0, 1), got {eps_dis}")
    return eps_dis / m


def _successes_prob_normal(u: int, q: float, r: int) -> float:
    var = u * q * (1 - q)
    if var == 0:
        return 1.0 if u * q >= r else 0.0
    return NormalDist().cdf((u * q - (r - 0.5)) / math.sqrt(var))


def _successes_prob_exact(u: int, q: float, r: int) -> float:
    # P[X >= r] for X ~ Binomial(u, q), summed over the short failure side
    f = 1 - q
    return math.fsum(math.comb(u, k) * f**k * q ** (u - k) for k in range(u - r + 1))


def units_for_round(
    acceptance_prob: float,
    required_outputs: int,
    confidence: float = DEFAULT_CONFIDENCE,
    exact_binomial: bool = False,
) -> int:
    """Fewest parallel units yielding ``required_outputs`` successes w.p. ``confidence``.

    The default uses a normal approximation with continuity correction; the
    exact binomial tail is stricter (19 instead of 18 units at q=0.966, r=15).
    """
    if not 0 < acceptance_prob <= 1:
        raise ValidationError(f"acceptance probability must be in (0, 1], got {acceptance_prob}")
    if required_outputs < 1:
        raise ValidationError(f"required outputs must be >= 1, got {required_outputs}")
    if not 0 < confidence < 1:
        raise ValidationError(f"confidence must be in (0, 1), got {confidence}")
    prob = _successes_prob_exact if exact_binomial else _successes_prob_normal
    u = required_outputs
    while prob(u, acceptance_prob, required_outputs) < confidence:
        u += 1
    return u


@dataclass(frozen=True)
class DistillationRound:
    distance: int
    unit: DistillationUnitSpec
    unit_count: int
    input_t_error: float
    output_t_error: float
    target_t_error: float
    max_input_t_error: float
    clifford_error_bound: float
    clifford_error: float
    acceptance_prob: float
    qubits: int
    runtime: float


@dataclass(frozen=True)
class FactoryDesign:
    rounds: tuple[DistillationRound, ...] = field(default_factory=tuple)
    total_runtime: float = 0.0
    qubits: int = 0
    outputs_per_run: int = 1

    @property
    def output_t_error(self) -> float | None:
        return self.rounds[-1].output_t_error if self.rounds else None

    @property
    def distances(self) -> tuple[int, ...]:
        return tuple(r.distance for r in self.rounds)


ZERO_ROUND_FACTORY = FactoryDesign()


@dataclass(frozen=True)
class _Plan:
    target: float
    clifford_bound: float
    distance: int
    clifford_error: float
    max_input: float


def design_factory(
    p_t: float,
    p: float,
    target: float,
    params: PhysicalParams,
    qec: QecParams = DEFAULT_QEC,
    *,
    max_rounds: int = DEFAULT_MAX_ROUNDS,
    confidence: float = DEFAULT_CONFIDENCE,
    exact_binomial: bool = False,
) -> FactoryDesign:
    """Build the cheapest-depth distillation chain reaching ``target``.

    ``p_t`` is the injected physical T error, ``p`` the physical Clifford
    error.  Earlier rounds use space-efficient logical units, the last round a
    single RM-prep logical unit.  If ``p_t <= target`` no distillation is
    needed and the zero-round design is returned.
    """
    if not 0 <= p_t < 1:
        raise ValidationError(f"physical T error must be in [0, 1), got {p_t}")
    if not 0 < target < 1:
        raise ValidationError(f"target T error must be in (0, 1), got {target}")
    if p_t <= target:
        return ZERO_ROUND_FACTORY

    plans: list[_Plan] = []
    cur = target
    while True:
        if len(plans) >= max_rounds:
            raise FactoryInfeasibleError(
                f"cannot construct factory chain: more than {max_rounds} rounds needed "
                f"to reach {target:.3g} from physical T error {p_t:.3g}"
            )
        bound = cur / CLIFFORD_COEFF
        d = required_distance(bound, p, qec)
        actual = logical_error_rate(d, p, qec)
        slack = cur - CLIFFORD_COEFF * actual
        if slack <= 0:
            raise FactoryInfeasibleError(
                f"cannot construct factory chain: Clifford error {actual:.3g} at d={d} "
                f"leaves no room for target {cur:.3g}"
            )
        max_in = (slack / CUBIC_COEFF) ** (1 / 3)
        plans.append(_Plan(cur, bound, d, actual, max_in))
        if max_in >= p_t:
            break
        if max_in <= cur:
            raise FactoryInfeasibleError(
                f"cannot construct factory chain: round at d={d} does not improve on {cur:.3g}"
            )
        cur = max_in
    plans.reverse()

    # forward pass: actual errors and acceptance, first-executed round first
    errors_in, errors_out, accept = [], [], []
    p_in = p_t
    for plan in plans:
        p_out = output_error(p_in, plan.clifford_error)
        errors_in.append(p_in)
        errors_out.append(p_out)
        accept.append(acceptance_probability(p_in, plan.clifford_bound))
        p_in = p_out

    for i, q in enumerate(accept):
        if q <= 0:
            raise FactoryInfeasibleError(
                f"cannot construct factory chain: round {i + 1} acceptance probability is zero"
            )
    n = len(plans)
    counts = [0] * n
    counts[-1] = 1
    for i in range(n - 2, -1, -1):
        counts[i] = units_for_round(
            accept[i], INPUTS_PER_UNIT * counts[i + 1], confidence, exact_binomial
        )

    rounds = []
    for i, plan in enumerate(plans):
        unit = RM_PREP_LOGICAL if i == n - 1 else SPACE_EFFICIENT_LOGICAL
        rounds.append(
            DistillationRound(
                distance=plan.distance,
                unit=unit,
                unit_count=counts[i],
                input_t_error=errors_in[i],
                output_t_error=errors_out[i],
                target_t_error=plan.target,
                max_input_t_error=plan.max_input,
                clifford_error_bound=plan.clifford_bound,
                clifford_error=plan.clifford_error,
                acceptance_prob=accept[i],
                qubits=counts[i] * unit.qubits(plan.distance),
                runtime=unit.runtime(plan.distance, params),
            )
        )
    return FactoryDesign(
        rounds=tuple(rounds),
        total_runtime=math.fsum(r.runtime for r in rounds),
        qubits=max(r.qubits for r in rounds),
        outputs_per_run=1,
    )


def factory_count(m: int, design: FactoryDesign, algorithm_runtime: float) -> int:
    """Factories needed so that ``m`` T states are ready within ``algorithm_runtime``."""
    if m == 0 or not design.rounds:
        return 0
    if not algorithm_runtime > 0:
        raise ValidationError(f"algorithm runtime must be > 0, got {algorithm_runtime}")
    return ceil_snap(m * design.total_runtime / (design.outputs_per_run * algorithm_runtime))
