"""Single-circuit physical resource estimate.

Pipeline: split the error budget, lay out logical qubits, count logical
cycles and T states, derive the per-qubit-per-cycle error target and the
code distance, then size the distillation fleet so that T-state production
never stalls the circuit.  Durations are in nanoseconds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ._num import ceil_snap, ceil_sqrt
from .counts import LogicalCounts
from .distill import (
    DEFAULT_CONFIDENCE,
    DEFAULT_MAX_ROUNDS,
    ZERO_ROUND_FACTORY,
    FactoryDesign,
    design_factory,
    factory_count,
    required_t_state_error,
)
from .errors import EstimationError, ValidationError, with_stage
from .qec import (
    DEFAULT_QEC,
    PhysicalParams,
    QecParams,
    logical_cycle_time,
    physical_qubits_per_logical,
    required_distance,
)

PERFECT_CLOCK_NS = 0.2


@dataclass(frozen=True)
class ErrorBudget:
    total: float
    logical: float
    synthesis: float
    distillation: float

    @property
    def effective_failure(self) -> float:
        """Failure probability when the three shares fail independently."""
        return 1 - (1 - self.logical) * (1 - self.synthesis) * (1 - self.distillation)


@dataclass(frozen=True)
class SynthesisConstants:
    a_coeff: float = 0.53
    b_coeff: float = 5.3

    def __post_init__(self):
        if not (self.a_coeff > 0 and self.b_coeff > 0):
            raise ValidationError("synthesis constants must be positive")


DEFAULT_SYNTHESIS = SynthesisConstants()


@dataclass(frozen=True)
class EstimateResult:
    """Output of :func:`estimate` / :func:`estimate_perfect`.

    For the perfect-qubit path ``code_distance`` and ``logical_error_target``
    are None, ``cycle_time`` is the bare clock period and no qubits are spent
    on encoding or distillation.
    """

    logical_qubits: int
    logical_cycles: int
    t_states: int
    logical_error_target: float | None
    code_distance: int | None
    cycle_time: float
    runtime: float
    factory: FactoryDesign
    factory_count: int
    qubits_logical: int
    qubits_distillation: int
    qubits_total: int
    budget: ErrorBudget
    synthesis_factor: int

    @property
    def runtime_s(self) -> float:
        return self.runtime / 1e9

    @property
    def qubits_per_logical(self) -> int | None:
        if self.code_distance is None:
            return None
        return physical_qubits_per_logical(self.code_distance)


def split_budget(eps: float) -> ErrorBudget:
    if not 0 < eps < 1:
        raise ValidationError(f"error budget must be in (0, 1), got {eps}")
    share = eps / 3
    return ErrorBudget(total=eps, logical=share, synthesis=share, distillation=share)


def logical_qubits(q_alg: int) -> int:
    """Logical patches for ``q_alg`` algorithm qubits plus routing ancillas."""
    if q_alg < 1:
        raise ValidationError(f"q_alg must be >= 1, got {q_alg}")
    return 2 * q_alg + ceil_sqrt(8 * q_alg) + 1


def synthesis_factor(m_r: int, eps_syn: float, consts: SynthesisConstants = DEFAULT_SYNTHESIS) -> int:
    """Average T states per synthesised rotation (0 when there are no rotations)."""
    if m_r == 0:
        return 0
    if not eps_syn > 0:
        raise ValidationError(f"synthesis budget must be > 0, got {eps_syn}")
    return ceil_snap(consts.a_coeff * math.log2(m_r / eps_syn) + consts.b_coeff)


def logical_cycles(counts: LogicalCounts, eps_syn: float, consts: SynthesisConstants = DEFAULT_SYNTHESIS) -> int:
    f = synthesis_factor(counts.m_r, eps_syn, consts)
    return counts.m_meas + counts.m_r + counts.m_t + f * counts.d_r + 3 * counts.m_tof


def t_state_count(counts: LogicalCounts, eps_syn: float, consts: SynthesisConstants = DEFAULT_SYNTHESIS) -> int:
    f = synthesis_factor(counts.m_r, eps_syn, consts)
    return f * counts.m_r + 4 * counts.m_tof + counts.m_t


def logical_error_target(eps_log: float, q: int, c: int) -> float:
    if q < 1 or c < 1:
        raise ValidationError(f"need at least one logical qubit and cycle, got Q={q}, C={c}")
    return eps_log / (q * c)


def estimate(
    counts: LogicalCounts,
    params: PhysicalParams,
    eps: float,
    qec: QecParams = DEFAULT_QEC,
    consts: SynthesisConstants = DEFAULT_SYNTHESIS,
    *,
    exact_binomial: bool = False,
    confidence: float = DEFAULT_CONFIDENCE,
    max_rounds: int = DEFAULT_MAX_ROUNDS,
) -> EstimateResult:
    """Physical qubits and runtime of ``counts`` on surface-code hardware ``params``."""
    budget = split_budget(eps)
    q = logical_qubits(counts.q_alg)
    factor = synthesis_factor(counts.m_r, budget.synthesis, consts)
    c = logical_cycles(counts, budget.synthesis, consts)
    m = t_state_count(counts, budget.synthesis, consts)
    if c == 0:
        raise ValidationError("circuit has no logical operations", stage="counts")

    p = params.clifford_error
    try:
        target = logical_error_target(budget.logical, q, c)
        d = required_distance(target, p, qec)
    except EstimationError as e:
        if p >= qec.threshold:
            e.args = (f"{e.args[0]} ({params.worst_error_field} = {p:g})",)
        raise with_stage(e, "distance")
    tau = logical_cycle_time(d, params)
    runtime = tau * c
    q_log = q * physical_qubits_per_logical(d)

    if m == 0:
        factory, n_factories = ZERO_ROUND_FACTORY, 0
    else:
        try:
            p_t_target = required_t_state_error(m, budget.distillation)
            factory = design_factory(
                params.t_gate_error,
                p,
                p_t_target,
                params,
                qec,
                max_rounds=max_rounds,
                confidence=confidence,
                exact_binomial=exact_binomial,
            )
            n_factories = factory_count(m, factory, runtime)
        except EstimationError as e:
            raise with_stage(e, "factory")
    q_dis = n_factories * factory.qubits

    return EstimateResult(
        logical_qubits=q,
        logical_cycles=c,
        t_states=m,
        logical_error_target=target,
        code_distance=d,
        cycle_time=tau,
        runtime=runtime,
        factory=factory,
        factory_count=n_factories,
        qubits_logical=q_log,
        qubits_distillation=q_dis,
        qubits_total=q_log + q_dis,
        budget=budget,
        synthesis_factor=factor,
    )


def estimate_perfect(
    counts: LogicalCounts,
    eps: float,
    clock: float = PERFECT_CLOCK_NS,
    consts: SynthesisConstants = DEFAULT_SYNTHESIS,
) -> EstimateResult:
    """Error-free qubits: logical depth times a bare clock, no encoding overhead."""
    if not clock > 0:
        raise ValidationError(f"perfect-qubit clock must be > 0 ns, got {clock}")
    budget = split_budget(eps)
    q = logical_qubits(counts.q_alg)
    c = logical_cycles(counts, budget.synthesis, consts)
    return EstimateResult(
        logical_qubits=q,
        logical_cycles=c,
        t_states=t_state_count(counts, budget.synthesis, consts),
        logical_error_target=None,
        code_distance=None,
        cycle_time=clock,
        runtime=c * clock,
        factory=ZERO_ROUND_FACTORY,
        factory_count=0,
        qubits_logical=q,
        qubits_distillation=0,
        qubits_total=q,
        budget=budget,
        synthesis_factor=synthesis_factor(counts.m_r, budget.synthesis, consts),
    )
