"""Full Grover Adaptive Search runs, the classical baseline and crossovers.

A full run needs sqrt(N) = 4**n Grover rotations.  Its cost is extrapolated
from one rotation estimated at the per-rotation budget ``eps / 4**n``: runtime
is multiplied by the rotation count, the qubit count is taken as is.  This is
exact for the cost model, because ``n`` repetitions at budget ``eps`` and one
repetition at ``eps / n`` lead to identical distances and factories.
"""

from __future__ import annotations

from dataclasses import dataclass

from .counts import LogicalCounts, qiss_logical_counts, solution_space_size
from .errors import InfeasibleError, ValidationError
from .estimator import EstimateResult
from .scenarios import Scenario

CLASSICAL_GUESS_NS = 1.0


@dataclass(frozen=True)
class GasRun:
    n_days: int
    iterations: int
    quantum_runtime: float
    quantum_qubits: int
    classical_runtime: float
    rotation: EstimateResult
    lower_bound_runtime: float | None = None
    lower_bound_qubits: int | None = None

    @property
    def speedup(self) -> bool:
        return self.quantum_runtime < self.classical_runtime


def gas_iterations(n_days: int) -> int:
    """Grover rotations of a full search: exact integer sqrt(16**n) = 4**n."""
    solution_space_size(n_days)  # validates n_days
    return 4**n_days


def scaled_budget(eps: float, iterations: int) -> float:
    if iterations < 1:
        raise ValidationError(f"iterations must be >= 1, got {iterations}")
    return eps / iterations


def classical_runtime(n_days: int, guess_time: float = CLASSICAL_GUESS_NS) -> float:
    """Brute-force search time in ns at one completed guess per ``guess_time``."""
    return solution_space_size(n_days) * guess_time


def estimate_full_gas(
    n_days: int,
    scenario: Scenario,
    eps: float,
    counts: LogicalCounts | None = None,
    *,
    include_lower_bound: bool = False,
    guess_time: float = CLASSICAL_GUESS_NS,
    **estimate_opts,
) -> GasRun:
    """Cost of a complete search over ``n_days`` on ``scenario``.

    ``counts`` defaults to the QISS single-rotation model.  With
    ``include_lower_bound`` the run also reports the optimistic variant: one
    rotation at the full budget, times the rotation count.
    """
    iterations = gas_iterations(n_days)
    if counts is None:
        counts = qiss_logical_counts(n_days)
    rotation = scenario.estimate(counts, scaled_budget(eps, iterations), **estimate_opts)
    lb_runtime = lb_qubits = None
    if include_lower_bound:
        lb = scenario.estimate(counts, eps, **estimate_opts)
        lb_runtime, lb_qubits = lb.runtime * iterations, lb.qubits_total
    return GasRun(
        n_days=n_days,
        iterations=iterations,
        quantum_runtime=rotation.runtime * iterations,
        quantum_qubits=rotation.qubits_total,
        classical_runtime=classical_runtime(n_days, guess_time),
        rotation=rotation,
        lower_bound_runtime=lb_runtime,
        lower_bound_qubits=lb_qubits,
    )


@dataclass(frozen=True)
class Crossover:
    n_days: int | None
    run: GasRun | None
    skipped: tuple[tuple[int, str], ...] = ()


def find_crossover(scenario: Scenario, eps: float, max_days: int, **estimate_opts) -> Crossover:
    """Scan days upward for the first strict quantum win; infeasible days are skipped."""
    if max_days < 1:
        raise ValidationError(f"max_days must be >= 1, got {max_days}")
    skipped = []
    for n in range(1, max_days + 1):
        try:
            run = estimate_full_gas(n, scenario, eps, **estimate_opts)
        except InfeasibleError as e:
            skipped.append((n, str(e)))
            continue
        if run.speedup:
            return Crossover(n, run, tuple(skipped))
    return Crossover(None, None, tuple(skipped))


def crossover_days(scenario: Scenario, eps: float, max_days: int, **estimate_opts) -> int | None:
    return find_crossover(scenario, eps, max_days, **estimate_opts).n_days

