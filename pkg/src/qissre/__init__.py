"""Surface-code resource estimates for Grover-search scheduling (QISS)."""

from .counts import LogicalCounts, parse_counts, qiss_logical_counts
from .distill import FactoryDesign, design_factory
from .errors import (
    AboveThresholdError,
    EstimationError,
    FactoryInfeasibleError,
    InfeasibleError,
    UnsupportedModalityError,
    ValidationError,
)
from .estimator import EstimateResult, estimate, estimate_perfect
from .gas import GasRun, crossover_days, estimate_full_gas
from .qec import PhysicalParams, QecParams
from .scenarios import Scenario, builtin_scenarios, get_scenario, load_scenario

__version__ = "0.1.0"
