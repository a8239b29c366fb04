"""Metric-driven myopic multi-target sensor management (OSPA, UOSPA, GOSPA)."""

from ._backend import get_backend, set_backend, use_backend
from .bernoulli import (
    BernoulliComponent,
    ImpossibleOutcomeError,
    MultiBernoulli,
    Outcome,
    SensingCost,
    SensorModel,
    cardinality_distribution,
    leave_one_out_cardinality,
    outcome_probability,
    posterior_existence,
)
from .estimation import (
    EnumerationLimitError,
    brute_force_ms,
    msgospa,
    msospa,
    msuospa,
    optimal_mask,
    optimal_mask_gospa,
)
from .management import (
    ActionCost,
    DecisionSummary,
    gospa_action_cost,
    gospa_closed_form_decision,
    gospa_component_cost,
    measure_band,
    metric_action_cost,
    optimal_action,
    t_fn,
)
from .metrics import (
    Assignment,
    DimensionMismatchError,
    GospaDecomposition,
    Metric,
    MetricParams,
    base_distance,
    gospa2,
    ospa,
    solve_assignment,
    uospa,
)
from .simulation import McConfig, McResult, mc_expected_cost, simulate_trial

__version__ = "0.1.0"
