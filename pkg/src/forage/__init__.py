"""Cyber-foraging toolkit.

Context descriptors, a weighted-cost offload solver, reference workloads,
a framed TCP execution runtime with a deterministic simulated mode, and an
experiment harness that sweeps input sizes across placement strategies.
"""

from . import errors
from .context_model import (
    AppClass,
    ApplicationContext,
    MobileContext,
    NetworkLink,
    SurrogateContext,
    current_processing_power,
    parse_application,
    parse_mobile,
    parse_network,
    parse_surrogate,
    render_application,
    render_mobile,
    render_network,
    render_surrogate,
)
from .estimator import (
    CandidateEstimate,
    TransferPlan,
    estimate_execution_time,
    estimate_local,
    estimate_offload,
    plan_transfer,
    transfer_time,
)
from .harness import ResultRow, ScenarioConfig, load_scenario, run_scenario, write_csv
from .order_expr import eval_order, parse_order, render
from .runtime import (
    Frame,
    SimulatedLink,
    SurrogateDaemon,
    Timings,
    VirtualClock,
    execute_local,
    execute_remote,
    ping,
    serve,
)
from .solver import (
    Decision,
    RankedCandidate,
    SolverWeights,
    Verdict,
    cost,
    decide,
    feasibility,
)
from .workloads import (
    REGISTRY,
    TASK_MATRIX_DETERMINANT,
    TASK_NTH_PRIME,
    Task,
    get_task,
    matrix_determinant,
    nth_prime,
)

__version__ = "0.1.0"

__all__ = [
    "AppClass",
    "ApplicationContext",
    "CandidateEstimate",
    "Decision",
    "Frame",
    "MobileContext",
    "NetworkLink",
    "REGISTRY",
    "RankedCandidate",
    "ResultRow",
    "ScenarioConfig",
    "SimulatedLink",
    "SolverWeights",
    "SurrogateContext",
    "SurrogateDaemon",
    "Task",
    "TASK_MATRIX_DETERMINANT",
    "TASK_NTH_PRIME",
    "Timings",
    "TransferPlan",
    "Verdict",
    "VirtualClock",
    "cost",
    "current_processing_power",
    "decide",
    "errors",
    "estimate_execution_time",
    "estimate_local",
    "estimate_offload",
    "eval_order",
    "execute_local",
    "execute_remote",
    "feasibility",
    "get_task",
    "load_scenario",
    "matrix_determinant",
    "nth_prime",
    "parse_application",
    "parse_mobile",
    "parse_network",
    "parse_order",
    "parse_surrogate",
    "ping",
    "plan_transfer",
    "render",
    "render_application",
    "render_mobile",
    "render_network",
    "render_surrogate",
    "run_scenario",
    "serve",
    "transfer_time",
    "write_csv",
]
