"""Intent-driven network-slicing orchestrator and discrete-event simulator."""

from .assurance import (
    QuotaPlan,
    SlaEntry,
    SlaReport,
    assurance_tick,
    detect,
    fair_share_baseline,
    rebalance,
)
from .compute import (
    CpuThroughputCurve,
    accrue_cost,
    build_curves,
    combined_cpu_for_throughput,
    combined_throughput_for_cpu,
    slice_cpu_demand,
)
from .model import (
    CellConfig,
    DcPool,
    DuplicateSliceError,
    IllegalTransition,
    InvariantError,
    Lifecycle,
    NfProfile,
    OrchestratorError,
    Placement,
    SimEvent,
    SliceIntent,
    SliceState,
    Tier,
    Topology,
    UnknownPoolError,
    UnknownSliceError,
    validate_transition,
)
from .placement import (
    NoFeasiblePlacement,
    Residuals,
    brute_force_place,
    feasible_placements,
    place_slice,
    rtt,
)
from .radio import AdmissionOverflow, PrbAllocation, SlaUnsatisfiable, min_prbs, prb_throughput, waterfill
from .scenario import (
    Scenario,
    ScenarioError,
    load_bundled,
    load_scenario,
    scenario_to_dict,
    serialize_scenario,
)
from .sim import (
    MetricsFrame,
    Record,
    RunResult,
    Simulator,
    replay_records,
    run_scenario,
    validate_frame,
)

__version__ = "0.1.0"
