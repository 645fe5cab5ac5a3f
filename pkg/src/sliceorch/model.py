"""Domain types shared by every other module: slice intents, data-center
pools, the cell radio configuration, NF resource profiles and the slice
lifecycle state machine.

All types are immutable values; mutation happens only by constructing new
values, so instances are safe to share across concurrent readers.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Optional


class OrchestratorError(Exception):
    """Base class for all domain errors."""


class InvariantError(OrchestratorError, ValueError):
    """A domain type invariant was violated; message names type and rule."""


class DuplicateSliceError(OrchestratorError):
    """Two active slices share the same (sst, sd) identity."""


class UnknownSliceError(OrchestratorError, KeyError):
    pass


class UnknownPoolError(OrchestratorError, KeyError):
    pass


class IllegalTransition(OrchestratorError):
    """Requested lifecycle transition is not one of the legal forward edges."""

    def __init__(self, current: "Lifecycle", target: "Lifecycle"):
        super().__init__(f"illegal lifecycle transition {current.value} -> {target.value}")
        self.current = current
        self.target = target


def _require(cond: bool, type_name: str, rule: str) -> None:
    if not cond:
        raise InvariantError(f"{type_name}: {rule}")


class Tier(str, enum.Enum):
    EDGE = "Edge"
    REGIONAL = "Regional"
    CENTRAL = "Central"


class Lifecycle(str, enum.Enum):
    PREPARATION = "Preparation"
    COMMISSIONING = "Commissioning"
    OPERATION = "Operation"
    DECOMMISSIONING = "Decommissioning"
    TERMINATED = "Terminated"


# The only legal forward edges of the lifecycle graph.
LEGAL_TRANSITIONS: frozenset[tuple[Lifecycle, Lifecycle]] = frozenset(
    {
        (Lifecycle.PREPARATION, Lifecycle.COMMISSIONING),
        (Lifecycle.COMMISSIONING, Lifecycle.OPERATION),
        (Lifecycle.OPERATION, Lifecycle.DECOMMISSIONING),
        (Lifecycle.DECOMMISSIONING, Lifecycle.TERMINATED),
    }
)

NF_TYPES = ("CU-UP", "UPF", "CU-CP", "DU", "AMF", "SMF")
DATA_PLANE_NFS = ("CU-UP", "UPF")


@dataclass(frozen=True)
class SliceIntent:
    """The operator's high-level intention for one slice.

    ``(sst, sd)`` is the slice identity; the delay band is an RTT band in
    milliseconds and the throughput band is in Mbit/s. Higher ``priority``
    means more important.
    """

    sst: int
    sd: int
    delay_min_ms: float
    delay_max_ms: float
    tp_min_mbps: float
    tp_max_mbps: float
    priority: int = 1
    label: str = ""

    def __post_init__(self):
        _require(self.sst >= 0 and self.sd >= 0, "SliceIntent", "sst and sd must be nonnegative")
        _require(self.delay_min_ms >= 0 and self.tp_min_mbps >= 0, "SliceIntent", "bands must be nonnegative")
        _require(self.delay_min_ms <= self.delay_max_ms, "SliceIntent", "delay_min_ms <= delay_max_ms")
        _require(self.tp_min_mbps <= self.tp_max_mbps, "SliceIntent", "tp_min_mbps <= tp_max_mbps")
        _require(self.priority >= 1, "SliceIntent", "priority >= 1")

    @property
    def slice_id(self) -> str:
        return f"{self.sst}-{self.sd}"

    @property
    def display_name(self) -> str:
        return self.label or self.slice_id


@dataclass(frozen=True)
class DcPool:
    """One data-center pool: capacity, rental rates and reserved overhead.

    ``cpu_capacity_ms`` is CPU milliseconds per second of wall time.
    ``dataplane_budget_ms`` is the share of capacity usable by per-slice
    data-plane NFs after the cluster baseline and any shared NFs pinned to
    this pool; when omitted it defaults to capacity minus fixed overhead.
    """

    id: str
    tier: Tier
    cpu_capacity_ms: float
    ram_capacity_gb: float
    cpu_rate: float  # currency per 100 CPU-ms per hour
    ram_rate: float  # currency per GB per hour
    bw_rate: float  # currency per GB transferred
    fixed_overhead_cpu_ms: float = 0.0
    dataplane_budget_ms: Optional[float] = None

    def __post_init__(self):
        for name in ("cpu_capacity_ms", "ram_capacity_gb", "cpu_rate", "ram_rate", "bw_rate", "fixed_overhead_cpu_ms"):
            _require(getattr(self, name) >= 0, "DcPool", f"{name} must be nonnegative")
        _require(
            self.fixed_overhead_cpu_ms <= self.cpu_capacity_ms,
            "DcPool",
            "fixed_overhead_cpu_ms <= cpu_capacity_ms",
        )
        if self.dataplane_budget_ms is not None:
            _require(self.dataplane_budget_ms >= 0, "DcPool", "dataplane_budget_ms must be nonnegative")
            _require(
                self.dataplane_budget_ms <= self.cpu_capacity_ms - self.fixed_overhead_cpu_ms,
                "DcPool",
                "dataplane_budget_ms <= cpu_capacity_ms - fixed_overhead_cpu_ms",
            )

    @property
    def effective_dataplane_budget_ms(self) -> float:
        if self.dataplane_budget_ms is not None:
            return self.dataplane_budget_ms
        return self.cpu_capacity_ms - self.fixed_overhead_cpu_ms


@dataclass(frozen=True)
class Topology:
    """DC pools plus the one-way delays between them and at the two ends
    (UE<->DU radio leg, UPF<->data-network core leg)."""

    pools: tuple[DcPool, ...]
    link_delay_ms: dict[tuple[str, str], float]  # keyed by sorted pool-id pair
    radio_delay_ms: float
    core_delay_ms: float

    def __post_init__(self):
        _require(len(self.pools) >= 1, "Topology", "at least one pool required")
        ids = [p.id for p in self.pools]
        _require(len(set(ids)) == len(ids), "Topology", "pool ids must be unique")
        _require(self.radio_delay_ms >= 0 and self.core_delay_ms >= 0, "Topology", "delays must be nonnegative")
        edges = [p for p in self.pools if p.tier is Tier.EDGE]
        _require(len(edges) == 1, "Topology", "exactly one Edge-tier pool must host the DU")
        for a in ids:
            for b in ids:
                if a == b:
                    continue
                key = (min(a, b), max(a, b))
                _require(key in self.link_delay_ms, "Topology", f"link delay missing for pool pair {key}")
                _require(self.link_delay_ms[key] >= 0, "Topology", f"link delay for {key} must be nonnegative")

    def pool(self, pool_id: str) -> DcPool:
        for p in self.pools:
            if p.id == pool_id:
                return p
        raise UnknownPoolError(pool_id)

    @property
    def du_pool(self) -> DcPool:
        return next(p for p in self.pools if p.tier is Tier.EDGE)

    def link_delay(self, a: str, b: str) -> float:
        if a == b:
            self.pool(a)  # existence check
            return 0.0
        self.pool(a)
        self.pool(b)
        return self.link_delay_ms[(min(a, b), max(a, b))]


@dataclass(frozen=True)
class CellConfig:
    """Radio configuration of the single simulated cell."""

    total_prbs: int
    prb_budget: int
    cell_max_mbps: float
    prb_quantum: int = 5

    def __post_init__(self):
        _require(self.total_prbs > 0 and self.prb_budget > 0, "CellConfig", "PRB counts must be positive")
        _require(self.prb_budget <= self.total_prbs, "CellConfig", "prb_budget <= total_prbs")
        _require(self.cell_max_mbps > 0, "CellConfig", "cell_max_mbps must be positive")
        _require(self.prb_quantum >= 1, "CellConfig", "prb_quantum >= 1")

    @property
    def mbps_per_prb(self) -> Fraction:
        # Exact rational so water-filled grants convert to throughput
        # without rounding drift.
        return Fraction(self.cell_max_mbps) / Fraction(self.prb_budget)


@dataclass(frozen=True)
class NfProfile:
    """Measured resource points for one NF type.

    ``points`` are (throughput_mbps, cpu_ms, ram_mb) tuples, strictly
    increasing in throughput and nondecreasing in CPU. Control-plane NFs
    shared by all slices carry ``shared=True``.
    """

    nf_type: str
    points: tuple[tuple[float, float, float], ...]
    shared: bool = False

    def __post_init__(self):
        _require(self.nf_type in NF_TYPES, "NfProfile", f"nf_type must be one of {NF_TYPES}")
        _require(len(self.points) >= 1, "NfProfile", "at least one measurement point required")
        if self.nf_type in DATA_PLANE_NFS:
            _require(len(self.points) >= 2, "NfProfile", "data-plane NF profiles need at least two points")
        prev_tp, prev_cpu = None, None
        for tp, cpu, ram in self.points:
            _require(tp >= 0 and cpu >= 0 and ram >= 0, "NfProfile", "point values must be nonnegative")
            if prev_tp is not None:
                _require(tp > prev_tp, "NfProfile", "points must be strictly increasing in throughput")
                _require(cpu >= prev_cpu, "NfProfile", "points must be nondecreasing in cpu_ms")
            prev_tp, prev_cpu = tp, cpu

    @property
    def ram_demand_gb(self) -> float:
        # RAM is nearly flat across traffic levels; demand is the profile max.
        return max(ram for _, _, ram in self.points) / 1000.0


@dataclass(frozen=True)
class Placement:
    """Low-level action for one slice: where its data-plane NFs run, the
    CPU/RAM reserved for them at admission, and the guaranteed PRB floor."""

    slice_id: str
    pool_cuup: str
    pool_upf: str
    cpu_quota_ms: dict[str, float]  # per data-plane NF type
    ram_gb: dict[str, float]
    prb_floor: int
    predicted_rtt_ms: float

    def nf_pool(self, nf_type: str) -> str:
        if nf_type == "CU-UP":
            return self.pool_cuup
        if nf_type == "UPF":
            return self.pool_upf
        raise KeyError(nf_type)


@dataclass(frozen=True)
class SliceState:
    """A slice with its lifecycle phase and, once commissioned, its placement."""

    intent: SliceIntent
    lifecycle: Lifecycle = Lifecycle.PREPARATION
    placement: Optional[Placement] = None

    _PLACED = (Lifecycle.COMMISSIONING, Lifecycle.OPERATION, Lifecycle.DECOMMISSIONING)

    def __post_init__(self):
        _require(
            (self.placement is not None) == (self.lifecycle in self._PLACED),
            "SliceState",
            "placement present iff lifecycle in {Commissioning, Operation, Decommissioning}",
        )


def validate_transition(
    state: SliceState, target: Lifecycle, placement: Optional[Placement] = None
) -> SliceState:
    """Apply a lifecycle transition, returning the updated state.

    Entering Commissioning requires a placement (kept through Operation and
    Decommissioning, dropped at Terminated). Raises IllegalTransition for
    any edge outside the legal forward chain.
    """
    if (state.lifecycle, target) not in LEGAL_TRANSITIONS:
        raise IllegalTransition(state.lifecycle, target)
    if target is Lifecycle.COMMISSIONING:
        if placement is None:
            raise InvariantError("SliceState: commissioning requires a placement")
        return replace(state, lifecycle=target, placement=placement)
    if target is Lifecycle.TERMINATED:
        return replace(state, lifecycle=target, placement=None)
    return replace(state, lifecycle=target)


@dataclass(frozen=True)
class SimEvent:
    """One timed scenario event.

    ``kind`` is one of slice_start, slice_stop, traffic_demand,
    assurance_toggle; the payload fields used depend on the kind. Events are
    totally ordered by (t_ms, insertion sequence).
    """

    t_ms: int
    kind: str
    intent: Optional[SliceIntent] = None
    slice_id: str = ""
    mbps: float = 0.0
    enabled: bool = True

    KINDS = ("slice_start", "slice_stop", "traffic_demand", "assurance_toggle")

    def __post_init__(self):
        _require(self.t_ms >= 0, "SimEvent", "t_ms must be nonnegative")
        _require(self.kind in self.KINDS, "SimEvent", f"kind must be one of {self.KINDS}")
        if self.kind == "slice_start":
            _require(self.intent is not None, "SimEvent", "slice_start carries an intent")
        if self.kind in ("slice_stop", "traffic_demand"):
            _require(bool(self.slice_id), "SimEvent", f"{self.kind} names a slice")
        if self.kind == "traffic_demand":
            _require(self.mbps >= 0, "SimEvent", "traffic_demand mbps must be nonnegative")
