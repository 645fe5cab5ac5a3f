"""Deterministic discrete-event simulator.

Each 1-second tick applies due scenario events (admissions, stops, traffic
changes, assurance toggles), re-derives the PRB allocation, runs the
assurance loop to actuate CPU quotas, and samples one MetricsFrame. Two
runs of the same scenario produce identical byte streams: there is no
randomness anywhere in the model.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional

from . import radio
from .assurance import PoolSlice, PoolView, QuotaPlan, assurance_tick, violation_pct
from .compute import build_curves, nf_hourly_cost, transferred_gb
from .model import (
    DATA_PLANE_NFS,
    DuplicateSliceError,
    Lifecycle,
    OrchestratorError,
    Placement,
    SimEvent,
    SliceIntent,
    SliceState,
    UnknownSliceError,
    validate_transition,
)
from .placement import Residuals, place_slice, placement_daily_cost
from .scenario import TICK_MS, Scenario


@dataclass(frozen=True)
class SliceSample:
    """Per-slice slice of one MetricsFrame."""

    achieved_mbps: float
    rtt_ms: float
    granted_prbs: float
    prb_floor: int
    demand_mbps: float
    cpu_quota_ms: dict[str, float]
    cpu_used_ms: dict[str, float]
    tp_violation_pct: float
    delay_violated: bool
    pool_cuup: str
    pool_upf: str
    label: str


@dataclass(frozen=True)
class MetricsFrame:
    seq: int
    t_ms: int
    slices: dict[str, SliceSample]
    pool_utilization: dict[str, float]
    cumulative_cost: float

    def to_dict(self) -> dict:
        return {
            "seq": self.seq,
            "t_ms": self.t_ms,
            "slices": {
                sid: {
                    "achieved_mbps": s.achieved_mbps,
                    "rtt_ms": s.rtt_ms,
                    "granted_prbs": s.granted_prbs,
                    "prb_floor": s.prb_floor,
                    "demand_mbps": s.demand_mbps,
                    "cpu_quota_ms": s.cpu_quota_ms,
                    "cpu_used_ms": s.cpu_used_ms,
                    "tp_violation_pct": s.tp_violation_pct,
                    "delay_violated": s.delay_violated,
                    "pool_cuup": s.pool_cuup,
                    "pool_upf": s.pool_upf,
                    "label": s.label,
                }
                for sid, s in self.slices.items()
            },
            "pool_utilization": self.pool_utilization,
            "cumulative_cost": self.cumulative_cost,
        }


@dataclass(frozen=True)
class Record:
    """One reconciliation / control event in the orchestrator log."""

    seq: int
    t_ms: int
    kind: str  # admit | reject | resize | policy | decommission | traffic_demand | assurance_toggle
    interface: str  # modeled interface the action would ride on (O2, O1, A1, ...)
    data: dict

    def to_dict(self) -> dict:
        return {"seq": self.seq, "t_ms": self.t_ms, "kind": self.kind, "interface": self.interface, "data": self.data}


@dataclass
class AdmissionOutcome:
    admitted: bool
    slice_id: str
    reason: str = ""
    detail: str = ""
    placement: Optional[Placement] = None


class Simulator:
    """Single-threaded deterministic engine; one instance per session."""

    def __init__(self, scenario: Scenario, assurance_enabled: bool = True):
        self.scenario = scenario
        self.topology = scenario.topology
        self.cell = scenario.cell
        self.curves = build_curves(scenario.nf_profiles)
        self.ram_demand = {nf: scenario.nf_profiles[nf].ram_demand_gb for nf in DATA_PLANE_NFS}
        self.residuals = Residuals.of(self.topology)
        self.assurance_enabled = assurance_enabled

        self.slices: dict[str, SliceState] = {}
        self.demand_override: dict[str, float] = {}
        self.quotas: dict[str, QuotaPlan] = {}
        self.policies: dict[str, tuple[int, float]] = {}  # actuated (floor, cap)
        self.grants: dict[str, Fraction] = {}

        self.t_ms = 0
        self.frames: list[MetricsFrame] = []
        self.records: list[Record] = []
        self.cumulative_cost = 0.0
        self.last_report = None
        self._event_idx = 0
        self._record_seq = 0
        self._last_metrics: dict[str, tuple[float, float]] = {}

    # -- command surface (also used by the service) --------------------

    def _log(self, kind: str, interface: str, data: dict) -> Record:
        rec = Record(seq=self._record_seq, t_ms=self.t_ms, kind=kind, interface=interface, data=data)
        self._record_seq += 1
        self.records.append(rec)
        return rec

    def active_slices(self) -> dict[str, SliceState]:
        return {sid: st for sid, st in self.slices.items() if st.lifecycle is not Lifecycle.TERMINATED}

    def operating_slices(self) -> dict[str, SliceState]:
        return {sid: st for sid, st in self.slices.items() if st.lifecycle is Lifecycle.OPERATION}

    def submit_intent(self, intent: SliceIntent) -> AdmissionOutcome:
        """Admit or reject a slice intent; either way the outcome is logged
        and the simulation continues."""
        sid = intent.slice_id
        try:
            if sid in self.active_slices():
                raise DuplicateSliceError(f"slice {sid} already active")
            floor = radio.min_prbs(intent.tp_min_mbps, self.cell)
            # count floors of everything admitted, including slices whose
            # radio policy has not been actuated by a tick yet
            committed = sum(st.placement.prb_floor for st in self.operating_slices().values())
            if committed + floor > self.cell.prb_budget:
                raise radio.AdmissionOverflow(
                    f"floors {committed}+{floor} would exceed PRB budget {self.cell.prb_budget}"
                )
            placement = place_slice(
                intent, self.topology, self.residuals, self.curves, self.ram_demand, self.cell
            )
        except OrchestratorError as exc:
            self._log("reject", "O2", {"slice": sid, "reason": type(exc).__name__, "detail": str(exc)})
            return AdmissionOutcome(admitted=False, slice_id=sid, reason=type(exc).__name__, detail=str(exc))

        state = SliceState(intent=intent)
        state = validate_transition(state, Lifecycle.COMMISSIONING, placement)
        state = validate_transition(state, Lifecycle.OPERATION)
        self.slices[sid] = state
        self.residuals.reserve(placement)
        self._log(
            "admit",
            "O2",
            {
                "slice": sid,
                "intent": _intent_dict(intent),
                "placement": _placement_dict(placement),
            },
        )
        return AdmissionOutcome(admitted=True, slice_id=sid, placement=placement)

    def stop_slice(self, slice_id: str) -> None:
        state = self.active_slices().get(slice_id)
        if state is None:
            raise UnknownSliceError(slice_id)
        placement = state.placement
        state = validate_transition(state, Lifecycle.DECOMMISSIONING)
        state = validate_transition(state, Lifecycle.TERMINATED)
        self.slices[slice_id] = state
        self.residuals.release(placement)
        self.demand_override.pop(slice_id, None)
        self.quotas.pop(slice_id, None)
        self.policies.pop(slice_id, None)
        self.grants.pop(slice_id, None)
        self._log("decommission", "O2", {"slice": slice_id})

    def set_demand(self, slice_id: str, mbps: float) -> None:
        if slice_id not in self.active_slices():
            raise UnknownSliceError(slice_id)
        self.demand_override[slice_id] = mbps
        self._log("traffic_demand", "sim", {"slice": slice_id, "mbps": mbps})

    def set_assurance(self, enabled: bool) -> None:
        self.assurance_enabled = enabled
        self._log("assurance_toggle", "A1", {"enabled": enabled})

    def whatif_placement(self, intent: SliceIntent) -> dict:
        """Pure what-if evaluation against current residual state."""
        try:
            floor = radio.min_prbs(intent.tp_min_mbps, self.cell)
            placement = place_slice(
                intent, self.topology, self.residuals, self.curves, self.ram_demand, self.cell
            )
        except OrchestratorError as exc:
            return {"feasible": False, "reason": type(exc).__name__, "detail": str(exc)}
        cost = placement_daily_cost(
            intent, (placement.pool_cuup, placement.pool_upf), self.topology, self.curves, self.ram_demand
        )
        return {
            "feasible": True,
            "placement": _placement_dict(placement),
            "rtt_ms": placement.predicted_rtt_ms,
            "daily_cost": cost,
            "prb_floor": floor,
        }

    # -- tick pipeline --------------------------------------------------

    def _apply_event(self, ev: SimEvent) -> None:
        if ev.kind == "slice_start":
            self.submit_intent(ev.intent)
        elif ev.kind == "slice_stop":
            try:
                self.stop_slice(ev.slice_id)
            except UnknownSliceError:
                self._log("reject", "sim", {"slice": ev.slice_id, "reason": "UnknownSliceError", "detail": "stop for unknown slice"})
        elif ev.kind == "traffic_demand":
            try:
                self.set_demand(ev.slice_id, ev.mbps)
            except UnknownSliceError:
                self._log("reject", "sim", {"slice": ev.slice_id, "reason": "UnknownSliceError", "detail": "demand for unknown slice"})
        elif ev.kind == "assurance_toggle":
            self.set_assurance(ev.enabled)

    def _desired_policies(self) -> dict[str, tuple[int, float]]:
        out = {}
        for sid, st in self.operating_slices().items():
            cap = max(radio.prb_cap(st.intent.tp_max_mbps, self.cell), st.placement.prb_floor)
            out[sid] = (st.placement.prb_floor, float(cap))
        return out

    def _demand(self, st: SliceState) -> float:
        # Greedy traffic by default: every slice offers tp_max until a
        # traffic_demand event overrides it.
        return self.demand_override.get(st.intent.slice_id, st.intent.tp_max_mbps)

    def _pool_views(self) -> list[PoolView]:
        per_pool: dict[str, list[PoolSlice]] = {p.id: [] for p in self.topology.pools}
        for sid, st in self.operating_slices().items():
            radio_bound = float(radio.prb_throughput(self.grants.get(sid, 0), self.cell))
            desired = min(self._demand(st), st.intent.tp_max_mbps, radio_bound)
            by_pool: dict[str, dict] = {}
            for nf in DATA_PLANE_NFS:
                by_pool.setdefault(st.placement.nf_pool(nf), {})[nf] = self.curves[nf]
            for pool_id, curves in by_pool.items():
                per_pool[pool_id].append(PoolSlice(intent=st.intent, curves=curves, desired_mbps=desired))
        views = []
        for p in self.topology.pools:
            if per_pool[p.id]:
                views.append(
                    PoolView(
                        pool_id=p.id,
                        dataplane_budget_ms=p.effective_dataplane_budget_ms,
                        slices=tuple(per_pool[p.id]),
                    )
                )
        return views

    def step(self) -> MetricsFrame:
        """Advance one tick: events, radio, assurance, then sample a frame."""
        events = self.scenario.events
        while self._event_idx < len(events) and events[self._event_idx].t_ms <= self.t_ms:
            self._apply_event(events[self._event_idx])
            self._event_idx += 1

        intents = {sid: st.intent for sid, st in self.operating_slices().items()}

        # Radio first: actuate PRB policies and water-fill the budget, so
        # quota planning sees the radio-limited desired throughput.
        desired_policies = self._desired_policies()
        for sid, pol in desired_policies.items():
            if self.policies.get(sid) != pol:
                self._log("policy", "A1", {"slice": sid, "prb_floor": pol[0], "prb_cap": pol[1]})
        self.policies = dict(desired_policies)
        alloc = radio.waterfill(self.policies, self.cell.prb_budget)
        self.grants = alloc.granted

        # Compute loop: plan quotas per pool from the radio-limited need.
        quota_outcome = assurance_tick(
            pools=self._pool_views(),
            current_quotas=self.quotas,
            current_policies=self.policies,
            desired_policies=desired_policies,
            metrics=self._last_metrics,
            intents={sid: st.intent for sid, st in self.slices.items()},
            enabled=self.assurance_enabled,
        )
        self.last_report = quota_outcome.report
        for sid, plan in quota_outcome.quota_updates.items():
            self._log(
                "resize",
                "O1",
                {"slice": sid, "cpu_quota_ms": dict(plan.cpu_ms), "target_mbps": plan.target_mbps},
            )
        for sid in list(self.quotas):
            if sid not in intents:
                del self.quotas[sid]
        self.quotas.update(quota_outcome.quota_updates)

        frame = self._sample_frame()
        self.frames.append(frame)
        self._last_metrics = {sid: (s.achieved_mbps, s.rtt_ms) for sid, s in frame.slices.items()}
        self.t_ms += TICK_MS
        return frame

    def _sample_frame(self) -> MetricsFrame:
        tick_h = TICK_MS / 3.6e6
        samples: dict[str, SliceSample] = {}
        used_by_pool: dict[str, float] = {p.id: 0.0 for p in self.topology.pools}
        tick_cost = 0.0
        for sid, st in self.operating_slices().items():
            intent, placement = st.intent, st.placement
            grant = self.grants.get(sid, Fraction(0))
            radio_bound = radio.prb_throughput(grant, self.cell)
            plan = self.quotas.get(sid)
            compute_bound = plan.target_mbps if plan else 0.0
            demand = self._demand(st)
            achieved = float(min(radio_bound, compute_bound, demand, intent.tp_max_mbps))
            quotas = dict(plan.cpu_ms) if plan else {nf: 0.0 for nf in DATA_PLANE_NFS}
            used = {
                nf: min(quotas.get(nf, 0.0), self.curves[nf].cpu_for_throughput(achieved))
                for nf in DATA_PLANE_NFS
            }
            for nf in DATA_PLANE_NFS:
                used_by_pool[placement.nf_pool(nf)] += used[nf]
                tick_cost += (
                    nf_hourly_cost(
                        self.topology.pool(placement.nf_pool(nf)), quotas.get(nf, 0.0), placement.ram_gb[nf]
                    )
                    * tick_h
                )
            tick_cost += self.topology.pool(placement.pool_upf).bw_rate * transferred_gb(achieved, tick_h)
            samples[sid] = SliceSample(
                achieved_mbps=achieved,
                rtt_ms=placement.predicted_rtt_ms,
                granted_prbs=float(grant),
                prb_floor=placement.prb_floor,
                demand_mbps=demand,
                cpu_quota_ms=quotas,
                cpu_used_ms=used,
                tp_violation_pct=violation_pct(achieved, intent.tp_min_mbps),
                delay_violated=placement.predicted_rtt_ms > intent.delay_max_ms,
                pool_cuup=placement.pool_cuup,
                pool_upf=placement.pool_upf,
                label=intent.display_name,
            )
        self.cumulative_cost += tick_cost
        utilization = {}
        for p in self.topology.pools:
            baseline = p.cpu_capacity_ms - p.effective_dataplane_budget_ms
            utilization[p.id] = (baseline + used_by_pool[p.id]) / p.cpu_capacity_ms if p.cpu_capacity_ms > 0 else 0.0
        return MetricsFrame(
            seq=len(self.frames),
            t_ms=self.t_ms,
            slices=samples,
            pool_utilization=utilization,
            cumulative_cost=self.cumulative_cost,
        )

    def run(self) -> "RunResult":
        while self.t_ms < self.scenario.horizon_ms:
            self.step()
        return RunResult(scenario=self.scenario, frames=tuple(self.frames), records=tuple(self.records))

    def snapshot(self) -> dict:
        """Comparable view of the live control state (event-sourced: the
        record log replays to exactly this)."""
        return {
            "slices": {
                sid: {
                    "lifecycle": st.lifecycle.value,
                    "intent": _intent_dict(st.intent),
                    "placement": _placement_dict(st.placement) if st.placement else None,
                }
                for sid, st in self.slices.items()
            },
            "quotas": {sid: {"cpu_quota_ms": dict(p.cpu_ms), "target_mbps": p.target_mbps} for sid, p in self.quotas.items()},
            "policies": {sid: [floor, cap] for sid, (floor, cap) in self.policies.items()},
            "demand_override": dict(self.demand_override),
            "assurance_enabled": self.assurance_enabled,
            "residual_cpu_ms": dict(self.residuals.cpu_ms),
            "residual_ram_gb": dict(self.residuals.ram_gb),
        }


def _intent_dict(intent: SliceIntent) -> dict:
    return {
        "sst": intent.sst,
        "sd": intent.sd,
        "delay_min_ms": intent.delay_min_ms,
        "delay_max_ms": intent.delay_max_ms,
        "tp_min_mbps": intent.tp_min_mbps,
        "tp_max_mbps": intent.tp_max_mbps,
        "priority": intent.priority,
        "label": intent.label,
    }


def _placement_dict(p: Placement) -> dict:
    return {
        "slice": p.slice_id,
        "pool_cuup": p.pool_cuup,
        "pool_upf": p.pool_upf,
        "cpu_quota_ms": dict(p.cpu_quota_ms),
        "ram_gb": dict(p.ram_gb),
        "prb_floor": p.prb_floor,
        "predicted_rtt_ms": p.predicted_rtt_ms,
    }


@dataclass(frozen=True)
class RunResult:
    scenario: Scenario
    frames: tuple[MetricsFrame, ...]
    records: tuple[Record, ...]

    def summary(self) -> dict:
        per_slice: dict[str, dict] = {}
        for frame in self.frames:
            for sid, s in frame.slices.items():
                agg = per_slice.setdefault(
                    sid,
                    {
                        "label": s.label,
                        "frames": 0,
                        "sum_achieved": 0.0,
                        "sum_violation": 0.0,
                        "violated_frames": 0,
                        "rtt_ms": s.rtt_ms,
                        "pool_cuup": s.pool_cuup,
                        "pool_upf": s.pool_upf,
                        "prb_floor": s.prb_floor,
                    },
                )
                agg["frames"] += 1
                agg["sum_achieved"] += s.achieved_mbps
                agg["sum_violation"] += s.tp_violation_pct
                if s.tp_violation_pct > 0 or s.delay_violated:
                    agg["violated_frames"] += 1
        slices = {}
        for sid, agg in per_slice.items():
            n = agg["frames"]
            slices[sid] = {
                "label": agg["label"],
                "frames": n,
                "mean_achieved_mbps": agg["sum_achieved"] / n,
                "mean_tp_violation_pct": agg["sum_violation"] / n,
                "violated_frames": agg["violated_frames"],
                "rtt_ms": agg["rtt_ms"],
                "pool_cuup": agg["pool_cuup"],
                "pool_upf": agg["pool_upf"],
                "prb_floor": agg["prb_floor"],
            }
        return {
            "scenario": self.scenario.name,
            "frames": len(self.frames),
            "records": len(self.records),
            "total_cost": self.frames[-1].cumulative_cost if self.frames else 0.0,
            "violations_total": sum(s["violated_frames"] for s in slices.values()),
            "slices": slices,
        }

    def frames_csv(self) -> str:
        pool_ids = sorted(p.id for p in self.scenario.topology.pools)
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(
            [
                "t_ms",
                "slice",
                "label",
                "achieved_mbps",
                "rtt_ms",
                "granted_prbs",
                "prb_floor",
                "demand_mbps",
                "cuup_quota_ms",
                "upf_quota_ms",
                "cuup_used_ms",
                "upf_used_ms",
                "tp_violation_pct",
                "delay_violated",
                "pool_cuup",
                "pool_upf",
                "cumulative_cost",
            ]
            + [f"util_{pid}" for pid in pool_ids]
        )
        for frame in self.frames:
            for sid in sorted(frame.slices):
                s = frame.slices[sid]
                writer.writerow(
                    [
                        frame.t_ms,
                        sid,
                        s.label,
                        f"{s.achieved_mbps:.6f}",
                        f"{s.rtt_ms:.3f}",
                        f"{s.granted_prbs:.6f}",
                        s.prb_floor,
                        f"{s.demand_mbps:.6f}",
                        f"{s.cpu_quota_ms.get('CU-UP', 0.0):.6f}",
                        f"{s.cpu_quota_ms.get('UPF', 0.0):.6f}",
                        f"{s.cpu_used_ms.get('CU-UP', 0.0):.6f}",
                        f"{s.cpu_used_ms.get('UPF', 0.0):.6f}",
                        f"{s.tp_violation_pct:.6f}",
                        int(s.delay_violated),
                        s.pool_cuup,
                        s.pool_upf,
                        f"{frame.cumulative_cost:.9f}",
                    ]
                    + [f"{frame.pool_utilization[pid]:.6f}" for pid in pool_ids]
                )
        return buf.getvalue()

    def frames_jsonl(self) -> str:
        return "".join(json.dumps(f.to_dict(), sort_keys=True) + "\n" for f in self.frames)

    def events_jsonl(self) -> str:
        return "".join(json.dumps(r.to_dict(), sort_keys=True) + "\n" for r in self.records)


def validate_frame(
    frame: MetricsFrame,
    intents: Mapping[str, SliceIntent],
    curves,
    cell,
    pool_budgets: Mapping[str, float],
    tol: float = 1e-9,
) -> None:
    """Independent consistency re-check of one frame against the models.

    Raises AssertionError when the frame is not internally consistent with
    the radio and compute models.
    """
    mbps_per_prb = float(cell.mbps_per_prb)
    total_grant = sum(s.granted_prbs for s in frame.slices.values())
    assert total_grant <= cell.prb_budget + tol, "granted PRBs exceed budget"
    quota_by_pool: dict[str, float] = {}
    for sid, s in frame.slices.items():
        intent = intents[sid]
        bounds = [
            s.granted_prbs * mbps_per_prb,
            min(curves[nf].throughput_for_cpu(s.cpu_quota_ms.get(nf, 0.0)) for nf in DATA_PLANE_NFS),
            s.demand_mbps,
            intent.tp_max_mbps,
        ]
        expected = min(bounds)
        assert abs(s.achieved_mbps - expected) <= max(tol, 1e-9 * max(1.0, expected)), (
            f"{sid}: achieved {s.achieved_mbps} != min(bounds) {expected}"
        )
        for nf in DATA_PLANE_NFS:
            pool = s.pool_cuup if nf == "CU-UP" else s.pool_upf
            quota_by_pool[pool] = quota_by_pool.get(pool, 0.0) + s.cpu_quota_ms.get(nf, 0.0)
    for pool, total in quota_by_pool.items():
        assert total <= pool_budgets[pool] + 1e-6, f"pool {pool}: quotas {total} exceed budget {pool_budgets[pool]}"
    for pid, util in frame.pool_utilization.items():
        assert -tol <= util <= 1.0 + 1e-9, f"pool {pid}: utilization {util} out of [0, 1]"


def run_scenario(scenario: Scenario, assurance_enabled: bool = True) -> RunResult:
    return Simulator(scenario, assurance_enabled=assurance_enabled).run()


def replay_records(scenario: Scenario, records: Iterable[dict]) -> dict:
    """Reconstruct the control-state snapshot by folding the record log,
    without re-running any decision logic."""
    slices: dict[str, SliceState] = {}
    quotas: dict[str, QuotaPlan] = {}
    policies: dict[str, tuple[int, float]] = {}
    demand: dict[str, float] = {}
    residuals = Residuals.of(scenario.topology)
    assurance_enabled = True
    for rec in sorted(records, key=lambda r: r["seq"]):
        kind, data = rec["kind"], rec["data"]
        if kind == "admit":
            intent = SliceIntent(**data["intent"])
            p = data["placement"]
            placement = Placement(
                slice_id=p["slice"],
                pool_cuup=p["pool_cuup"],
                pool_upf=p["pool_upf"],
                cpu_quota_ms=dict(p["cpu_quota_ms"]),
                ram_gb=dict(p["ram_gb"]),
                prb_floor=p["prb_floor"],
                predicted_rtt_ms=p["predicted_rtt_ms"],
            )
            slices[data["slice"]] = SliceState(
                intent=intent, lifecycle=Lifecycle.OPERATION, placement=placement
            )
            residuals.reserve(placement)
        elif kind == "decommission":
            sid = data["slice"]
            state = slices[sid]
            residuals.release(state.placement)
            slices[sid] = SliceState(intent=state.intent, lifecycle=Lifecycle.TERMINATED, placement=None)
            quotas.pop(sid, None)
            policies.pop(sid, None)
            demand.pop(sid, None)
        elif kind == "resize":
            quotas[data["slice"]] = QuotaPlan(cpu_ms=dict(data["cpu_quota_ms"]), target_mbps=data["target_mbps"])
        elif kind == "policy":
            policies[data["slice"]] = (data["prb_floor"], data["prb_cap"])
        elif kind == "traffic_demand":
            demand[data["slice"]] = data["mbps"]
        elif kind == "assurance_toggle":
            assurance_enabled = data["enabled"]
        # reject records carry no state
    return {
        "slices": {
            sid: {
                "lifecycle": st.lifecycle.value,
                "intent": _intent_dict(st.intent),
                "placement": _placement_dict(st.placement) if st.placement else None,
            }
            for sid, st in slices.items()
        },
        "quotas": {sid: {"cpu_quota_ms": dict(p.cpu_ms), "target_mbps": p.target_mbps} for sid, p in quotas.items()},
        "policies": {sid: [floor, cap] for sid, (floor, cap) in policies.items()},
        "demand_override": demand,
        "assurance_enabled": assurance_enabled,
        "residual_cpu_ms": dict(residuals.cpu_ms),
        "residual_ram_gb": dict(residuals.ram_gb),
    }
