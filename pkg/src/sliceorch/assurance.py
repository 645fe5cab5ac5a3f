"""SLA assurance: violation detection from metrics, and CPU-quota
management for the data-plane NFs sharing a pool.

Quota policy per pool and tick:

* uncontended (every slice's current need fits the data-plane budget):
  work-conserving quotas sized to each slice's current need;
* contended, assurance on: the budget is divided in proportion to
  ``priority x tp_min``, each slice capped at the quota its tp_min needs,
  with capped slices' surplus redistributed to the rest;
* contended, assurance off: the budget is split equally across all
  data-plane NF instances, modeling unmanaged OS fair-share.

Proportionality is applied to the CPU budget (the contended resource) and
each slice's share is split across its NFs so both sustain the same
throughput; the throughput a share buys therefore also reflects how
efficiently the slice's curves convert CPU to bits.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .compute import CpuThroughputCurve, combined_cpu_for_throughput, combined_throughput_for_cpu
from .model import SliceIntent, UnknownSliceError


@dataclass(frozen=True)
class SlaEntry:
    achieved_mbps: float
    rtt_ms: float
    tp_violation_pct: float
    delay_violated: bool


@dataclass(frozen=True)
class SlaReport:
    entries: dict[str, SlaEntry]

    @property
    def any_violation(self) -> bool:
        return any(e.tp_violation_pct > 0 or e.delay_violated for e in self.entries.values())


def violation_pct(achieved_mbps: float, tp_min_mbps: float) -> float:
    if tp_min_mbps <= 0:
        return 0.0
    return max(0.0, 1.0 - achieved_mbps / tp_min_mbps) * 100.0


def detect(
    metrics: Mapping[str, tuple[float, float]], intents: Mapping[str, SliceIntent]
) -> SlaReport:
    """Build an SLA report from per-slice (achieved_mbps, rtt_ms) samples."""
    entries = {}
    for slice_id, (achieved, rtt_ms) in metrics.items():
        intent = intents.get(slice_id)
        if intent is None:
            raise UnknownSliceError(slice_id)
        entries[slice_id] = SlaEntry(
            achieved_mbps=achieved,
            rtt_ms=rtt_ms,
            tp_violation_pct=violation_pct(achieved, intent.tp_min_mbps),
            delay_violated=rtt_ms > intent.delay_max_ms,
        )
    return SlaReport(entries=entries)


@dataclass(frozen=True)
class QuotaPlan:
    """Actuated CPU quotas for one slice's NFs plus the throughput target
    they were sized for."""

    cpu_ms: dict[str, float]
    target_mbps: float

    @property
    def total_ms(self) -> float:
        return sum(self.cpu_ms.values())


PoolSliceEntry = tuple[SliceIntent, Mapping[str, CpuThroughputCurve]]


def _weight(intent: SliceIntent) -> float:
    return intent.priority * intent.tp_min_mbps


def _plan_for_target(curves: Mapping[str, CpuThroughputCurve], target: float) -> QuotaPlan:
    return QuotaPlan(
        cpu_ms={nf: c.cpu_for_throughput(target) for nf, c in curves.items()},
        target_mbps=target,
    )


def rebalance(slices: Sequence[PoolSliceEntry], dataplane_budget_ms: float) -> dict[str, QuotaPlan]:
    """Divide a pool's data-plane CPU budget to minimize priority-weighted
    throughput shortfall.

    Shares are proportional to priority x tp_min and capped at the quota
    needed for tp_min; surplus from capped slices is redistributed among
    the rest until no cap binds. With an ample budget everyone lands
    exactly on tp_min and the remainder stays unallocated.
    """
    if dataplane_budget_ms < 0:
        raise ValueError("budget must be nonnegative")
    plans: dict[str, QuotaPlan] = {}
    open_set = {intent.slice_id: (intent, curves) for intent, curves in slices}
    budget = dataplane_budget_ms
    while open_set:
        total_weight = sum(_weight(intent) for intent, _ in open_set.values())
        if total_weight == 0:
            for sid, (intent, curves) in open_set.items():
                plans[sid] = _plan_for_target(curves, intent.tp_min_mbps)
            break
        capped: list[str] = []
        tentative: dict[str, QuotaPlan] = {}
        for sid, (intent, curves) in open_set.items():
            share = _weight(intent) / total_weight * budget
            reachable = combined_throughput_for_cpu(list(curves.values()), share)
            if reachable >= intent.tp_min_mbps:
                capped.append(sid)
            else:
                tentative[sid] = QuotaPlan(
                    cpu_ms=_split_share(curves, share, reachable),
                    target_mbps=reachable,
                )
        if not capped:
            plans.update(tentative)
            break
        for sid in capped:
            intent, curves = open_set.pop(sid)
            plan = _plan_for_target(curves, intent.tp_min_mbps)
            plans[sid] = plan
            budget -= plan.total_ms
    return plans


def _split_share(curves: Mapping[str, CpuThroughputCurve], share_ms: float, target: float) -> dict[str, float]:
    # Size each NF for the common target; hand any sub-ms slack from the
    # piecewise inversion to no one (it cannot raise throughput anyway).
    quotas = {nf: c.cpu_for_throughput(target) for nf, c in curves.items()}
    overrun = sum(quotas.values()) - share_ms
    if overrun > 1e-9:
        # float drift guard: never exceed the granted share
        scale = share_ms / sum(quotas.values()) if sum(quotas.values()) > 0 else 0.0
        quotas = {nf: q * scale for nf, q in quotas.items()}
    return quotas


def fair_share_baseline(slices: Sequence[PoolSliceEntry], dataplane_budget_ms: float) -> dict[str, QuotaPlan]:
    """Unmanaged baseline: the budget splits equally among every data-plane
    NF instance in the pool, regardless of need or priority."""
    if dataplane_budget_ms < 0:
        raise ValueError("budget must be nonnegative")
    instances = sum(len(curves) for _, curves in slices)
    if instances == 0:
        return {}
    share = dataplane_budget_ms / instances
    plans = {}
    for intent, curves in slices:
        plans[intent.slice_id] = QuotaPlan(
            cpu_ms={nf: share for nf in curves},
            target_mbps=min(c.throughput_for_cpu(share) for c in curves.values()),
        )
    return plans


@dataclass(frozen=True)
class PoolSlice:
    intent: SliceIntent
    curves: Mapping[str, CpuThroughputCurve]  # this slice's NFs hosted in the pool
    desired_mbps: float  # demand- and radio-limited throughput the slice could use now


@dataclass(frozen=True)
class PoolView:
    pool_id: str
    dataplane_budget_ms: float
    slices: tuple[PoolSlice, ...]


def plan_pool_quotas(view: PoolView, enabled: bool) -> dict[str, QuotaPlan]:
    """Per-slice quota plans for one pool under the policy above."""
    needed = {
        ps.intent.slice_id: combined_cpu_for_throughput(list(ps.curves.values()), ps.desired_mbps)
        for ps in view.slices
    }
    if sum(needed.values()) <= view.dataplane_budget_ms:
        return {
            ps.intent.slice_id: QuotaPlan(
                cpu_ms={nf: c.cpu_for_throughput(ps.desired_mbps) for nf, c in ps.curves.items()},
                target_mbps=ps.desired_mbps,
            )
            for ps in view.slices
        }
    entries = [(ps.intent, ps.curves) for ps in view.slices]
    if enabled:
        return rebalance(entries, view.dataplane_budget_ms)
    return fair_share_baseline(entries, view.dataplane_budget_ms)


@dataclass(frozen=True)
class AssuranceOutcome:
    quota_updates: dict[str, QuotaPlan]  # only slices whose plan changed
    policy_updates: dict[str, tuple[int, float]]  # slice -> (floor, cap) changes
    report: SlaReport


def assurance_tick(
    pools: Sequence[PoolView],
    current_quotas: Mapping[str, QuotaPlan],
    current_policies: Mapping[str, tuple[int, float]],
    desired_policies: Mapping[str, tuple[int, float]],
    metrics: Mapping[str, tuple[float, float]],
    intents: Mapping[str, SliceIntent],
    enabled: bool,
) -> AssuranceOutcome:
    """One control-loop pass: detect violations, re-plan quotas for every
    pool, and diff quota/PRB-policy state so unchanged state issues no
    updates (the loop is idempotent)."""
    report = detect(metrics, intents)

    merged: dict[str, QuotaPlan] = {}
    for view in pools:
        for sid, plan in plan_pool_quotas(view, enabled).items():
            prev = merged.get(sid)
            if prev is None:
                merged[sid] = plan
            else:  # slice split across pools: union quotas, weakest target wins
                merged[sid] = QuotaPlan(
                    cpu_ms={**prev.cpu_ms, **plan.cpu_ms},
                    target_mbps=min(prev.target_mbps, plan.target_mbps),
                )

    quota_updates = {sid: plan for sid, plan in merged.items() if current_quotas.get(sid) != plan}
    policy_updates = {
        sid: pol for sid, pol in desired_policies.items() if current_policies.get(sid) != pol
    }
    return AssuranceOutcome(quota_updates=quota_updates, policy_updates=policy_updates, report=report)
