"""Translate a slice intent into the cost-minimal, delay- and
capacity-feasible placement of its CU-UP and UPF across DC pools.

Control-plane NFs (CU-CP, AMF, SMF) and the DU are statically pinned and
excluded from the search; only the two per-slice data-plane NFs move.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional

from . import radio
from .compute import CpuThroughputCurve, accrue_cost, slice_cpu_demand
from .model import CellConfig, OrchestratorError, Placement, SliceIntent, Topology

PLANNING_HORIZON_H = 24.0  # placements are compared on daily cost


class NoFeasiblePlacement(OrchestratorError):
    """No pool pair satisfies the delay bound within residual capacity."""


def rtt(pool_cuup: str, pool_upf: str, topology: Topology) -> float:
    """Predicted round-trip time for a data path through the given pools.

    One-way path: UE -> DU (radio leg) -> CU-UP pool -> UPF pool -> data
    network (core leg); the DU is pinned at the Edge pool.
    """
    du = topology.du_pool.id
    one_way = (
        topology.radio_delay_ms
        + topology.link_delay(du, pool_cuup)
        + topology.link_delay(pool_cuup, pool_upf)
        + topology.core_delay_ms
    )
    return 2.0 * one_way


@dataclass
class Residuals:
    """Unreserved CPU/RAM per pool, tracked as slices are admitted."""

    cpu_ms: dict[str, float]
    ram_gb: dict[str, float]

    @classmethod
    def of(cls, topology: Topology) -> "Residuals":
        return cls(
            cpu_ms={p.id: p.cpu_capacity_ms for p in topology.pools},
            ram_gb={p.id: p.ram_capacity_gb for p in topology.pools},
        )

    def copy(self) -> "Residuals":
        return Residuals(cpu_ms=dict(self.cpu_ms), ram_gb=dict(self.ram_gb))

    def reserve(self, placement: Placement) -> None:
        for nf, quota in placement.cpu_quota_ms.items():
            self.cpu_ms[placement.nf_pool(nf)] -= quota
        for nf, ram in placement.ram_gb.items():
            self.ram_gb[placement.nf_pool(nf)] -= ram

    def release(self, placement: Placement) -> None:
        for nf, quota in placement.cpu_quota_ms.items():
            self.cpu_ms[placement.nf_pool(nf)] += quota
        for nf, ram in placement.ram_gb.items():
            self.ram_gb[placement.nf_pool(nf)] += ram


def _demands(intent: SliceIntent, curves, ram_demand: Mapping[str, float]):
    cpu = slice_cpu_demand(curves, intent.tp_min_mbps)
    ram = {nf: ram_demand[nf] for nf in cpu}
    return cpu, ram


def _pair_fits(pair: tuple[str, str], cpu, ram, residuals: Residuals) -> bool:
    need_cpu: dict[str, float] = {}
    need_ram: dict[str, float] = {}
    for nf, pool in zip(("CU-UP", "UPF"), pair):
        need_cpu[pool] = need_cpu.get(pool, 0.0) + cpu[nf]
        need_ram[pool] = need_ram.get(pool, 0.0) + ram[nf]
    return all(need_cpu[p] <= residuals.cpu_ms[p] for p in need_cpu) and all(
        need_ram[p] <= residuals.ram_gb[p] for p in need_ram
    )


def feasible_placements(
    intent: SliceIntent,
    topology: Topology,
    residuals: Residuals,
    curves: Mapping[str, CpuThroughputCurve],
    ram_demand: Mapping[str, float],
) -> set[tuple[str, str]]:
    """All (CU-UP pool, UPF pool) pairs meeting the RTT bound whose pools
    still have room for the slice's tp_min CPU/RAM demand."""
    cpu, ram = _demands(intent, curves, ram_demand)
    out = set()
    for a in topology.pools:
        for b in topology.pools:
            pair = (a.id, b.id)
            if rtt(a.id, b.id, topology) > intent.delay_max_ms:
                continue
            if _pair_fits(pair, cpu, ram, residuals):
                out.add(pair)
    return out


def placement_daily_cost(
    intent: SliceIntent,
    pair: tuple[str, str],
    topology: Topology,
    curves: Mapping[str, CpuThroughputCurve],
    ram_demand: Mapping[str, float],
) -> float:
    """Daily rental cost of a pair at steady tp_min load (the objective)."""
    cpu, ram = _demands(intent, curves, ram_demand)
    allocations = [
        (topology.pool(pair[0]), cpu["CU-UP"], ram["CU-UP"]),
        (topology.pool(pair[1]), cpu["UPF"], ram["UPF"]),
    ]
    return accrue_cost(allocations, intent.tp_min_mbps, PLANNING_HORIZON_H, topology.pool(pair[1]))


def _decision_key(cost: float, pair: tuple[str, str]):
    # Deterministic total order: cost, then co-located pairs, then ids.
    return (cost, 0 if pair[0] == pair[1] else 1, pair[0], pair[1])


def _build(intent, pair, topology, curves, ram_demand, cell: CellConfig) -> Placement:
    cpu, ram = _demands(intent, curves, ram_demand)
    return Placement(
        slice_id=intent.slice_id,
        pool_cuup=pair[0],
        pool_upf=pair[1],
        cpu_quota_ms=cpu,
        ram_gb=ram,
        prb_floor=radio.min_prbs(intent.tp_min_mbps, cell),
        predicted_rtt_ms=rtt(pair[0], pair[1], topology),
    )


def place_slice(
    intent: SliceIntent,
    topology: Topology,
    residuals: Residuals,
    curves: Mapping[str, CpuThroughputCurve],
    ram_demand: Mapping[str, float],
    cell: CellConfig,
) -> Placement:
    """Cheapest feasible placement for the intent (does not mutate residuals).

    Raises NoFeasiblePlacement when the feasible set is empty, signalling
    that admission must be rejected.
    """
    candidates = feasible_placements(intent, topology, residuals, curves, ram_demand)
    if not candidates:
        raise NoFeasiblePlacement(
            f"slice {intent.slice_id}: no pool pair satisfies rtt <= {intent.delay_max_ms} ms "
            f"within residual capacity"
        )
    best = min(
        candidates,
        key=lambda pair: _decision_key(placement_daily_cost(intent, pair, topology, curves, ram_demand), pair),
    )
    return _build(intent, best, topology, curves, ram_demand, cell)


def brute_force_place(
    intent: SliceIntent,
    topology: Topology,
    residuals: Residuals,
    curves: Mapping[str, CpuThroughputCurve],
    ram_demand: Mapping[str, float],
    cell: CellConfig,
) -> Placement:
    """Test oracle: exhaustive enumeration with inline feasibility checks,
    same contract and tie-break as place_slice."""
    cpu = {nf: curves[nf].cpu_for_throughput(intent.tp_min_mbps) for nf in ("CU-UP", "UPF")}
    ram = {nf: ram_demand[nf] for nf in ("CU-UP", "UPF")}
    du = topology.du_pool.id
    best_pair: Optional[tuple[str, str]] = None
    best_key = None
    for a in topology.pools:
        for b in topology.pools:
            round_trip = 2.0 * (
                topology.radio_delay_ms
                + topology.link_delay(du, a.id)
                + topology.link_delay(a.id, b.id)
                + topology.core_delay_ms
            )
            if round_trip > intent.delay_max_ms:
                continue
            if a.id == b.id:
                if cpu["CU-UP"] + cpu["UPF"] > residuals.cpu_ms[a.id]:
                    continue
                if ram["CU-UP"] + ram["UPF"] > residuals.ram_gb[a.id]:
                    continue
            else:
                if cpu["CU-UP"] > residuals.cpu_ms[a.id] or cpu["UPF"] > residuals.cpu_ms[b.id]:
                    continue
                if ram["CU-UP"] > residuals.ram_gb[a.id] or ram["UPF"] > residuals.ram_gb[b.id]:
                    continue
            cost = accrue_cost(
                [(a, cpu["CU-UP"], ram["CU-UP"]), (b, cpu["UPF"], ram["UPF"])],
                intent.tp_min_mbps,
                PLANNING_HORIZON_H,
                b,
            )
            key = _decision_key(cost, (a.id, b.id))
            if best_key is None or key < best_key:
                best_key = key
                best_pair = (a.id, b.id)
    if best_pair is None:
        raise NoFeasiblePlacement(f"slice {intent.slice_id}: exhaustive search found no feasible pair")
    return _build(intent, best_pair, topology, curves, ram_demand, cell)
