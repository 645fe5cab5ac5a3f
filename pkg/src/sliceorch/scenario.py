"""Scenario-file ingestion and canonical serialization.

A scenario is a human-editable structured document (JSON, or YAML with the
same shape) with sections ``pools``, ``links``, ``cell``, ``nf_profiles``
and ``events``. Units are embedded in field names (``_ms``, ``_mbps``,
``_gb``). ``load_scenario`` validates every type invariant and returns a
fully-typed Scenario; ``serialize_scenario`` emits the canonical JSON form,
and the two round-trip.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Any

import yaml

from .model import (
    CellConfig,
    DcPool,
    DuplicateSliceError,
    InvariantError,
    NfProfile,
    OrchestratorError,
    SimEvent,
    SliceIntent,
    Tier,
    Topology,
)

TICK_MS = 1000  # fixed simulation tick


class ScenarioError(OrchestratorError, ValueError):
    """Schema violation in a scenario document; message names the offending path."""


@dataclass(frozen=True)
class Scenario:
    name: str
    horizon_ms: int
    topology: Topology
    cell: CellConfig
    nf_profiles: dict[str, NfProfile]
    events: tuple[SimEvent, ...]


def _get(obj: dict, key: str, path: str, expected=None):
    if not isinstance(obj, dict) or key not in obj:
        raise ScenarioError(f"{path}.{key}: required field missing")
    value = obj[key]
    if expected is not None and not isinstance(value, expected):
        kinds = expected if isinstance(expected, tuple) else (expected,)
        names = "/".join(k.__name__ for k in kinds)
        raise ScenarioError(f"{path}.{key}: expected {names}, got {type(value).__name__}")
    return value


def _num(obj: dict, key: str, path: str) -> float:
    value = _get(obj, key, path)
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ScenarioError(f"{path}.{key}: expected number, got {type(value).__name__}")
    return value


def _parse_intent(doc: dict, path: str) -> SliceIntent:
    try:
        return SliceIntent(
            sst=int(_num(doc, "sst", path)),
            sd=int(_num(doc, "sd", path)),
            delay_min_ms=_num(doc, "delay_min_ms", path),
            delay_max_ms=_num(doc, "delay_max_ms", path),
            tp_min_mbps=_num(doc, "tp_min_mbps", path),
            tp_max_mbps=_num(doc, "tp_max_mbps", path),
            priority=int(doc.get("priority", 1)),
            label=str(doc.get("label", "")),
        )
    except InvariantError as exc:
        raise ScenarioError(f"{path}: {exc}") from exc


def _parse_pool(doc: dict, path: str) -> DcPool:
    tier_name = _get(doc, "tier", path, str)
    try:
        tier = Tier(tier_name)
    except ValueError:
        raise ScenarioError(f"{path}.tier: unknown tier {tier_name!r}") from None
    budget = doc.get("dataplane_budget_ms")
    try:
        return DcPool(
            id=_get(doc, "id", path, str),
            tier=tier,
            cpu_capacity_ms=_num(doc, "cpu_capacity_ms", path),
            ram_capacity_gb=_num(doc, "ram_capacity_gb", path),
            cpu_rate=_num(doc, "cpu_rate", path),
            ram_rate=_num(doc, "ram_rate", path),
            bw_rate=_num(doc, "bw_rate", path),
            fixed_overhead_cpu_ms=_num(doc, "fixed_overhead_cpu_ms", path) if "fixed_overhead_cpu_ms" in doc else 0.0,
            dataplane_budget_ms=budget,
        )
    except InvariantError as exc:
        raise ScenarioError(f"{path}: {exc}") from exc


def _parse_event(doc: dict, path: str) -> SimEvent:
    kind = _get(doc, "kind", path, str)
    t_ms = int(_num(doc, "t_ms", path)) if "t_ms" in doc else 0
    try:
        if kind == "slice_start":
            return SimEvent(t_ms=t_ms, kind=kind, intent=_parse_intent(_get(doc, "intent", path, dict), f"{path}.intent"))
        if kind == "slice_stop":
            return SimEvent(t_ms=t_ms, kind=kind, slice_id=_get(doc, "slice", path, str))
        if kind == "traffic_demand":
            return SimEvent(t_ms=t_ms, kind=kind, slice_id=_get(doc, "slice", path, str), mbps=_num(doc, "mbps", path))
        if kind == "assurance_toggle":
            return SimEvent(t_ms=t_ms, kind=kind, enabled=bool(_get(doc, "enabled", path)))
    except InvariantError as exc:
        raise ScenarioError(f"{path}: {exc}") from exc
    raise ScenarioError(f"{path}.kind: unknown event kind {kind!r}")


def load_scenario(source: str | Path | dict) -> Scenario:
    """Parse and validate a scenario from a path, document text or dict.

    Raises ScenarioError naming the offending path on schema problems,
    InvariantError wrapped as ScenarioError on type-invariant problems, and
    DuplicateSliceError when two slice_start events share an S-NSSAI.
    """
    if isinstance(source, dict):
        doc: Any = source
    else:
        if isinstance(source, Path) or (isinstance(source, str) and "\n" not in source and Path(source).suffix):
            path = Path(source)
            if not path.exists():
                raise ScenarioError(f"scenario file not found: {path}")
            text = path.read_text()
        else:
            text = str(source)
        try:
            doc = yaml.safe_load(text)  # YAML is a JSON superset
        except yaml.YAMLError as exc:
            raise ScenarioError(f"scenario: unparseable document ({exc})") from exc
    if not isinstance(doc, dict):
        raise ScenarioError("scenario: top-level document must be a mapping")

    name = str(doc.get("name", "scenario"))
    horizon_ms = int(_num(doc, "horizon_ms", "scenario"))
    if horizon_ms <= 0:
        raise ScenarioError("scenario.horizon_ms: must be positive")

    pools_doc = _get(doc, "pools", "scenario", list)
    if not pools_doc:
        raise ScenarioError("scenario.pools: at least one pool required")
    pools = tuple(_parse_pool(p, f"scenario.pools[{i}]") for i, p in enumerate(pools_doc))

    links_doc = _get(doc, "links", "scenario", dict)
    pairs: dict[tuple[str, str], float] = {}
    for i, pair in enumerate(links_doc.get("pairs", [])):
        path = f"scenario.links.pairs[{i}]"
        a, b = _get(pair, "a", path, str), _get(pair, "b", path, str)
        if a == b:
            raise ScenarioError(f"{path}: diagonal delays are implicitly zero; drop self-pair {a!r}")
        key = (min(a, b), max(a, b))
        one_way = _num(pair, "one_way_ms", path)
        if key in pairs and pairs[key] != one_way:
            raise ScenarioError(f"{path}: conflicting delay for pair {key}")
        pairs[key] = one_way
    try:
        topology = Topology(
            pools=pools,
            link_delay_ms=pairs,
            radio_delay_ms=_num(links_doc, "radio_delay_ms", "scenario.links"),
            core_delay_ms=_num(links_doc, "core_delay_ms", "scenario.links"),
        )
    except InvariantError as exc:
        raise ScenarioError(f"scenario.links: {exc}") from exc

    cell_doc = _get(doc, "cell", "scenario", dict)
    try:
        cell = CellConfig(
            total_prbs=int(_num(cell_doc, "total_prbs", "scenario.cell")),
            prb_budget=int(_num(cell_doc, "prb_budget", "scenario.cell")),
            cell_max_mbps=_num(cell_doc, "cell_max_mbps", "scenario.cell"),
            prb_quantum=int(cell_doc.get("prb_quantum", 5)),
        )
    except InvariantError as exc:
        raise ScenarioError(f"scenario.cell: {exc}") from exc

    profiles: dict[str, NfProfile] = {}
    for i, prof in enumerate(_get(doc, "nf_profiles", "scenario", list)):
        path = f"scenario.nf_profiles[{i}]"
        nf_type = _get(prof, "nf_type", path, str)
        if nf_type in profiles:
            raise ScenarioError(f"{path}: duplicate profile for {nf_type}")
        points = []
        for j, pt in enumerate(_get(prof, "points", path, list)):
            ppath = f"{path}.points[{j}]"
            points.append((_num(pt, "throughput_mbps", ppath), _num(pt, "cpu_ms", ppath), _num(pt, "ram_mb", ppath)))
        try:
            profiles[nf_type] = NfProfile(nf_type=nf_type, points=tuple(points), shared=bool(prof.get("shared", False)))
        except InvariantError as exc:
            raise ScenarioError(f"{path}: {exc}") from exc
    for nf_type in ("CU-UP", "UPF"):
        if nf_type not in profiles:
            raise ScenarioError(f"scenario.nf_profiles: missing data-plane profile for {nf_type}")

    events = [_parse_event(e, f"scenario.events[{i}]") for i, e in enumerate(doc.get("events", []))]
    events.sort(key=lambda e: e.t_ms)  # stable: preserves insertion order at equal t
    seen: set[tuple[int, int]] = set()
    for ev in events:
        if ev.kind == "slice_start":
            key = (ev.intent.sst, ev.intent.sd)
            if key in seen:
                raise DuplicateSliceError(f"duplicate S-NSSAI (sst={key[0]}, sd={key[1]}) in scenario events")
            seen.add(key)

    return Scenario(
        name=name,
        horizon_ms=horizon_ms,
        topology=topology,
        cell=cell,
        nf_profiles=profiles,
        events=tuple(events),
    )


def scenario_to_dict(sc: Scenario) -> dict:
    """Canonical dict form (same shape the loader accepts)."""
    pairs = [
        {"a": a, "b": b, "one_way_ms": delay}
        for (a, b), delay in sorted(sc.topology.link_delay_ms.items())
    ]
    pools = []
    for p in sc.topology.pools:
        entry = {
            "id": p.id,
            "tier": p.tier.value,
            "cpu_capacity_ms": p.cpu_capacity_ms,
            "ram_capacity_gb": p.ram_capacity_gb,
            "cpu_rate": p.cpu_rate,
            "ram_rate": p.ram_rate,
            "bw_rate": p.bw_rate,
            "fixed_overhead_cpu_ms": p.fixed_overhead_cpu_ms,
        }
        if p.dataplane_budget_ms is not None:
            entry["dataplane_budget_ms"] = p.dataplane_budget_ms
        pools.append(entry)
    events = []
    for ev in sc.events:
        entry: dict[str, Any] = {"t_ms": ev.t_ms, "kind": ev.kind}
        if ev.kind == "slice_start":
            it = ev.intent
            entry["intent"] = {
                "sst": it.sst,
                "sd": it.sd,
                "delay_min_ms": it.delay_min_ms,
                "delay_max_ms": it.delay_max_ms,
                "tp_min_mbps": it.tp_min_mbps,
                "tp_max_mbps": it.tp_max_mbps,
                "priority": it.priority,
            }
            if it.label:
                entry["intent"]["label"] = it.label
        elif ev.kind == "slice_stop":
            entry["slice"] = ev.slice_id
        elif ev.kind == "traffic_demand":
            entry["slice"] = ev.slice_id
            entry["mbps"] = ev.mbps
        elif ev.kind == "assurance_toggle":
            entry["enabled"] = ev.enabled
        events.append(entry)
    return {
        "name": sc.name,
        "horizon_ms": sc.horizon_ms,
        "pools": pools,
        "links": {
            "radio_delay_ms": sc.topology.radio_delay_ms,
            "core_delay_ms": sc.topology.core_delay_ms,
            "pairs": pairs,
        },
        "cell": {
            "total_prbs": sc.cell.total_prbs,
            "prb_budget": sc.cell.prb_budget,
            "cell_max_mbps": sc.cell.cell_max_mbps,
            "prb_quantum": sc.cell.prb_quantum,
        },
        "nf_profiles": [
            {
                "nf_type": prof.nf_type,
                "shared": prof.shared,
                "points": [
                    {"throughput_mbps": tp, "cpu_ms": cpu, "ram_mb": ram} for tp, cpu, ram in prof.points
                ],
            }
            for prof in sc.nf_profiles.values()
        ],
        "events": events,
    }


def serialize_scenario(sc: Scenario) -> str:
    return json.dumps(scenario_to_dict(sc), indent=2, sort_keys=True)


def bundled_scenario_path(name: str) -> Path:
    """Path of a scenario shipped with the package (``exp1``, ``exp2``)."""
    ref = resources.files("sliceorch").joinpath("scenarios", f"{name}.json")
    with resources.as_file(ref) as path:
        if not path.exists():
            raise ScenarioError(f"no bundled scenario named {name!r}")
        return path


def load_bundled(name: str) -> Scenario:
    return load_scenario(bundled_scenario_path(name))
