"""PRB scheduling: throughput SLAs become guaranteed PRB floors, and the
cell's schedulable PRB budget is shared by max-min water-filling.

Grants are computed with exact rational arithmetic so budget conservation
holds exactly, not merely to float tolerance; floors are integer and
quantized, grants are real-valued.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Union

from .model import CellConfig, OrchestratorError

Num = Union[int, float, Fraction]


class SlaUnsatisfiable(OrchestratorError):
    """tp_min exceeds what the cell can deliver at full budget."""


class AdmissionOverflow(OrchestratorError):
    """Guaranteed floors would exceed the schedulable PRB budget."""


def _exact(x: Num) -> Fraction:
    # floats convert exactly (binary rational); ints trivially
    return x if isinstance(x, Fraction) else Fraction(x)


def quantize_up(prbs: int, quantum: int) -> int:
    if quantum <= 1:
        return prbs
    return math.ceil(prbs / quantum) * quantum


def min_prbs(tp_min_mbps: float, cell: CellConfig) -> int:
    """Guaranteed PRB floor for a throughput SLA, rounded up to the grant
    quantum. Raises SlaUnsatisfiable when the cell cannot carry tp_min."""
    if tp_min_mbps > cell.cell_max_mbps:
        raise SlaUnsatisfiable(
            f"tp_min {tp_min_mbps} Mbps exceeds cell maximum {cell.cell_max_mbps} Mbps"
        )
    if tp_min_mbps <= 0:
        return 0
    raw = math.ceil(_exact(tp_min_mbps) / cell.mbps_per_prb)
    return quantize_up(raw, cell.prb_quantum)


def prb_cap(tp_max_mbps: float, cell: CellConfig) -> int:
    """Unquantized PRB cap implied by tp_max (a slice never needs more)."""
    return math.ceil(_exact(tp_max_mbps) / cell.mbps_per_prb)


def prb_throughput(granted: Num, cell: CellConfig) -> Fraction:
    """Mbit/s carried by a (possibly fractional) PRB grant."""
    if granted < 0:
        raise ValueError("granted PRBs must be nonnegative")
    return _exact(granted) * cell.mbps_per_prb


@dataclass(frozen=True)
class PrbAllocation:
    """Result of one water-fill: per-slice floor, grant and cap."""

    floors: dict[str, int]
    caps: dict[str, Fraction]
    granted: dict[str, Fraction]
    budget: int

    def __post_init__(self):
        for sid, g in self.granted.items():
            assert self.floors[sid] <= g <= self.caps[sid], f"grant out of band for {sid}"
        assert sum(self.granted.values()) <= self.budget


def waterfill(entries: Mapping[str, tuple[int, Num]], budget: int) -> PrbAllocation:
    """Max-min share of ``budget`` PRBs among slices with (floor, cap) bands.

    Every slice starts at its floor; the lowest grants are then raised
    uniformly (never past a cap) until the budget is exhausted or everyone
    is capped. Equivalently: grant_i = clamp(L, floor_i, cap_i) with the
    water level L chosen so the grants sum to the budget.
    """
    floors = {sid: int(f) for sid, (f, _) in entries.items()}
    caps: dict[str, Fraction] = {}
    for sid, (f, c) in entries.items():
        cap = _exact(c)
        caps[sid] = max(cap, Fraction(int(f)))  # a guaranteed floor always fits inside the band
    total_floor = sum(floors.values())
    if total_floor > budget:
        raise AdmissionOverflow(
            f"sum of PRB floors {total_floor} exceeds budget {budget}; new slice must be rejected"
        )
    if not entries:
        return PrbAllocation(floors={}, caps={}, granted={}, budget=budget)

    total_cap = sum(caps.values())
    if total_cap <= budget:
        granted = dict(caps)
        return PrbAllocation(floors=floors, caps=caps, granted=granted, budget=budget)

    # Walk candidate water levels (all floors and caps); between consecutive
    # candidates the total grant is linear in L, so solve on that segment.
    levels = sorted({Fraction(f) for f in floors.values()} | set(caps.values()))

    def total_at(level: Fraction) -> Fraction:
        return sum(min(caps[s], max(Fraction(floors[s]), level)) for s in entries)

    level = levels[0]
    for candidate in levels:
        if total_at(candidate) >= budget:
            break
        level = candidate

    lo_total = total_at(level)
    if lo_total < budget:
        # Active slices on the crossing segment: floor at or below the
        # level, cap above it. total(L) = others + len(active) * L there.
        active = [s for s in entries if Fraction(floors[s]) <= level and caps[s] > level]
        others = lo_total - len(active) * level
        level = (budget - others) / len(active)

    granted = {s: min(caps[s], max(Fraction(floors[s]), level)) for s in entries}
    return PrbAllocation(floors=floors, caps=caps, granted=granted, budget=budget)
