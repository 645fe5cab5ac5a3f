"""CPU-quota <-> achievable-throughput model for data-plane NFs, plus
pay-as-you-go rental-cost accounting.

The curve is piecewise linear through the measured profile points (so every
measurement is reproduced exactly) and extrapolates beyond the last point
with the final segment's slope.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .model import DATA_PLANE_NFS, DcPool, NfProfile


@dataclass(frozen=True)
class CpuThroughputCurve:
    """Monotone piecewise-linear map between CPU quota (ms) and Mbit/s."""

    nf_type: str
    breakpoints: tuple[tuple[float, float], ...]  # (cpu_ms, mbps), sorted by cpu

    @classmethod
    def from_profile(cls, profile: NfProfile) -> "CpuThroughputCurve":
        pts = sorted(((cpu, tp) for tp, cpu, _ in profile.points), key=lambda p: p[0])
        if pts[0][0] > 0:
            # Anchor at the origin so quotas below the first measurement
            # degrade linearly instead of being undefined.
            pts.insert(0, (0.0, 0.0))
        return cls(nf_type=profile.nf_type, breakpoints=tuple(pts))

    @classmethod
    def from_points(cls, nf_type: str, breakpoints: Iterable[tuple[float, float]]) -> "CpuThroughputCurve":
        return cls(nf_type=nf_type, breakpoints=tuple(sorted(breakpoints)))

    @property
    def _cpus(self) -> list[float]:
        return [c for c, _ in self.breakpoints]

    def throughput_for_cpu(self, quota_ms: float) -> float:
        """Achievable Mbit/s at the given CPU quota (total on quota >= 0)."""
        if quota_ms < 0:
            raise ValueError("quota must be nonnegative")
        pts = self.breakpoints
        idx = bisect_right(self._cpus, quota_ms)
        if idx > 0 and pts[idx - 1][0] == quota_ms:
            return pts[idx - 1][1]  # exact breakpoint hit, no rounding
        if idx == 0:
            return pts[0][1]
        lo = pts[idx - 1]
        hi = pts[idx] if idx < len(pts) else None
        if hi is None:
            if len(pts) == 1:
                return lo[1]
            prev = pts[-2]
            slope = (pts[-1][1] - prev[1]) / (pts[-1][0] - prev[0]) if pts[-1][0] > prev[0] else 0.0
            return lo[1] + (quota_ms - lo[0]) * slope
        if hi[0] == lo[0]:
            return hi[1]
        return lo[1] + (quota_ms - lo[0]) * (hi[1] - lo[1]) / (hi[0] - lo[0])

    def cpu_for_throughput(self, mbps: float) -> float:
        """Smallest CPU quota achieving the target throughput (inverse map)."""
        if mbps < 0:
            raise ValueError("throughput must be nonnegative")
        pts = self.breakpoints
        for cpu, tp in pts:
            if tp == mbps:
                return cpu
        if mbps < pts[0][1]:
            return pts[0][0]
        for (c0, t0), (c1, t1) in zip(pts, pts[1:]):
            if t0 < mbps <= t1:
                if t1 == t0:
                    return c0
                return c0 + (mbps - t0) * (c1 - c0) / (t1 - t0)
        # beyond the last point: invert the extrapolation slope
        if len(pts) < 2:
            raise ValueError(f"{self.nf_type}: cannot extrapolate a single-point curve to {mbps} Mbps")
        (c0, t0), (c1, t1) = pts[-2], pts[-1]
        slope = (t1 - t0) / (c1 - c0) if c1 > c0 else 0.0
        if slope <= 0:
            raise ValueError(f"{self.nf_type}: throughput {mbps} Mbps unreachable (flat curve tail)")
        return c1 + (mbps - t1) / slope


def build_curves(profiles: Mapping[str, NfProfile]) -> dict[str, CpuThroughputCurve]:
    return {nf: CpuThroughputCurve.from_profile(profiles[nf]) for nf in DATA_PLANE_NFS if nf in profiles}


def slice_cpu_demand(curves: Mapping[str, CpuThroughputCurve], tp_mbps: float) -> dict[str, float]:
    """Per-NF CPU quota needed for one slice to carry ``tp_mbps``."""
    return {nf: curves[nf].cpu_for_throughput(tp_mbps) for nf in DATA_PLANE_NFS}


def combined_cpu_for_throughput(curves: Sequence[CpuThroughputCurve], mbps: float) -> float:
    """Total CPU across a slice's NFs needed to carry ``mbps``."""
    return sum(c.cpu_for_throughput(mbps) for c in curves)


def combined_throughput_for_cpu(curves: Sequence[CpuThroughputCurve], total_ms: float) -> float:
    """Best throughput a slice reaches when ``total_ms`` is split optimally
    across its NFs (each NF sized exactly for the common throughput)."""
    if total_ms < 0:
        raise ValueError("budget must be nonnegative")
    knots = sorted({tp for c in curves for _, tp in c.breakpoints})
    combined = [(combined_cpu_for_throughput(curves, tp), tp) for tp in knots]
    merged = CpuThroughputCurve.from_points("combined", combined)
    return merged.throughput_for_cpu(total_ms)


def nf_hourly_cost(pool: DcPool, cpu_quota_ms: float, ram_gb: float) -> float:
    """Rental rate for one NF: CPU is billed per 100 ms-per-second reserved."""
    return cpu_quota_ms / 100.0 * pool.cpu_rate + ram_gb * pool.ram_rate


def transferred_gb(mbps: float, hours: float) -> float:
    return mbps * hours * 3600.0 / 8.0 / 1000.0


def accrue_cost(
    nf_allocations: Iterable[tuple[DcPool, float, float]],
    achieved_mbps: float,
    duration_h: float,
    bw_pool: DcPool,
) -> float:
    """Pay-as-you-go cost over ``duration_h`` hours.

    ``nf_allocations`` holds (pool, cpu_quota_ms, ram_gb) per NF; bandwidth
    is billed on the transferred volume of the achieved throughput at the
    pool terminating the data path (the UPF's pool).
    """
    if duration_h <= 0:
        raise ValueError("duration must be positive")
    compute = sum(nf_hourly_cost(pool, cpu, ram) for pool, cpu, ram in nf_allocations)
    return compute * duration_h + bw_pool.bw_rate * transferred_gb(achieved_mbps, duration_h)
