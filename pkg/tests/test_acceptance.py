"""Acceptance suite: every criterion below is exercised at its stated
tolerance and reports one ACCEPTANCE <name>: PASS/FAIL line (run with -s,
or see captured output on failure)."""

import statistics
import subprocess
import sys
import time
from contextlib import contextmanager
from random import Random

import sliceorch as so
from randgen import (
    check_placement_agreement,
    check_waterfill_properties,
    random_placement_instance,
    random_waterfill_instance,
)


@contextmanager
def criterion(name):
    try:
        yield
    except BaseException:
        print(f"ACCEPTANCE {name}: FAIL")
        raise
    print(f"ACCEPTANCE {name}: PASS")


def stage_mean(frames, label, t_lo_ms, t_hi_ms):
    values = [
        f.slices[sid].achieved_mbps
        for f in frames
        if t_lo_ms <= f.t_ms < t_hi_ms
        for sid in f.slices
        if f.slices[sid].label == label
    ]
    return statistics.fmean(values)


def test_placement_reproduction_table3(exp1):
    with criterion("placement-reproduction"):
        start = time.perf_counter()
        result = so.run_scenario(exp1)
        elapsed = time.perf_counter() - start
        assert elapsed < 1.0, f"exp1 run took {elapsed:.2f}s"
        admits = {r.data["intent"]["label"]: r.data["placement"] for r in result.records if r.kind == "admit"}
        assert [admits[s]["pool_cuup"] for s in ("S1", "S2", "S3", "S4")] == [
            "central", "regional", "edge", "edge",
        ]
        assert [admits[s]["pool_upf"] for s in ("S1", "S2", "S3", "S4")] == [
            "central", "regional", "edge", "edge",
        ]
        assert [admits[s]["prb_floor"] for s in ("S1", "S2", "S3", "S4")] == [30, 30, 15, 20]


def test_prb_floor_formula(exp1):
    with criterion("prb-floor-formula"):
        cell = exp1.cell
        assert cell.prb_budget == 100 and cell.prb_quantum == 5
        published = [
            (70, 30), (70, 30), (30, 15), (45, 20),  # deployment experiment
            (25, 10), (25, 10), (30, 15), (45, 20), (90, 40),  # reconfiguration experiment
        ]
        for tp_min, floor in published:
            assert so.min_prbs(tp_min, cell) == floor


def test_exp1_throughput_stages(exp1_result):
    with criterion("exp1-throughput-stages"):
        frames = exp1_result.frames
        # testbed-reported plateau levels per stage, ±10 %
        stages = [
            (45_000, 75_000, {"S1": 250}),
            (120_000, 150_000, {"S1": 125, "S2": 125}),
            (195_000, 225_000, {"S1": 80, "S2": 80, "S3": 80}),
            (270_000, 300_000, {"S1": 80, "S2": 80, "S3": 50, "S4": 50}),
        ]
        for lo, hi, expected in stages:
            for label, level in expected.items():
                mean = stage_mean(frames, label, lo, hi)
                assert abs(mean - level) <= 0.10 * level, (label, lo, mean, level)
        # throughput SLA satisfied at every sample
        for frame in frames:
            for s in frame.slices.values():
                assert s.tp_violation_pct == 0.0, (frame.t_ms, s.label)


def test_exp1_rtt_within_bands(exp1, exp1_result):
    with criterion("exp1-rtt-bands"):
        bands = {
            e.intent.label: (e.intent.delay_min_ms, e.intent.delay_max_ms)
            for e in exp1.events
            if e.kind == "slice_start"
        }
        seen = set()
        for frame in exp1_result.frames:
            for s in frame.slices.values():
                lo, hi = bands[s.label]
                assert lo <= s.rtt_ms <= hi, (s.label, s.rtt_ms)
                seen.add((s.label, s.rtt_ms))
        assert {r for _, r in seen} == {20.0, 60.0, 80.0}


def test_compute_model_exactness(exp1, curves):
    with criterion("compute-model-exactness"):
        checked = 0
        for nf in ("CU-UP", "UPF"):
            for tp, cpu, _ in exp1.nf_profiles[nf].points:
                got = curves[nf].throughput_for_cpu(cpu)
                assert abs(got - tp) <= 1e-9 * max(1.0, abs(tp)), (nf, cpu, got, tp)
                checked += 1
        assert checked == 6


def test_exp2_baseline(exp2_baseline_result):
    with criterion("exp2-baseline"):
        frames = exp2_baseline_result.frames
        s5_tail = [
            s.achieved_mbps
            for f in frames
            if f.t_ms >= 250_000
            for s in f.slices.values()
            if s.label == "S5"
        ]
        mean = statistics.fmean(s5_tail)
        assert abs(mean - 29.3) <= 5.0, mean
        violation = 100 * (1 - mean / 90)
        assert abs(violation - 67.0) <= 7.0, violation


def test_exp2_with_assurance(exp2_result):
    with criterion("exp2-assurance"):
        frames = exp2_result.frames
        tails = {
            label: statistics.fmean(
                s.achieved_mbps
                for f in frames
                if f.t_ms >= 250_000
                for s in f.slices.values()
                if s.label == label
            )
            for label in ("S3", "S4", "S5")
        }
        for label, reported in (("S3", 15.0), ("S4", 25.0), ("S5", 65.0)):
            assert abs(tails[label] - reported) <= 8.0, (label, tails[label])
        v = {label: 100 * (1 - tails[label] / tp_min) for label, tp_min in (("S3", 30), ("S4", 45), ("S5", 90))}
        assert v["S5"] < v["S4"] < v["S3"], v


def test_placement_oracle_equivalence(curves, ram_demand):
    with criterion("placement-oracle-equivalence"):
        rng = Random(20240601)
        for _ in range(1000):
            intent, topo, res, cell = random_placement_instance(rng, curves, ram_demand)
            check_placement_agreement(intent, topo, res, cell, curves, ram_demand)


def test_scheduler_property_suite():
    with criterion("scheduler-properties"):
        rng = Random(987654321)
        for _ in range(10_000):
            entries, budget = random_waterfill_instance(rng)
            check_waterfill_properties(entries, budget)


def test_run_determinism(tmp_path):
    with criterion("run-determinism"):
        outputs = []
        for name in ("a", "b"):
            out = tmp_path / name
            proc = subprocess.run(
                [sys.executable, "-m", "sliceorch.cli", "run", "exp1", "--out", str(out)],
                capture_output=True,
                text=True,
            )
            assert proc.returncode == 0, proc.stderr
            outputs.append((out / "frames.csv").read_bytes())
        assert outputs[0] == outputs[1], "frames.csv differs between identical runs"
        assert len(outputs[0]) > 10_000


def test_cost_model_substitute(exp1):
    # The deployment table's daily-dollar column is not derivable from the
    # published rates; the substituted check is the tier-ordering property
    # plus exact agreement of accrue_cost with its closed form.
    with criterion("cost-substituted-property"):
        pools = {p.id: p for p in exp1.topology.pools}
        rng = Random(13)
        for _ in range(100):
            quota = rng.uniform(0.01, 500)
            ram = rng.uniform(0.0001, 2)
            traffic = rng.uniform(0.01, 250)
            hours = rng.uniform(0.01, 72)
            costs = {}
            for pid, pool in pools.items():
                got = so.accrue_cost([(pool, quota, ram)], traffic, hours, pool)
                closed_form = (
                    quota / 100 * pool.cpu_rate + ram * pool.ram_rate
                ) * hours + pool.bw_rate * (traffic * hours * 3600 / 8 / 1000)
                assert abs(got - closed_form) <= 1e-9 * max(1.0, abs(closed_form))
                costs[pid] = got
            assert costs["edge"] > costs["regional"] > costs["central"]
