from fractions import Fraction
from random import Random

import pytest

import sliceorch as so
from sliceorch.assurance import PoolSlice, PoolView, plan_pool_quotas


def mk_intent(sd, tp_min, priority, tp_max=250):
    return so.SliceIntent(
        sst=1, sd=sd, delay_min_ms=10, delay_max_ms=50,
        tp_min_mbps=tp_min, tp_max_mbps=tp_max, priority=priority,
    )


@pytest.fixture(scope="module")
def edge_slices(curves):
    # the three data-plane slices contending for the overloaded pool
    return [
        (mk_intent(3, 30, 2), curves),
        (mk_intent(4, 45, 2), curves),
        (mk_intent(5, 90, 3), curves),
    ]


def combined_cpu_oracle(x):
    """Exact CPU for one slice (CU-UP + UPF) at throughput x, from the
    measured segments: 2.4 ms/Mbps below 20 Mbps, then 48 + (x-20)*503/230."""
    x = Fraction(x)
    if x <= 20:
        return Fraction(12, 5) * x
    return 48 + (x - 20) * Fraction(503, 230)


def combined_tput_oracle(q):
    q = Fraction(q)
    if q <= 48:
        return q / Fraction(12, 5)
    return 20 + (q - 48) * Fraction(230, 503)


class TestDetect:
    def test_severe_violation(self):
        intents = {"1-5": mk_intent(5, 90, 3)}
        report = so.detect({"1-5": (30.0, 20.0)}, intents)
        assert report.entries["1-5"].tp_violation_pct == pytest.approx(100 * (1 - 30 / 90), rel=1e-9)

    def test_met_sla(self):
        intents = {"1-5": mk_intent(5, 90, 3)}
        report = so.detect({"1-5": (90.0, 20.0)}, intents)
        assert report.entries["1-5"].tp_violation_pct == 0.0
        assert not report.entries["1-5"].delay_violated

    def test_mild_violation(self):
        intents = {"1-5": mk_intent(5, 90, 3)}
        report = so.detect({"1-5": (65.0, 20.0)}, intents)
        assert report.entries["1-5"].tp_violation_pct == pytest.approx(27.78, abs=0.01)

    def test_delay_violation(self):
        intents = {"1-3": mk_intent(3, 30, 2)}
        report = so.detect({"1-3": (30.0, 60.0)}, intents)
        assert report.entries["1-3"].delay_violated

    def test_unknown_slice(self):
        with pytest.raises(so.UnknownSliceError):
            so.detect({"9-9": (1.0, 1.0)}, {})

    def test_violation_bounded(self):
        intents = {"1-3": mk_intent(3, 30, 2)}
        report = so.detect({"1-3": (0.0, 10.0)}, intents)
        assert report.entries["1-3"].tp_violation_pct == 100.0


class TestRebalance:
    def test_overloaded_pool_targets(self, edge_slices):
        """Oracle: budget shares are priority*tp_min-proportional in CPU,
        so q = 230 * (60, 90, 270)/420 and targets invert the combined
        curve at each share. Computed exactly with Fractions."""
        plans = so.rebalance(edge_slices, 230.0)
        shares = {
            "1-3": Fraction(230) * Fraction(60, 420),
            "1-4": Fraction(230) * Fraction(90, 420),
            "1-5": Fraction(230) * Fraction(270, 420),
        }
        expected = {sid: combined_tput_oracle(q) for sid, q in shares.items()}
        assert expected["1-3"] == Fraction(575, 42)  # 13.6904…
        for sid, plan in plans.items():
            assert plan.target_mbps == pytest.approx(float(expected[sid]), rel=1e-9)
        # stays inside the reported measurement band
        assert plans["1-3"].target_mbps == pytest.approx(15, abs=8)
        assert plans["1-4"].target_mbps == pytest.approx(25, abs=8)
        assert plans["1-5"].target_mbps == pytest.approx(65, abs=8)

    def test_strict_violation_ordering(self, edge_slices):
        plans = so.rebalance(edge_slices, 230.0)
        v = {
            sid: so.assurance.violation_pct(plans[sid].target_mbps, intent.tp_min_mbps)
            for (intent, _), sid in zip(edge_slices, ["1-3", "1-4", "1-5"])
        }
        assert v["1-5"] < v["1-4"] < v["1-3"]

    def test_budget_safety(self, edge_slices):
        rng = Random(17)
        for _ in range(200):
            budget = rng.uniform(0, 800)
            plans = so.rebalance(edge_slices, budget)
            assert sum(p.total_ms for p in plans.values()) <= budget + 1e-9

    def test_ample_budget_caps_at_tp_min(self, edge_slices):
        plans = so.rebalance(edge_slices, 10_000.0)
        assert [plans[s].target_mbps for s in ("1-3", "1-4", "1-5")] == [30.0, 45.0, 90.0]
        used = sum(p.total_ms for p in plans.values())
        assert used == pytest.approx(float(sum(combined_cpu_oracle(x) for x in (30, 45, 90))), rel=1e-9)

    def test_symmetry(self, curves):
        slices = [(mk_intent(1, 40, 2), curves), (mk_intent(2, 40, 2), curves)]
        plans = so.rebalance(slices, 100.0)
        assert plans["1-1"].target_mbps == plans["1-2"].target_mbps
        assert plans["1-1"].cpu_ms == plans["1-2"].cpu_ms

    def test_quota_shares_track_weights(self, curves):
        # uncapped case: per-slice CPU totals split in weight proportion
        slices = [(mk_intent(1, 60, 1), curves), (mk_intent(2, 60, 3), curves)]
        plans = so.rebalance(slices, 150.0)
        ratio = plans["1-2"].total_ms / plans["1-1"].total_ms
        assert ratio == pytest.approx(3.0, rel=1e-6)

    def test_priority_orders_violations_at_equal_tp_min(self, curves):
        rng = Random(31)
        for _ in range(100):
            tp_min = rng.uniform(20, 120)
            p_low, p_high = sorted(rng.sample(range(1, 6), 2))
            slices = [(mk_intent(1, tp_min, p_low), curves), (mk_intent(2, tp_min, p_high), curves)]
            budget = rng.uniform(10, combined_cpu_oracle(tp_min) * 2 * 0.9)
            plans = so.rebalance(slices, float(budget))
            v_low = so.assurance.violation_pct(plans["1-1"].target_mbps, tp_min)
            v_high = so.assurance.violation_pct(plans["1-2"].target_mbps, tp_min)
            assert v_high <= v_low
            if v_high > 0 and v_low > 0:
                assert v_high < v_low

    def test_zero_budget(self, edge_slices):
        plans = so.rebalance(edge_slices, 0.0)
        assert all(p.target_mbps == 0.0 for p in plans.values())


class TestFairShareBaseline:
    def test_three_slices(self, edge_slices):
        plans = so.fair_share_baseline(edge_slices, 230.0)
        share = 230.0 / 6
        # exact oracle: UPF is the binding NF at an equal split
        expected = 20 + (Fraction(230, 6) - 27) * Fraction(230, 280)
        for plan in plans.values():
            assert plan.cpu_ms == {"CU-UP": pytest.approx(share), "UPF": pytest.approx(share)}
            assert plan.target_mbps == pytest.approx(float(expected), rel=1e-9)
        assert plans["1-5"].target_mbps == pytest.approx(29.3095, abs=1e-3)

    def test_single_slice_halves_budget(self, curves):
        plans = so.fair_share_baseline([(mk_intent(1, 30, 1), curves)], 100.0)
        assert plans["1-1"].cpu_ms == {"CU-UP": 50.0, "UPF": 50.0}

    def test_zero_budget(self, edge_slices):
        plans = so.fair_share_baseline(edge_slices, 0.0)
        assert all(p.target_mbps == 0.0 and p.total_ms == 0.0 for p in plans.values())

    def test_rebalance_dominates_for_top_weighted_slice(self, curves):
        # the slice the policy favours most (max priority*tp_min weight, as
        # the high-priority slice of the overload experiment is) never does
        # worse under rebalance than under the unmanaged split
        rng = Random(77)
        for _ in range(100):
            slices = [
                (mk_intent(i + 1, rng.uniform(10, 120), rng.randint(1, 3)), curves)
                for i in range(rng.randint(2, 5))
            ]
            top = max(slices, key=lambda s: s[0].priority * s[0].tp_min_mbps)[0]
            budget = rng.uniform(5, 400)
            managed = so.rebalance(slices, budget)
            unmanaged = so.fair_share_baseline(slices, budget)
            v_m = so.assurance.violation_pct(managed[top.slice_id].target_mbps, top.tp_min_mbps)
            v_u = so.assurance.violation_pct(unmanaged[top.slice_id].target_mbps, top.tp_min_mbps)
            assert v_m <= v_u + 1e-9


class TestPlanPoolQuotas:
    def test_uncontended_work_conserving(self, curves):
        view = PoolView(
            pool_id="edge",
            dataplane_budget_ms=230.0,
            slices=(
                PoolSlice(intent=mk_intent(3, 30, 2), curves=curves, desired_mbps=50.0),
                PoolSlice(intent=mk_intent(4, 45, 2), curves=curves, desired_mbps=50.0),
            ),
        )
        plans = plan_pool_quotas(view, enabled=True)
        assert plans["1-3"].target_mbps == 50.0
        assert plans["1-4"].target_mbps == 50.0
        assert sum(p.total_ms for p in plans.values()) <= 230.0

    def test_contended_uses_rebalance(self, curves):
        view = PoolView(
            pool_id="edge",
            dataplane_budget_ms=230.0,
            slices=(
                PoolSlice(intent=mk_intent(3, 30, 2), curves=curves, desired_mbps=37.5),
                PoolSlice(intent=mk_intent(4, 45, 2), curves=curves, desired_mbps=50.0),
                PoolSlice(intent=mk_intent(5, 90, 3), curves=curves, desired_mbps=100.0),
            ),
        )
        plans = plan_pool_quotas(view, enabled=True)
        assert plans["1-5"].target_mbps == pytest.approx(65.66, abs=0.01)
        plans_off = plan_pool_quotas(view, enabled=False)
        assert plans_off["1-5"].target_mbps == pytest.approx(29.3095, abs=1e-3)


class TestAssuranceTick:
    def test_idempotent(self, curves):
        view = PoolView(
            pool_id="edge",
            dataplane_budget_ms=230.0,
            slices=(PoolSlice(intent=mk_intent(3, 30, 2), curves=curves, desired_mbps=50.0),),
        )
        intents = {"1-3": mk_intent(3, 30, 2)}
        policies = {"1-3": (15, 100.0)}
        first = so.assurance_tick([view], {}, {}, policies, {}, intents, enabled=True)
        assert set(first.quota_updates) == {"1-3"}
        assert set(first.policy_updates) == {"1-3"}
        second = so.assurance_tick(
            [view], first.quota_updates, first.policy_updates, policies, {}, intents, enabled=True
        )
        assert second.quota_updates == {}
        assert second.policy_updates == {}

    def test_report_embedded(self, curves):
        intents = {"1-3": mk_intent(3, 30, 2)}
        outcome = so.assurance_tick([], {}, {}, {}, {"1-3": (15.0, 20.0)}, intents, enabled=True)
        assert outcome.report.entries["1-3"].tp_violation_pct == pytest.approx(50.0)
