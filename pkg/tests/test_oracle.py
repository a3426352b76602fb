from fractions import Fraction

import numpy as np
import pytest

from lotbound.core import Instance, Plan, SingleLevelInstance, UsageError, check_feasibility, evaluate_cost
from lotbound.oracle import (FlowNetwork, as_two_level, brute_force_nls, brute_force_optimal,
                             min_cost_flow, oracle_cap, single_level_uls_ib)
from lotbound.reductions import (subset_sum_to_ibs, three_partition_plan,
                                 three_partition_to_uls_ib_nls)

from conftest import make_random


def test_flow_two_periods_all_open():
    inst = Instance.make([1, 2], pS=[1, 3], pR=[2, 2], hS=1, hR=Fraction(1, 2))
    net = FlowNetwork.build(inst, [True, True], [True, True])
    cost, flows = min_cost_flow(net)
    # cheapest unit route into period 2: buy at 1 (1), move down either level
    assert cost == 3 + 2 * Fraction(7, 2)
    assert flows[("demand", 1)] == 1 and flows[("demand", 2)] == 2
    assert net.demand == 3


def test_flow_infeasible_and_empty():
    inst = Instance.make([0, 3])
    assert min_cost_flow(FlowNetwork.build(inst, [False, False], [True, True])) is None
    cost, flows = min_cost_flow(FlowNetwork.build(Instance.make([0, 0]), [False] * 2, [False] * 2))
    assert cost == 0 and flows == {}


def test_flow_respects_capacities():
    inst = Instance.make([0, 4], uR=[1, 1], uS=[2, 2], hR=0, pS=[0, 5])
    net = FlowNetwork.build(inst, [True, True], [True, True])
    cost, flows = min_cost_flow(net)
    assert flows.get(("stock-R", 1), 0) <= 1 and flows.get(("stock-S", 1), 0) <= 2
    assert cost == 5 * 1
    assert sum(v for k, v in flows.items() if k[0] == "demand") == 4


def test_zio_network_closes_stock_into_setups():
    inst = Instance.make([0, 2])
    net = FlowNetwork.build(inst, [True, True], [True, False], zio=True)
    caps = dict(zip(net.labels, net.caps))
    assert caps[("stock-R", 1)] == 0 and caps[("stock-S", 1)] == 2


def test_prop1_and_zio_restriction(prop1):
    assert brute_force_optimal(prop1)[0] == 1
    cost, plan = brute_force_optimal(prop1, zio=True)
    assert cost == 11
    assert all(plan.sR[t - 1] * plan.xR[t] == 0 for t in range(1, prop1.T))


def test_single_period_formula():
    inst = Instance.make([4], fR=2, pR=Fraction(1, 2), fS=3, pS=1)
    assert brute_force_optimal(inst)[0] == 3 + 2 + (1 + Fraction(1, 2)) * 4


def test_subset_sum_fixture():
    cost, plan = brute_force_optimal(subset_sum_to_ibs(5, [2, 3, 4]).produced)
    assert cost == 5


def test_plan_setups_are_canonical():
    rng = np.random.default_rng(2)
    for _ in range(30):
        inst = make_random(rng, 4, "both")
        cost, plan = brute_force_optimal(inst)
        assert plan.yR == tuple(x > 0 for x in plan.xR)
        assert evaluate_cost(inst, plan) == cost and check_feasibility(inst, plan)


def test_caps(monkeypatch):
    big = Instance.make([1] * 13)
    with pytest.raises(UsageError):
        brute_force_optimal(big)
    monkeypatch.setenv("LOTBOUND_CAP", "3")
    assert oracle_cap(12) == 3
    with pytest.raises(UsageError):
        brute_force_optimal(Instance.make([1] * 4))
    with pytest.raises(UsageError):
        brute_force_nls(Instance.make([1] * 4, nls=True))
    monkeypatch.setenv("LOTBOUND_CAP", "x")
    with pytest.raises(UsageError):
        oracle_cap(12)
    monkeypatch.delenv("LOTBOUND_CAP")
    assert brute_force_optimal(Instance.make([1] * 4), cap=4)[0] == 0


def test_wrong_variants():
    with pytest.raises(UsageError):
        brute_force_optimal(Instance.make([1], nls=True))
    with pytest.raises(UsageError):
        brute_force_nls(Instance.make([1]))


def test_nls_lot_for_lot_is_an_upper_bound():
    rng = np.random.default_rng(6)
    for n in range(40):
        base = make_random(rng, int(rng.integers(1, 6)), ("retailer", "both", "supplier", "none")[n % 4])
        inst = Instance(base.T, base.d, base.retailer, base.supplier, base.uR, base.uS, nls=True)
        cost, plan = brute_force_nls(inst)
        assert cost <= evaluate_cost(inst, Plan.order_as_needed(inst))
        assert check_feasibility(inst, plan)
        split = Instance(base.T, base.d, base.retailer, base.supplier, base.uR, base.uS)
        assert cost >= brute_force_optimal(split)[0]


def test_nls_yes_instance_costs_zero():
    cert = three_partition_to_uls_ib_nls(12, [4] * 6)
    cost, plan = brute_force_nls(cert.produced)
    assert cost == 0
    assert plan.xS == plan.xR
    x, asg = three_partition_plan(cert)
    inst = as_two_level(cert.produced)
    witness = Plan.from_orders(inst, x, x, asg)
    assert check_feasibility(inst, witness) and evaluate_cost(inst, witness) == 0


def test_nls_zero_demands_need_no_assignment():
    cost, plan = brute_force_nls(SingleLevelInstance.make([0, 0, 0], f=5))
    assert cost == 0 and plan.assignment == ()


def test_single_level_examples():
    assert single_level_uls_ib([0, 0, 0], 3, 1, 1, 5) == 0
    assert single_level_uls_ib([2, 0, 3], [4, 1, 6], [1, 1, 2], 1, 0) == 4 + 2 + 6 + 6
    assert single_level_uls_ib([2, 0, 3], [4, 1, 6], [1, 1, 2], 0, None) == 4 + 5


def test_single_level_matches_two_level_oracle():
    rng = np.random.default_rng(14)
    for _ in range(60):
        inst = make_random(rng, int(rng.integers(1, 7)), "retailer")
        lone = Instance(inst.T, inst.d, inst.retailer, Instance.make([0] * inst.T).supplier, uR=inst.uR)
        r = inst.retailer
        assert single_level_uls_ib(inst.d, r.f, r.p, r.h, inst.uR) == brute_force_optimal(lone)[0]
