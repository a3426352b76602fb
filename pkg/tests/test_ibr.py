from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lotbound.core import ContractError, Instance, Plan, UsageError, normalize_bounds
from lotbound.ibr import (HIGH, LOW, BlockModel, WChain, block_structure_violations, compute_w,
                          delta_one, delta_two, ibr_solve_tables, incremental_w, solve_ibr)
from lotbound.ibsr import solve_ibsr
from lotbound.money import INF
from lotbound.oracle import brute_force_optimal

from conftest import make_random


def test_prop1_cost_and_plan(prop1):
    cost, plan = solve_ibr(prop1)
    assert cost == 1
    assert plan.xS == (11, 0) and plan.xR == (10, 1)


def test_zero_demand():
    cost, plan = solve_ibr(Instance.make([0, 0, 0], fR=3, fS=4, uR=2))
    assert cost == 0 and not any(plan.xR) and not any(plan.xS)


def test_single_period_forces_both_orders():
    inst = Instance.make([5], fR=2, pR=3, fS=7, pS=1, uR=0)
    assert solve_ibr(inst)[0] == 7 + 5 + 2 + 15
    tab = ibr_solve_tables(inst)
    assert tab.c(1, 1, LOW, LOW) == 29


def test_wrong_variant_is_rejected():
    with pytest.raises(UsageError):
        solve_ibr(Instance.make([1], uR=1, uS=1))
    with pytest.raises(UsageError):
        solve_ibr(Instance.make([1], uR=1, nls=True))
    with pytest.raises(UsageError):
        solve_ibr(Instance.make([1]))


def test_unnormalized_tables_raise_contract_error():
    inst = Instance.make([0, 5], uR=[10, 2])
    with pytest.raises(ContractError):
        ibr_solve_tables(inst, normalize=False)
    ibr_solve_tables(normalize_bounds(inst), normalize=False)


def test_block_costs_by_hand(prop1):
    m = BlockModel(normalize_bounds(prop1))
    assert m.phi_zero_beta(2, 2, 2, LOW) == 11
    assert m.phi_zero_beta(2, 2, None, LOW) == INF
    m0 = BlockModel(Instance.make([0, 0], uR=3))
    assert m0.phi_zero_beta(1, 1, None, LOW) == 0
    m2 = BlockModel(Instance.make([1, 1], fR=3, pR=1, hR=1, uR=5))
    assert m2.phi_zero_beta(1, 2, 1, LOW) == 6


def test_high_start_blocks():
    inst = Instance.make([0, 5], hR=[0, 3], uR=[7, 2])
    m = BlockModel(inst)
    # u_1 = d_2 + u_2: the block needs no order and carries u_2 at the end
    assert m.phi_high_high(2, 2, None) == 3 * 2
    assert m.phi_high_high(2, 2, 2) == INF
    free = BlockModel(Instance.make([0, 5], uR=[7, 2]))
    assert free.phi_high_high(2, 2, None) == 0
    drain = BlockModel(Instance.make([0, 2, 3], hR=[0, 1, 1], uR=[5, 5, 5]))
    # u_1 = d_23: pure drawdown, holding on the 3 units left after period 2
    assert drain.phi_high_zero(2, 3, None) == 3
    assert drain.phi_high_zero(2, 3, 2) == INF


def test_g_boundary_rule():
    inst = normalize_bounds(Instance.make([1, 2, 3], fR=1, pR=1, hR=1, uR=4))
    tab = ibr_solve_tables(inst)
    assert tab.g(3, 1, 2, LOW, LOW) == INF
    assert tab.g(1, 3, 2, LOW, LOW) == INF
    assert tab.g(1, 1, 1, LOW, LOW) == 1 + 1
    assert tab.c(4, 1, LOW, LOW) == INF


def _g_by_enumeration(inst, t, i, j, a, b):
    """Cheapest retailer path over [i, j] with all orders at or after t, plus supplier carry from t."""
    u, d, r, hS = inst.uR, inst.d, inst.retailer, inst.supplier.h
    start = u[i - 2] if a else 0
    best = [INF]

    def rec(n, prev, cost):
        if n > j:
            best[0] = min(best[0], cost)
            return
        for s in ([u[j - 1]] if (n == j and b) else [0] if n == j else range(u[n - 1] + 1)):
            x = s + d[n - 1] - prev
            if x < 0 or (x > 0 and n < t):
                continue
            c = cost + r.h[n - 1] * s
            if x > 0:
                c += r.f[n - 1] + r.p[n - 1] * x + sum(hS[t - 1:n - 1], Fraction(0)) * x
            rec(n + 1, s, c)

    rec(i, start, Fraction(0))
    return best[0]


def test_g_entries_match_path_enumeration():
    rng = np.random.default_rng(3)
    checked = 0
    for _ in range(25):
        inst = normalize_bounds(make_random(rng, int(rng.integers(2, 6)), "retailer", umax=5))
        tab = ibr_solve_tables(inst)
        T = inst.T
        for j in range(1, T + 1):
            for i in range(1, j + 1):
                for t in range(1, j + 1):
                    for a in (LOW, HIGH):
                        # a high start is only distinct from a low one when the bound is positive
                        if a == HIGH and (i == 1 or inst.uR[i - 2] == 0):
                            continue
                        for b in (LOW, HIGH):
                            assert tab.g(t, i, j, a, b) == _g_by_enumeration(inst, t, i, j, a, b)
                            checked += 1
    assert checked > 1000


def test_w_table_and_chain_match_direct_minimum():
    rng = np.random.default_rng(8)
    for _ in range(15):
        inst = normalize_bounds(make_random(rng, int(rng.integers(2, 7)), "retailer"))
        tab = ibr_solve_tables(inst, record_w=True)
        m = BlockModel(tab.inst)
        T = inst.T
        for j in range(2, T + 1):
            for k in range(1, j):
                for b in (LOW, HIGH):
                    chain = WChain(m, tab, j, k, b)
                    i = k
                    while True:
                        for t in range(1, k + 1):
                            for g in (LOW, HIGH):
                                assert chain.value(t, g) == compute_w(m, tab, t, i, j, k, HIGH, g, b)
                                for a in (LOW, HIGH):
                                    assert tab.w(t, i, j, k, a, g, b) == compute_w(m, tab, t, i, j, k, a, g, b)
                        if i == 1:
                            break
                        chain.step()
                        i -= 1


def test_incremental_w_steps_one_period():
    inst = normalize_bounds(Instance.make([1, 2, 0, 3, 1], fR=2, pR=1, hR=1, fS=3, hS=1, uR=4))
    tab = ibr_solve_tables(inst, record_w=True)
    m = BlockModel(tab.inst)
    chain = WChain(m, tab, 5, 3, LOW)
    assert incremental_w(chain, 1, LOW) == compute_w(m, tab, 1, 2, 5, 3, HIGH, LOW, LOW)


def test_w_needs_recording():
    tab = ibr_solve_tables(Instance.make([1, 1], uR=1))
    with pytest.raises(UsageError):
        tab.w(1, 1, 2, 1, LOW, LOW, LOW)


def test_chain_rejects_unnormalized_bounds():
    # u_1 = 3 exceeds u_2 + d_2 = 0
    inst = Instance.make([0, 0, 1, 1], uR=[3, 0, 1, 1])
    m = BlockModel(inst)

    class _Stub:
        def g(self, *args):
            return INF

    chain = WChain(m, _Stub(), 4, 3, LOW)
    with pytest.raises(ContractError):
        chain.step()


def test_delta_two_adds_fixed_cost():
    m = BlockModel(normalize_bounds(Instance.make([1, 2, 3, 1], fR=[1, 2, 3, 4], pR=2, hR=1, uR=4)))
    assert delta_two(m, 3, 3) == m.f[3] + delta_one(m, 3, 3)


def test_naive_and_fast_paths_agree():
    rng = np.random.default_rng(21)
    for _ in range(60):
        inst = make_random(rng, int(rng.integers(1, 8)), "retailer")
        assert solve_ibr(inst)[0] == solve_ibr(inst, naive=True)[0]


def test_plans_have_block_structure():
    rng = np.random.default_rng(4)
    for _ in range(80):
        inst = make_random(rng, int(rng.integers(2, 8)), "retailer")
        cost, plan = solve_ibr(inst)
        assert block_structure_violations(inst, plan) == []


def test_structure_audit_flags_violations():
    inst = Instance.make([1, 1, 1], uR=5)
    plan = Plan.from_orders(inst, [1, 1, 1], [2, 1, 0])
    assert ("supplier-zio", 2) in block_structure_violations(inst, plan)
    two = Plan.from_orders(inst, [2, 1, 0], [3, 0, 0])
    assert ("block-orders", 1) in block_structure_violations(inst, two)


def test_matches_oracle_on_random_instances():
    rng = np.random.default_rng(17)
    for _ in range(200):
        inst = make_random(rng, int(rng.integers(2, 7)), "retailer")
        assert solve_ibr(inst)[0] == brute_force_optimal(inst)[0]


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 6), st.integers(1, 6))
def test_raising_a_bound_never_hurts(seed, T, bump):
    rng = np.random.default_rng(seed)
    inst = make_random(rng, T, "retailer")
    t = int(rng.integers(0, T))
    u = list(inst.uR)
    u[t] += bump
    assert solve_ibr(inst.with_bounds(uR=tuple(u)))[0] <= solve_ibr(inst)[0]


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 7))
def test_agrees_with_state_dp(seed, T):
    inst = make_random(np.random.default_rng(seed), T, "retailer")
    assert solve_ibr(inst)[0] == solve_ibsr(inst)[0]
