from fractions import Fraction

import numpy as np
import pytest

from lotbound.core import Instance, SingleLevelInstance, UsageError, check_feasibility, evaluate_cost
from lotbound.oracle import brute_force_nls, brute_force_optimal
from lotbound.reductions import (embed_nls_both, embed_nls_retailer, embed_nls_supplier,
                                 holding_penalty, odd_period_order_cost, subset_sum_plan,
                                 subset_sum_to_ibs, subset_sum_witness, three_partition_instances,
                                 three_partition_plan, three_partition_to_uls_ib_nls,
                                 three_partition_witness)


def test_subset_sum_structure():
    cert = subset_sum_to_ibs(5, [2, 3, 4])
    inst = cert.produced
    assert inst.T == 7
    assert inst.uS == (2, 2, 3, 3, 4, 4, 0)
    assert inst.uR is None and not inst.nls
    assert inst.d == (0, 0, 0, 0, 0, 0, 5)
    assert inst.supplier.f == (1, 10, 1, 10, 1, 10, 10)
    assert inst.retailer.f == (10, 0, 10, 0, 10, 0, 10)
    assert inst.supplier.p[:2] == (Fraction(1, 2),) * 2 and inst.supplier.p[-1] == 0
    assert not any(inst.retailer.p) and not any(inst.retailer.h) and not any(inst.supplier.h)
    assert cert.threshold == 5 and cert.is_yes


def test_subset_sum_decisions():
    yes = subset_sum_to_ibs(5, [2, 3, 4])
    assert brute_force_optimal(yes.produced)[0] == 5
    plan = subset_sum_plan(yes)
    assert check_feasibility(yes.produced, plan) and evaluate_cost(yes.produced, plan) == 5
    no = subset_sum_to_ibs(5, [2, 2])
    assert not no.is_yes
    assert brute_force_optimal(no.produced)[0] > 5
    with pytest.raises(UsageError):
        subset_sum_plan(no)


def test_full_lot_has_unit_average_cost():
    for a in ([1, 2, 3], [5, 6], [4]):
        cert = subset_sum_to_ibs(3, a)
        for i, v in enumerate(a):
            assert odd_period_order_cost(cert, i, v) == v
            for x in range(1, v):
                assert odd_period_order_cost(cert, i, x) > x


def test_subset_sum_validation():
    for S, a in ((5, []), (0, [1]), (3, [0, 2]), (3, [-1])):
        with pytest.raises(UsageError):
            subset_sum_to_ibs(S, a)
    assert subset_sum_to_ibs(1, [1]).produced.supplier.p[0] == 0


def test_subset_sum_witness():
    assert sorted(subset_sum_witness(5, [2, 3, 4])) == [0, 1]
    assert subset_sum_witness(7, [2, 2]) is None


def test_three_partition_structure():
    cert = three_partition_to_uls_ib_nls(12, [4, 4, 4, 4, 4, 4])
    uls = cert.produced
    assert isinstance(uls, SingleLevelInstance)
    assert uls.T == 10
    assert uls.d == (0, 12, 0, 0, 4, 4, 4, 4, 4, 4)
    assert uls.f == (0, 1, 0, 1, 1, 1, 1, 1, 1, 1)
    assert uls.u == (24,) * 10 and uls.nls
    assert cert.threshold == 0
    one = three_partition_to_uls_ib_nls(12, [4, 4, 4]).produced
    assert one.T == 5 and one.d == (0, 0, 4, 4, 4)


def test_three_partition_validation():
    for b, a in ((12, [4, 4, 5]), (12, [3, 4, 5]), (12, [4, 4]), (12, [6, 3, 3]), (0, [])):
        with pytest.raises(UsageError):
            three_partition_to_uls_ib_nls(b, a)


def test_three_partition_witness_and_plan():
    cert = three_partition_to_uls_ib_nls(15, [4, 5, 6, 4, 5, 6])
    assert cert.is_yes
    assert all(sum(cert.params["a"][i] for i in g) == 15 for g in cert.witness)
    x, asg = three_partition_plan(cert)
    assert sum(x) == sum(cert.produced.d)
    assert three_partition_witness(13, [4, 4, 4, 4, 4, 6]) is None


def test_enumerator_yields_only_valid_instances():
    seen = list(three_partition_instances(2, 16))
    assert seen
    for b, a in seen:
        m = len(a) // 3
        assert sum(a) == m * b and all(b < 4 * v and 2 * v < b for v in a)
        three_partition_to_uls_ib_nls(b, a)
    assert (12, (4, 4, 4)) in seen
    assert any(three_partition_witness(b, a) is None for b, a in seen)


def test_embeddings_shape():
    uls = SingleLevelInstance.make([1, 0, 2], f=[1, 2, 3], p=[1, 1, 1], h=[2, 0, 1], u=[2, 2, 2])
    r = embed_nls_retailer(uls)
    assert r.retailer.f == uls.f and r.uR == uls.u and r.supplier.is_zero() and r.uS is None and r.nls
    s = embed_nls_supplier(uls)
    assert holding_penalty(uls) == 3 + 3
    assert s.supplier.f == uls.f and s.uS == uls.u and s.uR is None
    assert s.retailer.h == (6, 6, 6) and not any(s.retailer.f) and not any(s.retailer.p)
    b = embed_nls_both(uls)
    assert b.uR == (3, 3, 3) and b.uS == uls.u


def test_zero_demand_embeddings_cost_zero():
    uls = SingleLevelInstance.make([0, 0], f=3, p=1, h=1, u=1)
    for fn in (embed_nls_retailer, embed_nls_supplier, embed_nls_both):
        assert brute_force_nls(fn(uls))[0] == 0


def test_retailer_embedding_preserves_cost():
    rng = np.random.default_rng(31)
    for _ in range(40):
        T = int(rng.integers(1, 6))
        uls = SingleLevelInstance.make([int(v) for v in rng.integers(0, 5, T)],
                                       f=[int(v) for v in rng.integers(0, 11, T)],
                                       p=[int(v) for v in rng.integers(0, 4, T)],
                                       h=[int(v) for v in rng.integers(0, 4, T)],
                                       u=[int(v) for v in rng.integers(0, 7, T)])
        assert brute_force_nls(embed_nls_retailer(uls))[0] == brute_force_nls(uls)[0]


def test_yes_instance_embedded_costs_zero():
    cert = three_partition_to_uls_ib_nls(12, [4] * 6)
    assert brute_force_nls(embed_nls_retailer(cert.produced))[0] == 0
