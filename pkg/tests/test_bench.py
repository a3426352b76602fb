import numpy as np

from lotbound.bench import (bench_ibr, bench_ibsr, bench_solver, bound_instance, growth_factors,
                            loglog_slope, to_csv)
from lotbound.ibsr import state_caps
from lotbound.oracle import brute_force_optimal


def test_rows_and_csv():
    rows = bench_ibr([6, 8], trials=1)
    assert [r[0] for r in rows] == [6, 8] and all(r[1] > 0 for r in rows)
    assert to_csv(rows).splitlines()[0] == "size,median_seconds"
    assert len(bench_ibsr([2, 3], T=3, trials=1)) == 2
    assert len(bench_solver(brute_force_optimal, [2, 3], trials=1)) == 2


def test_slope_and_factors():
    rows = [(10, 1.0), (20, 16.0), (40, 256.0)]
    assert abs(loglog_slope(rows) - 4.0) < 1e-9
    assert growth_factors(rows) == [16.0, 16.0]


def test_bound_instances_keep_bounds_binding():
    inst = bound_instance(5, 6, np.random.default_rng(0))
    MR, MS, _ = state_caps(inst)
    assert MR[1:-1] == [5] * 5 and MS[1:-1] == [5] * 5
