"""Timing harness for the two dynamic programs.

Only the table fill is timed. Instance preparation and plan recovery are
linear in T and would flatten the growth curve at small sizes; the first
call of each kernel is a warm-up so JIT compilation is excluded too.
"""
from __future__ import annotations

import statistics
import time
from typing import Iterable, Optional, Sequence

import numpy as np

from ._ibr_kernel import ibr_tables
from ._ibsr_kernel import ibsr_tables
from .core import Instance
from .generate import random_instance
from .ibr import ibr_kernel_inputs
from .ibsr import ibsr_arrays

IBR_RANGES = {"demand": (0, 20), "cost": (0, 100), "bound": (0, 40)}


def time_ibr(inst: Instance) -> float:
    _, _, args = ibr_kernel_inputs(inst)
    t0 = time.perf_counter()
    ibr_tables(*args, False, False)
    return time.perf_counter() - t0


def time_ibsr(inst: Instance) -> float:
    _, arr, MR, MS, rest = ibsr_arrays(inst)
    t0 = time.perf_counter()
    ibsr_tables(arr["d"], arr["fR"], arr["pR"], arr["hR"], arr["fS"], arr["pS"], arr["hS"],
                MR, MS, rest)
    return time.perf_counter() - t0


def bound_instance(k: int, T: int, rng: np.random.Generator) -> Instance:
    """Both levels bounded by k; demands of 4k..5k keep every bound binding."""
    d = [int(v) for v in rng.integers(4 * k, 5 * k + 1, size=T)]
    c = lambda: [int(v) for v in rng.integers(0, 10, size=T)]
    return Instance.make(d, fR=c(), pR=c(), hR=c(), fS=c(), pS=c(), hS=c(), uR=k, uS=k)


def _warm() -> None:
    time_ibr(random_instance(4, 0, **IBR_RANGES))
    time_ibsr(bound_instance(2, 3, np.random.default_rng(0)))


def bench_ibr(sizes: Iterable[int], trials: int = 3, seed: int = 0) -> list:
    """``(T, median seconds)`` rows for the block DP on retailer-bounded instances."""
    _warm()
    rng = np.random.default_rng(seed)
    rows = []
    for T in sizes:
        times = [time_ibr(random_instance(T, rng=rng, profile="retailer", **IBR_RANGES))
                 for _ in range(trials)]
        rows.append((T, statistics.median(times)))
    return rows


def bench_ibsr(bounds: Iterable[int], T: int = 10, trials: int = 3, seed: int = 0) -> list:
    """``(bound, median seconds)`` rows for the state DP at fixed horizon."""
    _warm()
    rng = np.random.default_rng(seed)
    rows = []
    for k in bounds:
        times = [time_ibsr(bound_instance(k, T, rng)) for _ in range(trials)]
        rows.append((k, statistics.median(times)))
    return rows


def bench_solver(solver, sizes: Iterable[int], trials: int = 3, seed: int = 0,
                 profile: str = "both") -> list:
    """Whole-solve timing for any ``solver(inst)``, e.g. the oracles."""
    rng = np.random.default_rng(seed)
    solver(random_instance(2, rng=rng, profile=profile))
    rows = []
    for T in sizes:
        times = []
        for _ in range(trials):
            inst = random_instance(T, rng=rng, profile=profile)
            t0 = time.perf_counter()
            solver(inst)
            times.append(time.perf_counter() - t0)
        rows.append((T, statistics.median(times)))
    return rows


def loglog_slope(rows: Sequence[tuple]) -> float:
    x = np.log([r[0] for r in rows])
    y = np.log([r[1] for r in rows])
    return float(np.polyfit(x, y, 1)[0])


def growth_factors(rows: Sequence[tuple]) -> list:
    return [rows[i + 1][1] / rows[i][1] for i in range(len(rows) - 1)]


def to_csv(rows: Sequence[tuple], header: Optional[Sequence[str]] = None) -> str:
    lines = [",".join(header or ("size", "median_seconds"))]
    lines += [f"{size},{sec:.6f}" for size, sec in rows]
    return "\n".join(lines) + "\n"
