"""Exact brute-force solvers used to cross-check the dynamic programs.

Splitting variants enumerate every setup pattern and solve the remaining
linear problem as a min-cost flow. NLS variants enumerate the assignment
of each positive demand to one retailer order period and solve the
supplier side as a single-level bounded problem.

Both searches are exponential, so they refuse instances above a size cap
(``LOTBOUND_CAP`` in the environment overrides every default cap).
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from . import _flow_kernel as fk
from ._ibsr_kernel import single_level_tables
from ._jit import INF as KINF
from .core import (Instance, LevelCosts, Plan, SingleLevelInstance, UsageError,
                   check_feasibility, evaluate_cost)
from .money import Money, check_scale, common_scale, scaled

DEFAULT_T_CAP = 12
DEFAULT_NLS_CAP = 8


def oracle_cap(default: int) -> int:
    raw = os.environ.get("LOTBOUND_CAP", "").strip()
    if not raw:
        return default
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"LOTBOUND_CAP must be an integer, got {raw!r}") from None
    if value < 1:
        raise UsageError("LOTBOUND_CAP must be positive")
    return value


# ---------------------------------------------------------------- flow network

@dataclass(frozen=True)
class FlowNetwork:
    """Two-level network for one fixed setup pattern.

    Node 0 is the source, ``1..T`` the supplier periods, ``T+1..2T`` the
    retailer periods and ``2T+1`` the sink. Unbounded capacities are
    materialised as the total demand.
    """
    T: int
    tails: tuple
    heads: tuple
    caps: tuple
    costs: tuple
    labels: tuple

    @property
    def source(self) -> int:
        return 0

    @property
    def sink(self) -> int:
        return 2 * self.T + 1

    @property
    def demand(self) -> int:
        return sum(c for c, lab in zip(self.caps, self.labels) if lab[0] == "demand")

    @classmethod
    def build(cls, inst: Instance, yR: Sequence[bool], yS: Sequence[bool],
              zio: bool = False) -> "FlowNetwork":
        """Arcs follow the layout of the jitted kernel; ``zio`` closes stock arcs into setup periods."""
        T, D = inst.T, inst.total_demand
        r, s = inst.retailer, inst.supplier
        capR = inst.uR if inst.uR is not None else (D,) * T
        capS = inst.uS if inst.uS is not None else (D,) * T
        arcs = []
        for t in range(1, T + 1):
            arcs.append((0, t, D if yS[t - 1] else 0, s.p[t - 1], ("order-S", t)))
        for t in range(1, T + 1):
            arcs.append((t, T + t, D if yR[t - 1] else 0, r.p[t - 1], ("order-R", t)))
        for t in range(1, T):
            cap = 0 if zio and yS[t] else capS[t - 1]
            arcs.append((t, t + 1, cap, s.h[t - 1], ("stock-S", t)))
        for t in range(1, T):
            cap = 0 if zio and yR[t] else capR[t - 1]
            arcs.append((T + t, T + t + 1, cap, r.h[t - 1], ("stock-R", t)))
        for t in range(1, T + 1):
            arcs.append((T + t, 2 * T + 1, inst.d[t - 1], Fraction(0), ("demand", t)))
        tails, heads, caps, costs, labels = zip(*arcs)
        return cls(T, tails, heads, caps, costs, labels)


def min_cost_flow(net: FlowNetwork) -> Optional[tuple]:
    """Cheapest flow meeting every demand arc, as ``(cost, {label: flow})``; None if infeasible."""
    need = net.demand
    if need == 0:
        return Fraction(0), {}
    L = common_scale(net.costs)
    check_scale(sum(net.costs) * need, L)
    n = len(net.tails)
    afrom = np.zeros(2 * n, dtype=np.int64)
    ato = np.zeros(2 * n, dtype=np.int64)
    acost = np.zeros(2 * n, dtype=np.int64)
    cap = np.zeros(2 * n, dtype=np.int64)
    for e in range(n):
        c = int(net.costs[e] * L)
        afrom[2 * e], ato[2 * e], acost[2 * e], cap[2 * e] = net.tails[e], net.heads[e], c, net.caps[e]
        afrom[2 * e + 1], ato[2 * e + 1], acost[2 * e + 1] = net.heads[e], net.tails[e], -c
    nv = 2 * net.T + 2
    dist = np.zeros(nv, dtype=np.int64)
    pred = np.zeros(nv, dtype=np.int64)
    total = fk.ssp(nv, afrom, ato, acost, cap, need, net.source, net.sink, dist, pred)
    if total >= KINF:
        return None
    flows = {net.labels[e]: int(cap[2 * e + 1]) for e in range(n) if cap[2 * e + 1] > 0}
    return Fraction(int(total), L), flows


# ------------------------------------------------------- setup-pattern search

def _pattern_arrays(inst: Instance, L: int) -> dict:
    arr = inst.kernel_arrays(L)
    D = inst.total_demand
    pad = lambda v: np.asarray([0, *(v if v is not None else (D,) * inst.T), 0], dtype=np.int64)
    arr["capR"] = pad(inst.uR)
    arr["capS"] = pad(inst.uS)
    return arr


def brute_force_optimal(inst: Instance, cap: Optional[int] = None, zio: bool = False) -> tuple:
    """Optimal ``(cost, plan)`` over all setup patterns.

    With ``zio`` only plans that never order while holding stock (at either
    level) are admitted.
    """
    if inst.nls:
        raise UsageError("brute_force_optimal handles splitting variants only; use brute_force_nls")
    limit = cap if cap is not None else oracle_cap(DEFAULT_T_CAP)
    if inst.T > limit:
        raise UsageError(f"T={inst.T} exceeds the oracle cap {limit}")
    fallback = Plan.order_as_needed(inst)
    if inst.total_demand == 0:
        return Fraction(0), fallback
    L = inst.scale()
    a = _pattern_arrays(inst, L)
    ones = np.ones(inst.T + 2, dtype=np.int64)
    lower, _ = fk.pattern_flow(inst.T, a["d"], a["pR"], a["hR"], a["pS"], a["hS"],
                               a["capR"], a["capS"], ones, ones, False)
    upper = int(evaluate_cost(inst, fallback) * L)
    best, pat = fk.search_patterns(inst.T, a["d"], a["fR"], a["pR"], a["hR"], a["fS"], a["pS"],
                                   a["hS"], a["capR"], a["capS"], zio, upper, int(lower))
    if pat < 0:
        return Fraction(upper, L), fallback
    T = inst.T
    yS = [bool((pat >> b) & 1) for b in range(T)]
    yR = [bool((pat >> (T + b)) & 1) for b in range(T)]
    res = min_cost_flow(FlowNetwork.build(inst, yR, yS, zio))
    if res is None:
        raise RuntimeError("best setup pattern lost feasibility on re-solve")
    _, flows = res
    xS = [flows.get(("order-S", t), 0) for t in range(1, T + 1)]
    xR = [flows.get(("order-R", t), 0) for t in range(1, T + 1)]
    plan = Plan.from_orders(inst, xR, xS)
    cost = evaluate_cost(inst, plan)
    # dropping unused setups can only help, and the pattern was already optimal
    if cost != Fraction(int(best), L) or not check_feasibility(inst, plan):
        raise RuntimeError("oracle plan does not reproduce the pattern optimum")
    return cost, plan


# -------------------------------------------------------------- single level

def _single_level(d: Sequence[int], f, p, h, u, L: int) -> tuple:
    """Scaled optimal cost and order vector, or (INF, None) when infeasible."""
    T = len(d)
    rest = [0] * (T + 2)
    for t in range(T, 0, -1):
        rest[t] = rest[t + 1] + d[t - 1]
    M = [0] * (T + 2)
    for t in range(1, T + 1):
        M[t] = rest[t + 1] if u is None else min(u[t - 1], rest[t + 1])
    dd = np.asarray([0, *d, 0], dtype=np.int64)
    H, CH, off = single_level_tables(dd, scaled(f, L), scaled(p, L), scaled(h, L),
                                     np.asarray(M, dtype=np.int64))
    top = int(H[0])
    if top >= KINF:
        return KINF, None
    x, s0, q = [], 0, 0
    for t in range(1, T + 1):
        q = int(CH[q])
        s1 = q - int(off[t])
        x.append(s1 + d[t - 1] - s0)
        s0 = s1
    return top, x


def single_level_uls_ib(demands: Sequence[int], f, p, h, u=None) -> Money:
    """Optimal single-level cost with end-of-period stock at most ``u_t``."""
    T = len(demands)
    lc = LevelCosts.of(T, f, p, h)
    if isinstance(u, int):
        u = (u,) * T
    L = common_scale((*lc.f, *lc.p, *lc.h))
    check_scale(sum(lc.f) + (sum(lc.p) + sum(lc.h)) * max(sum(demands), 1), L)
    top, _ = _single_level(list(demands), lc.f, lc.p, lc.h, u, L)
    return Fraction(top, L)


# ------------------------------------------------------------ NLS assignment

def as_two_level(uls: SingleLevelInstance) -> Instance:
    """Single-level data at the retailer, a free and unbounded supplier."""
    return Instance(uls.T, uls.d, LevelCosts(uls.f, uls.p, uls.h), LevelCosts.zero(uls.T),
                    uR=uls.u, nls=uls.nls)


def brute_force_nls(inst, cap: Optional[int] = None) -> tuple:
    """Optimal ``(cost, plan)`` when each demand is served by a single retailer order.

    A ``SingleLevelInstance`` is solved as a two-level instance whose supplier
    is free, so the returned plan has ``xS == xR``.
    """
    if isinstance(inst, SingleLevelInstance):
        inst = as_two_level(inst)
    if not inst.nls:
        raise UsageError("brute_force_nls needs an instance with nls set")
    limit = cap if cap is not None else oracle_cap(DEFAULT_NLS_CAP)
    T = inst.T
    pos = [t for t in range(1, T + 1) if inst.d[t - 1] > 0]
    if len(pos) > limit:
        raise UsageError(f"{len(pos)} positive demands exceed the NLS oracle cap {limit}")
    L = inst.scale()
    a = inst.kernel_arrays(L)
    fR, pR, hR = (a[k].tolist() for k in ("fR", "pR", "hR"))
    sup = inst.supplier
    supplier_free = sup.is_zero()
    uR = inst.uR
    d = inst.d
    # holding along R from period k to t-1 for one unit
    hsum = [[0] * (T + 2) for _ in range(T + 2)]
    for k in range(1, T + 1):
        for t in range(k + 1, T + 1):
            hsum[k][t] = hsum[k][t - 1] + hR[t - 1]

    memo: dict = {}

    def supplier(xR: tuple) -> tuple:
        if supplier_free:
            return 0, list(xR)
        hit = memo.get(xR)
        if hit is None:
            hit = memo[xR] = _single_level(list(xR), sup.f, sup.p, sup.h, inst.uS, L)
        return hit

    load = [0] * (T + 2)
    stock = [0] * (T + 2)
    choice = [0] * len(pos)
    best = [KINF, None, None]

    def leaf(partial: int) -> None:
        xR = tuple(load[1:T + 1])
        sc, xS = supplier(xR)
        if sc >= KINF:
            return
        if partial + sc < best[0]:
            best[0] = partial + sc
            best[1] = list(choice)
            best[2] = xS

    def walk(idx: int, partial: int) -> None:
        if partial >= best[0]:
            return
        if idx == len(pos):
            leaf(partial)
            return
        t = pos[idx]
        q = d[t - 1]
        # try lot-for-lot first so a good incumbent appears early
        for k in range(t, 0, -1):
            # moving k down adds period k to the carried span; earlier k only add more
            if uR is not None and k < t and stock[k] + q > uR[k - 1]:
                break
            add = pR[k] * q + hsum[k][t] * q + (fR[k] if load[k] == 0 else 0)
            load[k] += q
            for n in range(k, t):
                stock[n] += q
            choice[idx] = k
            walk(idx + 1, partial + add)
            load[k] -= q
            for n in range(k, t):
                stock[n] -= q

    walk(0, 0)
    if best[1] is None:
        raise RuntimeError("no feasible NLS assignment; lot-for-lot should always qualify")
    assignment = [(t, k) for t, k in zip(pos, best[1])]
    xR = [0] * T
    for t, k in assignment:
        xR[k - 1] += d[t - 1]
    plan = Plan.from_orders(inst, xR, best[2], assignment)
    cost = evaluate_cost(inst, plan)
    if cost != Fraction(int(best[0]), L) or not check_feasibility(inst, plan):
        raise RuntimeError("NLS oracle plan does not reproduce the search optimum")
    return cost, plan
