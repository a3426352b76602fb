"""State-space DP for two-level lot sizing with bounds at either or both levels.

States are the integer end-of-period stocks ``(retailer, supplier)``. A
missing bound is replaced by the demand still to come, ``d_{t+1..T}``, so the same
recursion covers retailer-only, supplier-only and doubly bounded instances.
Runtime is proportional to the product of consecutive state-grid sizes.
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np

from ._ibsr_kernel import ibsr_tables
from ._jit import INF as KINF
from .core import Instance, Plan, UsageError, check_feasibility, cum_demand, evaluate_cost
from .money import INF, Money


def order_cost(inst: Instance, level: str, t: int, X: int) -> Money:
    """Setup plus unit cost of ordering ``X`` units at period ``t`` (1-based)."""
    if X < 0:
        raise ValueError("order quantity must be nonnegative")
    if X == 0:
        return Fraction(0)
    costs = inst.retailer if level.upper().startswith("R") else inst.supplier
    return costs.f[t - 1] + costs.p[t - 1] * X


def state_caps(inst: Instance) -> tuple:
    """End-of-period state caps ``min(u_t, d_{t+1..T})`` for both levels, index 0 = initial state."""
    cd = cum_demand(inst)
    MR, MS, rest = [0], [0], [cd.suffix(1)]
    for t in range(1, inst.T + 1):
        r = cd.suffix(t + 1)
        rest.append(r)
        MR.append(r if inst.uR is None else min(inst.uR[t - 1], r))
        MS.append(r if inst.uS is None else min(inst.uS[t - 1], r))
    return MR, MS, rest


def transition_cost(inst: Instance, t: int, sR_prev: int, sR: int, sS_prev: int, sS: int) -> Money:
    """Cost of period ``t`` moving from the previous stocks to ``(sR, sS)``; +inf if not allowed."""
    MR, MS, rest = state_caps(inst)
    if not (0 <= sR <= MR[t] and 0 <= sS <= MS[t]) or sR + sS > rest[t]:
        return INF
    xR = sR + inst.d[t - 1] - sR_prev
    if xR < 0:
        return INF
    xS = sS + xR - sS_prev
    if xS < 0:
        return INF
    return (order_cost(inst, "R", t, xR) + order_cost(inst, "S", t, xS)
            + inst.retailer.h[t - 1] * sR + inst.supplier.h[t - 1] * sS)


def ibsr_arrays(inst: Instance) -> tuple:
    MR, MS, rest = state_caps(inst)
    L = inst.scale()
    arr = inst.kernel_arrays(L)
    as64 = lambda v: np.asarray(v + [0], dtype=np.int64)
    return L, arr, as64(MR), as64(MS), as64(rest)


def run_ibsr_kernel(inst: Instance) -> tuple:
    L, arr, MR, MS, rest = ibsr_arrays(inst)
    H, CH, off = ibsr_tables(arr["d"], arr["fR"], arr["pR"], arr["hR"],
                             arr["fS"], arr["pS"], arr["hS"], MR, MS, rest)
    return L, MS, H, CH, off


def solve_ibsr(inst: Instance) -> tuple:
    """Optimal cost and plan; bounds may sit at the retailer, the supplier, both or neither."""
    if inst.nls:
        raise UsageError("state DP does not handle no-lot-splitting instances")
    L, MS, H, CH, off = run_ibsr_kernel(inst)
    top = int(H[0])
    if top >= KINF:
        raise RuntimeError("no feasible plan found; the order-as-needed plan should always exist")
    xR, xS = [], []
    r0 = s0 = 0
    q = 0
    for t in range(1, inst.T + 1):
        q = int(CH[q])
        local = q - int(off[t])
        w = int(MS[t]) + 1
        r1, s1 = divmod(local, w)
        x_r = r1 + inst.d[t - 1] - r0
        xR.append(x_r)
        xS.append(s1 + x_r - s0)
        r0, s0 = r1, s1
    plan = Plan.from_orders(inst, xR, xS)
    cost = Fraction(top, L)
    if evaluate_cost(inst, plan) != cost or not check_feasibility(inst, plan):
        raise RuntimeError("reconstructed plan does not match the state DP optimum")
    return cost, plan
