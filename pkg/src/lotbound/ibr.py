"""Block dynamic program for two-level lot sizing with retailer inventory bounds.

A block ``[i, j]`` is a run of retailer periods whose boundary stocks are
either empty (``low``) or at the bound (``high``) and whose interior stocks
are strictly between. Optimal plans decompose into blocks with at most one
retailer order each, and the supplier orders only when empty. The solver
fills

* ``G(t, i, j, a, b)``: cheapest retailer plan of ``[i, j]`` with boundary
  states ``a``/``b`` whose orders all come from one supplier batch bought
  at or before ``t`` (supplier holding from ``t`` included);
* ``C(t, i, a, b)``: cheapest full plan of ``[i, T]`` whose first supplier
  order is no earlier than ``t``.

The answer is ``C(1, 1, low, low)``. Boundary flags are ``0`` for empty and
``1`` for at-bound; ``u_0 = 0``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from ._ibr_kernel import ibr_tables
from ._jit import INF as KINF
from .core import (ContractError, Instance, Plan, UsageError, check_feasibility,
                   evaluate_cost, is_normalized, normalize_bounds)
from .money import INF, Money

LOW, HIGH = 0, 1


class BlockModel:
    """Exact block costs of a normalized retailer-bounded instance.

    Everything here is evaluated from the definitions with explicit sums,
    independently of the prefix-sum formulas used by the kernel.
    """

    def __init__(self, inst: Instance):
        if inst.uR is None:
            raise UsageError("retailer bounds required")
        self.inst = inst
        self.T = inst.T
        self.d = (0, *inst.d)
        self.u = (0, *inst.uR)
        r = inst.retailer
        self.f = (0, *r.f)
        self.p = (0, *r.p)
        self.h = (0, *r.h)
        self.hS = (0, *inst.supplier.h)

    def dem(self, i: int, j: int) -> int:
        return sum(self.d[i:j + 1]) if i <= j else 0

    def state(self, n: int, flag: int) -> int:
        return self.u[n] if flag == HIGH else 0

    def quantity(self, i: int, j: int, a: int, b: int) -> int:
        return self.dem(i, j) - self.state(i - 1, a) + self.state(j, b)

    def supplier_holding(self, t: int, k: int) -> Fraction:
        return sum(self.hS[t:k], Fraction(0))

    def _stock_cost(self, i: int, j: int, start: int, orders: dict) -> Fraction:
        s = start
        cost = Fraction(0)
        for n in range(i, j + 1):
            s += orders.get(n, 0) - self.d[n]
            cost += self.h[n] * s
        return cost

    def phi(self, i: int, j: int, k: Optional[int], a: int, b: int) -> Money:
        """Cost of block ``[i, j]`` with its single order at ``k`` (``None``: no order)."""
        al, be = self.state(i - 1, a), self.state(j, b)
        dij = self.dem(i, j)
        X = dij - al + be
        if k is None:
            if a == LOW:
                return Fraction(0) if dij + be == 0 else INF
            if al != dij + be:
                return INF
            return self._stock_cost(i, j, al, {})
        if a == LOW:
            return self.phi_zero_beta(i, j, k, b)
        if b == HIGH:
            return self.phi_high_high(i, j, k)
        return self.phi_high_zero(i, j, k)

    def phi_zero_beta(self, i: int, j: int, k: Optional[int], b: int) -> Money:
        be = self.state(j, b)
        X = self.dem(i, j) + be
        if k is None:
            return Fraction(0) if X == 0 else INF
        if k != i or X <= 0 or self.dem(i + 1, j) + be > self.u[i]:
            return INF
        return self.f[i] + self.p[i] * X + self._stock_cost(i, j, 0, {i: X})

    def phi_high_high(self, i: int, j: int, k: Optional[int]) -> Money:
        al, be = self.u[i - 1], self.u[j]
        dij = self.dem(i, j)
        if k is None:
            return self._stock_cost(i, j, al, {}) if al == dij + be else INF
        if k != j or not (dij + be > al > self.dem(i, j - 1)):
            return INF
        X = dij + be - al
        return self.f[j] + self.p[j] * X + self._stock_cost(i, j, al, {j: X})

    def phi_high_zero(self, i: int, j: int, k: Optional[int]) -> Money:
        al = self.u[i - 1]
        dij = self.dem(i, j)
        if k is None:
            return self._stock_cost(i, j, al, {}) if al == dij else INF
        if not (i <= k <= j) or not (dij > al > self.dem(i, k - 1)) or self.u[k] < self.dem(k + 1, j):
            return INF
        X = dij - al
        return self.f[k] + self.p[k] * X + self._stock_cost(i, j, al, {k: X})


@dataclass
class IbrTables:
    """Raw kernel output plus the scale that maps it back to money."""
    inst: Instance
    scale: int
    u: np.ndarray
    G: np.ndarray
    TS: np.ndarray
    BP: np.ndarray
    C: np.ndarray
    CB: np.ndarray
    WR: np.ndarray

    def _money(self, v) -> Money:
        v = int(v)
        return INF if v >= KINF else Fraction(v, self.scale)

    def g(self, t: int, i: int, j: int, a: int, b: int) -> Money:
        if not (1 <= i <= j <= self.inst.T) or t > j or t < 1:
            return INF
        return self._money(self.G[j, i, t, 2 * a + b])

    def t_star(self, t: int, i: int, j: int, a: int, b: int) -> int:
        return int(self.TS[j, i, t, 2 * a + b])

    def c(self, t: int, i: int, a: int, b: int) -> Money:
        if t > self.inst.T:
            return INF
        return self._money(self.C[t, i, 2 * a + b])

    @property
    def cost(self) -> Money:
        return self.c(1, 1, LOW, LOW)

    def w(self, t: int, i: int, j: int, k: int, a: int, g: int, b: int) -> Money:
        """Recorded w entry (needs ``record_w=True``); the supplier carry is added here."""
        if self.WR.shape[0] == 1:
            raise UsageError("w table not recorded; solve with record_w=True")
        if not (1 <= t <= k and i <= k < j):
            return INF
        raw = self._money(self.WR[j, i, k, 4 * a + 2 * g + b])
        if raw == INF:
            return INF
        m = BlockModel(self.inst)
        return raw + m.supplier_holding(t, k) * m.quantity(i, j, a, b)


def _prepare(inst: Instance) -> Instance:
    if inst.nls:
        raise UsageError("block DP does not handle no-lot-splitting instances")
    if inst.uS is not None:
        raise UsageError("block DP needs supplier bounds absent")
    if inst.uR is None:
        inst = inst.with_bounds(uR=(inst.total_demand,) * inst.T)
    return normalize_bounds(inst)


def ibr_solve_tables(inst: Instance, naive: bool = False, record_w: bool = False,
                     normalize: bool = True) -> IbrTables:
    """Fill every table. ``naive`` switches w and the leading no-order term to direct loops."""
    work, L, args = ibr_kernel_inputs(inst, normalize)
    G, TS, BP, C, CB, WR = ibr_tables(*args, bool(naive), bool(record_w))
    return IbrTables(work, L, args[-1], G, TS, BP, C, CB, WR)


def ibr_kernel_inputs(inst: Instance, normalize: bool = True) -> tuple:
    """``(work instance, scale, kernel arrays)``; the last array is the padded bound."""
    work = _prepare(inst) if normalize else inst
    if work.T >= 4096:
        raise UsageError("horizon too long for the packed backpointers (T < 4096)")
    if not is_normalized(work.d, work.uR):
        raise ContractError("retailer bounds violate u[t-1] <= u[t] + d[t]; normalize first")
    L = work.scale()
    arr = work.kernel_arrays(L)
    u = np.asarray([0, *work.uR, 0], dtype=np.int64)
    args = (arr["d"], arr["fR"], arr["pR"], arr["hR"], arr["fS"], arr["pS"], arr["hS"], u)
    return work, L, args


def _qty(P, u, i, j, a, b) -> int:
    return int(P[j] - P[i - 1] - (u[i - 1] if a else 0) + (u[j] if b else 0))


def walk_g(tab: IbrTables, t: int, i: int, j: int, a: int, b: int, xR: list) -> None:
    """Add the retailer orders of the G(t, i, j, a, b) optimum to ``xR`` (1-based)."""
    P = np.concatenate(([0], np.cumsum(tab.inst.d)))
    u = tab.u
    while True:
        word = int(tab.BP[j, i, t, 2 * a + b])
        tag = word & 7
        g = (word >> 3) & 1
        k = (word >> 4) & 0xFFF
        l = word >> 16
        if tag == 1:
            return
        if tag == 2:
            xR[k] += _qty(P, u, i, j, a, b)
            return
        if tag == 3:
            xR[k] += _qty(P, u, i, l, a, g)
            t, i, a = k, l + 1, g
            continue
        if tag == 4:
            i, a = l + 1, g
            continue
        raise RuntimeError(f"no finite subplan at G({t},{i},{j},{a},{b})")


def reconstruct(tab: IbrTables) -> Plan:
    T = tab.inst.T
    P = np.concatenate(([0], np.cumsum(tab.inst.d)))
    u = tab.u
    xR = [0] * (T + 2)
    xS = [0] * (T + 2)
    t, i, a, b = 1, 1, LOW, LOW
    while i <= T:
        word = int(tab.CB[t, i, 2 * a + b])
        tag = word & 7
        if tag == 4:
            walk_g(tab, t, i, T, a, b, xR)
            break
        if tag == 1:
            t += 1
            continue
        if tag == 2:
            xS[t] += _qty(P, u, i, T, a, b)
            walk_g(tab, t, i, T, a, b, xR)
            break
        if tag == 3:
            g = (word >> 3) & 1
            l = word >> 16
            xS[t] += _qty(P, u, i, l, a, g)
            walk_g(tab, t, i, l, a, g, xR)
            t, i, a = int(tab.TS[l, i, t, 2 * a + g]) + 1, l + 1, g
            continue
        raise RuntimeError(f"no finite plan at C({t},{i},{a},{b})")
    return Plan.from_orders(tab.inst, xR[1:T + 1], xS[1:T + 1])


def solve_ibr(inst: Instance, naive: bool = False) -> tuple:
    """Optimal cost and plan for a retailer-bounded instance (supplier unbounded)."""
    if inst.nls or inst.uS is not None or inst.uR is None:
        raise UsageError("solve_ibr needs uR set, uS absent and nls false")
    tab = ibr_solve_tables(inst, naive=naive)
    cost = tab.cost
    plan = reconstruct(tab)
    if evaluate_cost(inst, plan) != cost or not check_feasibility(inst, plan):
        raise RuntimeError("reconstructed plan does not match the table optimum")
    return cost, plan


# direct and incremental w, used to audit the kernel

def compute_w(model: BlockModel, tab: IbrTables, t: int, i: int, j: int, k: int,
              a: int, g: int, b: int) -> Money:
    """w by direct minimisation over the split point l of the first block."""
    if not (1 <= t <= k and i <= k < j):
        return INF
    carry = model.supplier_holding(t, k) * model.quantity(i, j, a, b)
    best = INF
    for l in range(k, j):
        phi = model.phi(i, l, k, a, g)
        rest = tab.g(k, l + 1, j, g, b)
        if phi == INF or rest == INF:
            continue
        best = min(best, phi + rest + carry)
    return best


def delta_one(model: BlockModel, i: int, k: int) -> Fraction:
    """Shift of the high-start w when the first block grows from i to i-1."""
    u, d, h, p = model.u, model.d, model.h, model.p
    shift = u[i - 1] - u[i - 2] + d[i - 1]
    return h[i - 1] * u[i - 1] + (p[k] - sum(h[i - 1:k], Fraction(0))) * shift


def delta_two(model: BlockModel, i: int, k: int) -> Fraction:
    """Shift for a first block that had no order at i and gets one at i-1."""
    return model.f[k] + delta_one(model, i, k)


class WChain:
    """High-start w values for fixed (j, k, b) as the first block grows leftwards.

    The state is an offset that moves by ``delta_one`` per step plus the
    minimum of an l-dependent term over a window of admissible split points
    that only ever grows. Split points entering exactly at the old threshold
    are the former no-order first blocks; relative to their old no-order
    cost they enter shifted by ``delta_two``.
    """

    def __init__(self, model: BlockModel, tab: IbrTables, j: int, k: int, b: int):
        self.m, self.tab, self.j, self.k, self.b = model, tab, j, k, b
        m = model
        self.i = k
        self.offset = m.f[k] - m.p[k] * m.u[k - 1]
        self.threshold = m.u[k - 1]
        hi = k
        while hi + 1 <= j - 1 and m.dem(k + 1, hi + 1) <= m.u[k]:
            hi += 1
        self.lo = hi + 1
        self.best = INF
        self._extend()

    def _q(self, l: int) -> Money:
        m = self.m
        rest = self.tab.g(self.k, l + 1, self.j, LOW, self.b)
        if rest == INF:
            return INF
        k = self.k
        fill = sum((m.h[n] * m.dem(n + 1, l) for n in range(k, l)), Fraction(0))
        return m.p[k] * m.dem(k, l) + fill + rest

    def _extend(self) -> None:
        if self.threshold <= 0:
            return
        while self.lo - 1 >= self.k and self.m.dem(self.k, self.lo - 1) > self.threshold:
            self.lo -= 1
            self.best = min(self.best, self._q(self.lo))

    def step(self) -> None:
        """Move from i to i-1."""
        if self.i <= 1:
            raise ContractError("chain already starts at period 1")
        m, i = self.m, self.i
        shift = m.u[i - 1] - m.u[i - 2] + m.d[i - 1]
        if shift < 0:
            raise ContractError("bounds not normalized")
        self.offset += delta_one(m, i, self.k)
        self.threshold -= shift
        self.i -= 1
        self._extend()

    def value(self, t: int, g: int) -> Money:
        m, i, j, k, b = self.m, self.i, self.j, self.k, self.b
        if self.threshold <= 0 or t > k:
            return INF
        carry = m.supplier_holding(t, k) * m.quantity(i, j, HIGH, b)
        if g == LOW:
            return INF if self.best == INF else self.offset + self.best + carry
        if m.d[k] + m.u[k] <= self.threshold:
            return INF
        rest = self.tab.g(k, k + 1, j, HIGH, b)
        if rest == INF:
            return INF
        return self.offset + m.p[k] * (m.d[k] + m.u[k]) + m.h[k] * m.u[k] + rest + carry


def incremental_w(chain: WChain, t: int, g: int) -> Money:
    """Advance ``chain`` by one period and return the new w(t, i-1, j, k, high, g, b)."""
    chain.step()
    return chain.value(t, g)


def block_structure_violations(inst: Instance, plan: Plan) -> list:
    """Supplier orders while stocked, and retailer runs with two orders between regular points."""
    out = []
    T = inst.T
    u = inst.uR
    prev = 0
    for t in range(T):
        if plan.xS[t] > 0 and prev > 0:
            out.append(("supplier-zio", t + 1))
        prev = plan.sS[t]
    count = 0
    start = 1
    for t in range(T):
        if plan.xR[t] > 0:
            count += 1
        s = plan.sR[t]
        if s == 0 or (u is not None and s == u[t]) or t == T - 1:
            if count > 1:
                out.append(("block-orders", start))
            count = 0
            start = t + 2
    return out
