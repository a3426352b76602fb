"""Instances, plans, cost evaluation and feasibility checks.

Periods are 1-based in every public index argument (``i``, ``j``, ``t``)
and in NLS assignments; vectors are plain 0-based tuples of length T.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .money import Money, check_scale, common_scale, scaled


class LotSizingError(Exception):
    pass


class DimensionError(LotSizingError, ValueError):
    pass


class UsageError(LotSizingError, ValueError):
    pass


class ContractError(LotSizingError, ValueError):
    pass


def _money_vec(values, T: int, name: str) -> tuple:
    if isinstance(values, (int, Fraction, str)):
        values = [values] * T
    out = tuple(Fraction(v) for v in values)
    if len(out) != T:
        raise DimensionError(f"{name}: expected {T} entries, got {len(out)}")
    if any(v < 0 for v in out):
        raise ValueError(f"{name}: costs must be nonnegative")
    return out


def _int_vec(values, T: int, name: str) -> Optional[tuple]:
    if values is None:
        return None
    if isinstance(values, int):
        values = [values] * T
    out = tuple(int(v) for v in values)
    if len(out) != T:
        raise DimensionError(f"{name}: expected {T} entries, got {len(out)}")
    if any(v < 0 for v in out):
        raise ValueError(f"{name}: must be nonnegative")
    return out


@dataclass(frozen=True)
class LevelCosts:
    f: tuple
    p: tuple
    h: tuple

    @classmethod
    def of(cls, T: int, f=0, p=0, h=0) -> "LevelCosts":
        return cls(_money_vec(f, T, "f"), _money_vec(p, T, "p"), _money_vec(h, T, "h"))

    @classmethod
    def zero(cls, T: int) -> "LevelCosts":
        return cls.of(T)

    def is_zero(self) -> bool:
        return not any(self.f) and not any(self.p) and not any(self.h)


@dataclass(frozen=True)
class Instance:
    T: int
    d: tuple
    retailer: LevelCosts
    supplier: LevelCosts
    uR: Optional[tuple] = None
    uS: Optional[tuple] = None
    nls: bool = False

    def __post_init__(self):
        T = self.T
        if T < 1:
            raise ValueError("T must be at least 1")
        object.__setattr__(self, "d", _int_vec(self.d, T, "d"))
        object.__setattr__(self, "uR", _int_vec(self.uR, T, "uR"))
        object.__setattr__(self, "uS", _int_vec(self.uS, T, "uS"))
        for name in ("retailer", "supplier"):
            lc = getattr(self, name)
            object.__setattr__(self, name, LevelCosts(
                _money_vec(lc.f, T, f"{name}.f"),
                _money_vec(lc.p, T, f"{name}.p"),
                _money_vec(lc.h, T, f"{name}.h")))
        object.__setattr__(self, "nls", bool(self.nls))

    @classmethod
    def make(cls, d: Sequence[int], *, fR=0, pR=0, hR=0, fS=0, pS=0, hS=0,
             uR=None, uS=None, nls=False) -> "Instance":
        """Keyword constructor; scalar costs and bounds broadcast over T."""
        T = len(d)
        return cls(T, tuple(d), LevelCosts.of(T, fR, pR, hR), LevelCosts.of(T, fS, pS, hS),
                   uR=uR if not isinstance(uR, int) else (uR,) * T,
                   uS=uS if not isinstance(uS, int) else (uS,) * T, nls=nls)

    @property
    def total_demand(self) -> int:
        return sum(self.d)

    def with_bounds(self, uR=..., uS=...) -> "Instance":
        kw = {}
        if uR is not ...:
            kw["uR"] = uR
        if uS is not ...:
            kw["uS"] = uS
        return replace(self, **kw)

    def scale(self) -> int:
        """LCM of all cost denominators; kernels work on costs times this."""
        vals = (*self.retailer.f, *self.retailer.p, *self.retailer.h,
                *self.supplier.f, *self.supplier.p, *self.supplier.h)
        L = common_scale(vals)
        D = self.total_demand
        bound = sum(self.retailer.f) + sum(self.supplier.f)
        bound += (sum(self.retailer.p) + sum(self.retailer.h)
                  + sum(self.supplier.p) + sum(self.supplier.h)) * max(D, 1) * 2
        check_scale(bound, L)
        return L

    def kernel_arrays(self, scale: int) -> dict:
        """1-based int64 arrays of length T+2 for the jitted kernels."""
        r, s = self.retailer, self.supplier
        return {
            "d": np.asarray([0, *self.d, 0], dtype=np.int64),
            "fR": scaled(r.f, scale), "pR": scaled(r.p, scale), "hR": scaled(r.h, scale),
            "fS": scaled(s.f, scale), "pS": scaled(s.p, scale), "hS": scaled(s.h, scale),
        }


@dataclass(frozen=True)
class SingleLevelInstance:
    """Single-level lot sizing with inventory bounds (and optional NLS)."""
    T: int
    d: tuple
    f: tuple
    p: tuple
    h: tuple
    u: Optional[tuple] = None
    nls: bool = True

    def __post_init__(self):
        T = self.T
        object.__setattr__(self, "d", _int_vec(self.d, T, "d"))
        object.__setattr__(self, "u", _int_vec(self.u, T, "u"))
        for name in ("f", "p", "h"):
            object.__setattr__(self, name, _money_vec(getattr(self, name), T, name))

    @classmethod
    def make(cls, d, *, f=0, p=0, h=0, u=None, nls=True) -> "SingleLevelInstance":
        T = len(d)
        if isinstance(u, int):
            u = (u,) * T
        return cls(T, tuple(d), _money_vec(f, T, "f"), _money_vec(p, T, "p"),
                   _money_vec(h, T, "h"), u, nls)


@dataclass(frozen=True)
class Plan:
    xR: tuple
    xS: tuple
    sR: tuple
    sS: tuple
    yR: tuple
    yS: tuple
    assignment: Optional[tuple] = None

    @classmethod
    def from_orders(cls, inst: Instance, xR, xS, assignment=None) -> "Plan":
        """Inventories follow from flow balance; setups are x > 0."""
        xR = tuple(int(v) for v in xR)
        xS = tuple(int(v) for v in xS)
        if len(xR) != inst.T or len(xS) != inst.T:
            raise DimensionError("order vectors must have length T")
        sR, sS = [], []
        r = s = 0
        for t in range(inst.T):
            r += xR[t] - inst.d[t]
            s += xS[t] - xR[t]
            sR.append(r)
            sS.append(s)
        if assignment is not None:
            assignment = tuple(sorted((int(t), int(k)) for t, k in assignment))
        return cls(xR, xS, tuple(sR), tuple(sS), tuple(v > 0 for v in xR),
                   tuple(v > 0 for v in xS), assignment)

    @classmethod
    def order_as_needed(cls, inst: Instance) -> "Plan":
        assign = tuple((t + 1, t + 1) for t in range(inst.T) if inst.d[t] > 0) if inst.nls else None
        return cls.from_orders(inst, inst.d, inst.d, assign)


@dataclass(frozen=True)
class Violation:
    constraint: str
    period: int
    detail: str = ""


@dataclass(frozen=True)
class FeasibilityReport:
    violations: tuple = field(default_factory=tuple)

    @property
    def feasible(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.feasible


def _check_dims(inst: Instance, plan: Plan) -> None:
    for name in ("xR", "xS", "sR", "sS", "yR", "yS"):
        if len(getattr(plan, name)) != inst.T:
            raise DimensionError(f"plan.{name} has length {len(getattr(plan, name))}, expected {inst.T}")


def evaluate_cost(inst: Instance, plan: Plan) -> Fraction:
    _check_dims(inst, plan)
    r, s = inst.retailer, inst.supplier
    total = Fraction(0)
    for t in range(inst.T):
        total += (s.f[t] * plan.yS[t] + s.p[t] * plan.xS[t] + s.h[t] * plan.sS[t]
                  + r.f[t] * plan.yR[t] + r.p[t] * plan.xR[t] + r.h[t] * plan.sR[t])
    return total


def check_feasibility(inst: Instance, plan: Plan) -> FeasibilityReport:
    try:
        _check_dims(inst, plan)
    except DimensionError as exc:
        return FeasibilityReport((Violation("dimension", 0, str(exc)),))
    out = []
    prevR = prevS = 0
    for t in range(inst.T):
        n = t + 1
        xR, xS, sR, sS = plan.xR[t], plan.xS[t], plan.sR[t], plan.sS[t]
        for name, val in (("xR", xR), ("xS", xS), ("sR", sR), ("sS", sS)):
            if val < 0:
                out.append(Violation("nonneg", n, f"{name}={val}"))
        if prevR + xR != inst.d[t] + sR:
            out.append(Violation("flow-R", n, f"{prevR}+{xR} != {inst.d[t]}+{sR}"))
        if prevS + xS != xR + sS:
            out.append(Violation("flow-S", n, f"{prevS}+{xS} != {xR}+{sS}"))
        if xR > 0 and not plan.yR[t]:
            out.append(Violation("setup-R", n, f"xR={xR} without setup"))
        if xS > 0 and not plan.yS[t]:
            out.append(Violation("setup-S", n, f"xS={xS} without setup"))
        if inst.uR is not None and sR > inst.uR[t]:
            out.append(Violation("bound-R", n, f"{sR} > {inst.uR[t]}"))
        if inst.uS is not None and sS > inst.uS[t]:
            out.append(Violation("bound-S", n, f"{sS} > {inst.uS[t]}"))
        prevR, prevS = sR, sS
    if inst.nls:
        out.extend(_check_assignment(inst.d, plan.xR, plan.assignment))
    return FeasibilityReport(tuple(out))


def _check_assignment(d, xR, assignment) -> list:
    if assignment is None:
        return [Violation("nls", 0, "missing assignment")]
    out = []
    T = len(d)
    seen = {}
    load = [0] * T
    for t, k in assignment:
        if not (1 <= k <= t <= T):
            out.append(Violation("nls", t, f"order period {k} not in [1, {t}]"))
            continue
        if t in seen:
            out.append(Violation("nls", t, f"demand split over periods {seen[t]} and {k}"))
            continue
        seen[t] = k
        load[k - 1] += d[t - 1]
    for t in range(1, T + 1):
        if d[t - 1] > 0 and t not in seen:
            out.append(Violation("nls", t, "positive demand not assigned"))
    for k in range(T):
        if load[k] != xR[k]:
            out.append(Violation("nls", k + 1, f"assigned {load[k]} != xR {xR[k]}"))
    return out


def _backward_min(u: tuple, step: Sequence[int]) -> tuple:
    out = list(u)
    for t in range(len(out) - 1, 0, -1):
        out[t - 1] = min(out[t - 1], out[t] + step[t])
    return tuple(out)


def normalize_bounds(inst: Instance, supplier: bool = False) -> Instance:
    """Tighten bounds with the backward pass ``u[t-1] = min(u[t-1], u[t] + d[t])``.

    The retailer pass never changes the feasible set. The supplier pass is
    opt-in and uses the largest possible retailer order of the next period
    (``min(d_t + uR_t, d_tT)``) as its step, which keeps it valid whether or
    not the retailer is bounded.
    """
    out = inst
    if inst.uR is not None:
        out = replace(out, uR=_backward_min(inst.uR, inst.d))
    if supplier and inst.uS is not None:
        MR, _ = tightened_big_m(out)
        out = replace(out, uS=_backward_min(inst.uS, MR))
    return out


def is_normalized(d: Sequence[int], u: Sequence[int]) -> bool:
    return all(u[t - 1] <= u[t] + d[t] for t in range(1, len(u)))


class CumDemand:
    """Prefix sums; ``between(i, j)`` is the demand of periods i..j (1-based)."""

    def __init__(self, d: Sequence[int]):
        self.T = len(d)
        self.prefix = [0]
        for v in d:
            self.prefix.append(self.prefix[-1] + v)

    def between(self, i: int, j: int) -> int:
        if i > j:
            return 0
        return self.prefix[j] - self.prefix[i - 1]

    def suffix(self, t: int) -> int:
        return self.between(t, self.T)

    __call__ = between


def cum_demand(inst) -> CumDemand:
    return CumDemand(inst.d)


def tightened_big_m(inst: Instance) -> tuple:
    cd = cum_demand(inst)
    T = inst.T
    MR, MS = [], []
    for t in range(1, T + 1):
        rest = cd.suffix(t)
        dt = inst.d[t - 1]
        uR = inst.uR[t - 1] if inst.uR is not None else None
        uS = inst.uS[t - 1] if inst.uS is not None else None
        MR.append(rest if uR is None else min(dt + uR, rest))
        MS.append(rest if (uR is None or uS is None) else min(dt + uS + uR, rest))
    return tuple(MR), tuple(MS)


def variant(inst: Instance) -> str:
    if inst.nls:
        return "nls"
    if inst.uR is not None and inst.uS is None:
        return "ibr"
    return "ibsr"


def cost_upper_bound(inst: Instance) -> Money:
    return evaluate_cost(inst, Plan.order_as_needed(inst))
