"""Hardness constructions as executable instance generators.

Each construction returns a ``ReductionCertificate``: the source instance,
the produced lot-sizing instance, and a cost threshold such that the
produced optimum is at most the threshold exactly when the source is a
YES-instance. Witnesses are attached when one exists so tests can rebuild
the matching zero-slack plan.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from .core import Instance, LevelCosts, Plan, SingleLevelInstance, UsageError
from .money import Money

CLAIM = "optimal cost <= threshold iff the source instance is a YES-instance"


@dataclass(frozen=True)
class ReductionCertificate:
    source: str
    params: dict
    produced: object
    threshold: Money
    witness: Optional[tuple] = None
    claim: str = CLAIM

    @property
    def is_yes(self) -> bool:
        return self.witness is not None


# ------------------------------------------------------------- subset sum

def subset_sum_witness(S: int, a: Sequence[int]) -> Optional[tuple]:
    """Indices (0-based) of a subset summing to S, or None."""
    reach = {0: ()}
    for i, v in enumerate(a):
        for tot, idx in list(reach.items()):
            nt = tot + v
            if nt <= S and nt not in reach:
                reach[nt] = idx + (i,)
    return reach.get(S)


def subset_sum_to_ibs(S: int, a: Sequence[int]) -> ReductionCertificate:
    """Supplier-bounded instance with ``T = 2n+1`` whose optimum is at most S iff some subset sums to S.

    Period pairs (2i-1, 2i) belong to item i: the supplier may buy up to
    ``a_i`` units at the odd period at an average unit cost of exactly 1
    only when buying the full ``a_i``, and must hand them to the retailer
    at the even period.
    """
    a = [int(v) for v in a]
    if not a:
        raise UsageError("subset sum needs at least one item")
    if any(v < 1 for v in a):
        raise UsageError("subset-sum items must be positive integers")
    if S < 1:
        raise UsageError("subset-sum target must be at least 1")
    n = len(a)
    T = 2 * n + 1
    big = Fraction(2 * S)
    d = [0] * (T - 1) + [S]
    fS, fR, pS, uS = [], [], [], []
    for t in range(1, T):
        item = a[(t + 1) // 2 - 1]
        odd = t % 2 == 1
        fS.append(Fraction(1) if odd else big)
        fR.append(big if odd else Fraction(0))
        pS.append(1 - Fraction(1, item))
        uS.append(item)
    fS.append(big)
    fR.append(big)
    pS.append(Fraction(0))
    uS.append(0)
    zero = [Fraction(0)] * T
    inst = Instance(T, tuple(d), LevelCosts(tuple(fR), tuple(zero), tuple(zero)),
                    LevelCosts(tuple(fS), tuple(pS), tuple(zero)), uS=tuple(uS))
    return ReductionCertificate("subset-sum", {"S": S, "a": tuple(a)}, inst, Fraction(S),
                                subset_sum_witness(S, a))


def subset_sum_plan(cert: ReductionCertificate) -> Plan:
    """Plan of cost S built from the witness: buy a_i at 2i-1, pass it on at 2i."""
    if cert.witness is None:
        raise UsageError("certificate has no witness")
    inst = cert.produced
    xS = [0] * inst.T
    xR = [0] * inst.T
    for i in cert.witness:
        v = cert.params["a"][i]
        xS[2 * i] = v
        xR[2 * i + 1] = v
    return Plan.from_orders(inst, xR, xS)


def odd_period_order_cost(cert: ReductionCertificate, item: int, x: int) -> Money:
    """Supplier cost of ordering ``x`` units in the odd period of ``item`` (0-based)."""
    inst = cert.produced
    t = 2 * item
    if x == 0:
        return Fraction(0)
    return inst.supplier.f[t] + inst.supplier.p[t] * x


# ------------------------------------------------------------ 3-partition

def _check_three_partition(b: int, a: Sequence[int]) -> int:
    if b < 1 or not a or len(a) % 3:
        raise UsageError("3-partition needs b >= 1 and 3m integers")
    m = len(a) // 3
    if sum(a) != m * b:
        raise UsageError(f"items must sum to m*b = {m * b}, got {sum(a)}")
    bad = [v for v in a if not (b < 4 * v and 2 * v < b)]
    if bad:
        raise UsageError(f"items must lie strictly between b/4 and b/2: {bad}")
    return m


def three_partition_witness(b: int, a: Sequence[int]) -> Optional[tuple]:
    """Triples of 0-based indices, each summing to b, or None."""
    left = list(range(len(a)))
    groups: list = []

    def fill() -> bool:
        if not left:
            return True
        first = left.pop(0)
        for j in range(len(left)):
            for k in range(j + 1, len(left)):
                if a[first] + a[left[j]] + a[left[k]] == b:
                    pj, pk = left[j], left[k]
                    rest = [x for x in left if x not in (pj, pk)]
                    saved = left[:]
                    left[:] = rest
                    groups.append((first, pj, pk))
                    if fill():
                        return True
                    groups.pop()
                    left[:] = saved
        left.insert(0, first)
        return False

    return tuple(groups) if fill() else None


def three_partition_to_uls_ib_nls(b: int, a: Sequence[int]) -> ReductionCertificate:
    """Single-level NLS instance with ``T = 5m`` whose optimum is 0 iff a 3-partition exists.

    Odd periods of the first 2m are the only free order slots. The even
    demands ``(m - t/2) b`` together with the stationary bound ``mb`` force
    each free slot to buy exactly b units for the tail demands ``a_i``.
    """
    a = [int(v) for v in a]
    m = _check_three_partition(b, a)
    T = 5 * m
    d, f = [], []
    for t in range(1, T + 1):
        if t <= 2 * m:
            d.append(0 if t % 2 else (m - t // 2) * b)
            f.append(0 if t % 2 else 1)
        else:
            d.append(a[t - 2 * m - 1])
            f.append(1)
    uls = SingleLevelInstance.make(d, f=f, p=0, h=0, u=m * b, nls=True)
    return ReductionCertificate("3-partition", {"b": b, "a": tuple(a)}, uls, Fraction(0),
                                three_partition_witness(b, a))


def three_partition_plan(cert: ReductionCertificate) -> tuple:
    """Zero-cost NLS order vector and assignment built from the witness.

    Returns ``(x, assignment)`` over the single-level instance.
    """
    if cert.witness is None:
        raise UsageError("certificate has no witness")
    uls = cert.produced
    m = len(cert.witness)
    x = [0] * uls.T
    assignment = []
    for j, group in enumerate(cert.witness):
        slot = 2 * j + 1
        if uls.d[slot] > 0:
            x[slot - 1] += uls.d[slot]
            assignment.append((slot + 1, slot))
        for i in group:
            x[slot - 1] += uls.d[2 * m + i]
            assignment.append((2 * m + i + 1, slot))
    return x, tuple(sorted(assignment))


def three_partition_instances(m_max: int, b_max: int) -> Iterator[tuple]:
    """Every valid ``(b, a)`` with ``m <= m_max`` and ``b <= b_max``; ``a`` is a sorted multiset."""
    for m in range(1, m_max + 1):
        for b in range(1, b_max + 1):
            items = [v for v in range(b // 4 + 1, b) if 2 * v < b and 4 * v > b]
            for combo in itertools.combinations_with_replacement(items, 3 * m):
                if sum(combo) == m * b:
                    yield b, combo


# ------------------------------------------------------------- embeddings

def embed_nls_retailer(uls: SingleLevelInstance) -> Instance:
    """Retailer carries the single-level data; the supplier is free and unbounded."""
    return Instance(uls.T, uls.d, LevelCosts(uls.f, uls.p, uls.h), LevelCosts.zero(uls.T),
                    uR=uls.u, nls=True)


def holding_penalty(uls: SingleLevelInstance) -> Fraction:
    return sum(uls.h, Fraction(0)) + sum(uls.p, Fraction(0))


def embed_nls_supplier(uls: SingleLevelInstance) -> Instance:
    """Supplier carries the single-level data; retailer orders are free but stock is charged heavily."""
    M = holding_penalty(uls)
    T = uls.T
    retailer = LevelCosts.of(T, f=0, p=0, h=M)
    return Instance(T, uls.d, retailer, LevelCosts(uls.f, uls.p, uls.h), uS=uls.u, nls=True)


def embed_nls_both(uls: SingleLevelInstance) -> Instance:
    """Supplier embedding plus a retailer bound equal to total demand."""
    inst = embed_nls_supplier(uls)
    return inst.with_bounds(uR=(sum(uls.d),) * uls.T)
