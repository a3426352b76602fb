"""Jitted min-cost flow on the two-level network and setup-pattern search.

Nodes: 0 source, 1..T supplier periods, T+1..2T retailer periods, 2T+1 sink.
Arc e is stored as residual pair (2e forward, 2e+1 backward). Arc groups:
  e in [0, T)        source -> S_t        (order at supplier)
  e in [T, 2T)       S_t -> R_t           (order at retailer)
  e in [2T, 3T-1)    S_t -> S_{t+1}       (supplier stock)
  e in [3T-1, 4T-2)  R_t -> R_{t+1}       (retailer stock)
  e in [4T-2, 5T-2)  R_t -> sink          (demand)
"""
from __future__ import annotations

import numpy as np

from ._jit import INF, njit


@njit(cache=True)
def build_arcs(T, d, pR, hR, pS, hS):
    E = 5 * T - 2
    afrom = np.zeros(2 * E, dtype=np.int64)
    ato = np.zeros(2 * E, dtype=np.int64)
    acost = np.zeros(2 * E, dtype=np.int64)
    for t in range(1, T + 1):
        e = t - 1
        afrom[2 * e] = 0
        ato[2 * e] = t
        acost[2 * e] = pS[t]
        e = T + t - 1
        afrom[2 * e] = t
        ato[2 * e] = T + t
        acost[2 * e] = pR[t]
        if t < T:
            e = 2 * T + t - 1
            afrom[2 * e] = t
            ato[2 * e] = t + 1
            acost[2 * e] = hS[t]
            e = 3 * T - 1 + t - 1
            afrom[2 * e] = T + t
            ato[2 * e] = T + t + 1
            acost[2 * e] = hR[t]
        e = 4 * T - 2 + t - 1
        afrom[2 * e] = T + t
        ato[2 * e] = 2 * T + 1
        acost[2 * e] = 0
    for e in range(E):
        afrom[2 * e + 1] = ato[2 * e]
        ato[2 * e + 1] = afrom[2 * e]
        acost[2 * e + 1] = -acost[2 * e]
    return afrom, ato, acost


@njit(cache=True)
def set_caps(T, d, capR, capS, yR, yS, zio, D, cap):
    # residual capacities for one setup pattern (yR, yS are 1-based 0/1)
    for a in range(cap.shape[0]):
        cap[a] = 0
    for t in range(1, T + 1):
        if yS[t]:
            cap[2 * (t - 1)] = D
        if yR[t]:
            cap[2 * (T + t - 1)] = D
        if t < T:
            if not (zio and yS[t + 1]):
                cap[2 * (2 * T + t - 1)] = capS[t]
            if not (zio and yR[t + 1]):
                cap[2 * (3 * T - 1 + t - 1)] = capR[t]
        cap[2 * (4 * T - 2 + t - 1)] = d[t]


@njit(cache=True)
def ssp(nv, afrom, ato, acost, cap, need, src, sink, dist, pred):
    """Successive shortest paths with Bellman-Ford; returns INF when demand cannot be met."""
    flow = 0
    total = 0
    na = afrom.shape[0]
    while flow < need:
        for v in range(nv):
            dist[v] = INF
            pred[v] = -1
        dist[src] = 0
        for _ in range(nv):
            changed = False
            for a in range(na):
                if cap[a] > 0:
                    du = dist[afrom[a]]
                    if du < INF:
                        nd = du + acost[a]
                        if nd < dist[ato[a]]:
                            dist[ato[a]] = nd
                            pred[ato[a]] = a
                            changed = True
            if not changed:
                break
        if dist[sink] >= INF:
            return INF
        push = need - flow
        v = sink
        while v != src:
            a = pred[v]
            if cap[a] < push:
                push = cap[a]
            v = afrom[a]
        v = sink
        while v != src:
            a = pred[v]
            cap[a] -= push
            cap[a ^ 1] += push
            v = afrom[a]
        flow += push
        total += push * dist[sink]
    return total


@njit(cache=True)
def pattern_flow(T, d, pR, hR, pS, hS, capR, capS, yR, yS, zio):
    D = 0
    for t in range(1, T + 1):
        D += d[t]
    afrom, ato, acost = build_arcs(T, d, pR, hR, pS, hS)
    cap = np.zeros(afrom.shape[0], dtype=np.int64)
    set_caps(T, d, capR, capS, yR, yS, zio, D, cap)
    nv = 2 * T + 2
    dist = np.zeros(nv, dtype=np.int64)
    pred = np.zeros(nv, dtype=np.int64)
    cost = ssp(nv, afrom, ato, acost, cap, D, 0, 2 * T + 1, dist, pred)
    # flow on a forward arc equals the residual capacity of its backward twin
    flows = np.zeros(afrom.shape[0] // 2, dtype=np.int64)
    for e in range(flows.shape[0]):
        flows[e] = cap[2 * e + 1]
    return cost, flows


@njit(cache=True)
def search_patterns(T, d, fR, pR, hR, fS, pS, hS, capR, capS, zio, upper, lower):
    """Best setup pattern strictly cheaper than ``upper``; -1 if none.

    Patterns are visited in Gray-code order so the fixed cost updates in
    O(1); a pattern is skipped when its fixed cost plus ``lower`` (the
    all-open flow cost) cannot beat the incumbent.
    """
    D = 0
    for t in range(1, T + 1):
        D += d[t]
    afrom, ato, acost = build_arcs(T, d, pR, hR, pS, hS)
    cap = np.zeros(afrom.shape[0], dtype=np.int64)
    nv = 2 * T + 2
    dist = np.zeros(nv, dtype=np.int64)
    pred = np.zeros(nv, dtype=np.int64)
    yR = np.zeros(T + 2, dtype=np.int64)
    yS = np.zeros(T + 2, dtype=np.int64)
    # bit b < T is yS[b+1], bit T+b is yR[b+1]
    best = upper
    best_pat = -1
    pat = 0
    fixed = 0
    total = 1 << (2 * T)
    for g in range(total):
        if g > 0:
            bit = 0
            while not (g >> bit) & 1:
                bit += 1
            pat ^= 1 << bit
            on = (pat >> bit) & 1
            if bit < T:
                yS[bit + 1] = on
                delta = fS[bit + 1]
            else:
                yR[bit - T + 1] = on
                delta = fR[bit - T + 1]
            if on:
                fixed += delta
            else:
                fixed -= delta
        if fixed + lower >= best:
            continue
        set_caps(T, d, capR, capS, yR, yS, zio, D, cap)
        c = ssp(nv, afrom, ato, acost, cap, D, 0, 2 * T + 1, dist, pred)
        if c >= INF:
            continue
        if fixed + c < best:
            best = fixed + c
            best_pat = pat
    return best, best_pat
