"""Jitted tables for the retailer-bounded block DP.

All arrays are 1-based with length T+2 and hold costs scaled to int64.
Layouts:
  G, TS, BP : [j, i, t, 2*a + b]   (a, b = boundary state low/high)
  C, CB     : [t, i, 2*a + b]      (end period fixed at T)
  W record  : [j, i, k, 4*a + 2*g + b], t-free part of w

Backpointer words pack ``tag | g << 3 | k << 4 | l << 16`` (T < 4096).
G tags: 1 no order, 2 single block ordered at k, 3 first block [i, l]
ordered at k then G(k, l+1, j), 4 leading no-order block [i, l] then
G(t, l+1, j). C tags: 1 skip t, 2 full supplier order, 3 partial order
covering [i, l], 4 nothing to order.
"""
from __future__ import annotations

import numpy as np

from ._jit import INF, njit


@njit(cache=True)
def prefix_tables(d, hR, hS):
    n = d.shape[0]
    pre = np.zeros((4, n), dtype=np.int64)
    for t in range(1, n):
        pre[0, t] = pre[0, t - 1] + d[t]
        pre[1, t] = pre[1, t - 1] + hR[t]
        pre[2, t] = pre[2, t - 1] + hR[t] * pre[0, t]
        pre[3, t] = pre[3, t - 1] + hS[t]
    return pre


@njit(cache=True)
def hold_drain(P, HR, HP, i, k, al):
    # sum_{n=i}^{k-1} hR_n (al - d_{i..n})
    return (al + P[i - 1]) * (HR[k - 1] - HR[i - 1]) - (HP[k - 1] - HP[i - 1])


@njit(cache=True)
def hold_fill(P, HR, HP, k, j):
    # sum_{n=k}^{j-1} hR_n d_{n+1..j}
    return P[j] * (HR[j - 1] - HR[k - 1]) - (HP[j - 1] - HP[k - 1])


@njit(cache=True)
def phi_order(P, HR, HP, fR, pR, hR, u, i, j, k, a, b):
    dij = P[j] - P[i - 1]
    if a == 0:
        be = u[j] if b == 1 else 0
        X = dij + be
        if k != i or X <= 0 or (P[j] - P[i]) + be > u[i]:
            return INF
        return fR[i] + pR[i] * X + hold_fill(P, HR, HP, i, j) + be * (HR[j] - HR[i - 1])
    al = u[i - 1]
    if b == 1:
        be = u[j]
        if k != j or not (dij + be > al and al > P[j - 1] - P[i - 1]):
            return INF
        return fR[j] + pR[j] * (dij - al + be) + hold_drain(P, HR, HP, i, j, al) + hR[j] * be
    if k < i or k > j or not (dij > al and al > P[k - 1] - P[i - 1] and u[k] >= P[j] - P[k]):
        return INF
    return fR[k] + pR[k] * (dij - al) + hold_drain(P, HR, HP, i, k, al) + hold_fill(P, HR, HP, k, j)


@njit(cache=True)
def phi_none(P, HR, HP, u, i, j, a, b):
    al = u[i - 1] if a == 1 else 0
    be = u[j] if b == 1 else 0
    dij = P[j] - P[i - 1]
    if a == 0:
        return 0 if dij + be == 0 else INF
    if al != dij + be:
        return INF
    return hold_drain(P, HR, HP, i, j + 1 if b == 1 else j, al)


@njit(cache=True)
def _extend(P, HR, HP, pR, G, j, k, TH, LO, QB, QL, QT, TS):
    # admit l < LO[k] while d_{k..l} exceeds the threshold, tracking min of Q
    lo = LO[k]
    while lo - 1 >= k and P[lo - 1] - P[k - 1] > TH[k]:
        lo -= 1
        base = pR[k] * (P[lo] - P[k - 1]) + hold_fill(P, HR, HP, k, lo)
        for b in range(2):
            gv = G[j, lo + 1, k, b]
            if gv >= INF:
                continue
            q = base + gv
            ts = TS[j, lo + 1, k, b]
            if q < QB[k, b] or (q == QB[k, b] and ts <= QT[k, b]):
                QB[k, b] = q
                QL[k, b] = lo
                QT[k, b] = ts
    LO[k] = lo


@njit(cache=True)
def ibr_tables(d, fR, pR, hR, fS, pS, hS, u, naive, record):
    T = d.shape[0] - 2
    pre = prefix_tables(d, hR, hS)
    P = pre[0].copy()
    HRP = pre[1].copy()
    HPP = pre[2].copy()
    HSP = pre[3].copy()
    n = T + 2
    # entries with t > j or i > j are never read, so no fill pass
    G = np.empty((n, n, n, 4), dtype=np.int64)
    TS = np.empty((n, n, n, 4), dtype=np.int16)
    BP = np.empty((n, n, n, 4), dtype=np.int32)
    if record:
        WR = np.full((n, n, n, 8), INF, dtype=np.int64)
    else:
        WR = np.full((1, 1, 1, 8), INF, dtype=np.int64)

    # first l >= i whose demand d_{i..l} drains a full start exactly
    zl = np.zeros(n, dtype=np.int64)
    for i in range(1, T + 1):
        for l in range(i, T + 1):
            dl = P[l] - P[i - 1]
            if dl == u[i - 1]:
                zl[i] = l
                break
            if dl > u[i - 1]:
                break

    K = np.zeros(n, dtype=np.int64)
    TH = np.zeros(n, dtype=np.int64)
    LO = np.zeros(n, dtype=np.int64)
    OK = np.zeros(n, dtype=np.bool_)
    QB = np.full((n, 2), INF, dtype=np.int64)
    QL = np.zeros((n, 2), dtype=np.int64)
    QT = np.zeros((n, 2), dtype=np.int64)
    W = np.full((n, 8), INF, dtype=np.int64)
    WL = np.zeros((n, 8), dtype=np.int64)
    WT = np.zeros((n, 8), dtype=np.int64)
    E = np.full((n, 4), INF, dtype=np.int64)
    ET = np.zeros((n, 4), dtype=np.int64)
    EB = np.zeros((n, 4), dtype=np.int32)

    for j in range(1, T + 1):
        for i in range(j, 0, -1):
            for k in range(i, j + 1):
                for e in range(8):
                    W[k, e] = INF
                    WL[k, e] = 0
            if i < j:
                # low start: the order sits at i itself
                for e in range(4):
                    W[i, e] = INF
                for l in range(i, j):
                    for g in range(2):
                        c0 = phi_order(P, HRP, HPP, fR, pR, hR, u, i, l, i, 0, g)
                        if c0 >= INF:
                            continue
                        for b in range(2):
                            gv = G[j, l + 1, i, 2 * g + b]
                            if gv >= INF:
                                continue
                            c = c0 + gv
                            ts = TS[j, l + 1, i, 2 * g + b]
                            e = 2 * g + b
                            if c < W[i, e] or (c == W[i, e] and ts < WT[i, e]):
                                W[i, e] = c
                                WT[i, e] = ts
                                WL[i, e] = l
            if naive:
                for k in range(i, j):
                    for g in range(2):
                        for b in range(2):
                            best = INF
                            bts = 0
                            bl = 0
                            for l in range(k, j):
                                c = phi_order(P, HRP, HPP, fR, pR, hR, u, i, l, k, 1, g)
                                if c >= INF:
                                    continue
                                gv = G[j, l + 1, k, 2 * g + b]
                                if gv >= INF:
                                    continue
                                c += gv
                                ts = TS[j, l + 1, k, 2 * g + b]
                                if c < best or (c == best and ts < bts):
                                    best = c
                                    bts = ts
                                    bl = l
                            W[k, 4 + 2 * g + b] = best
                            WL[k, 4 + 2 * g + b] = bl
                            WT[k, 4 + 2 * g + b] = bts
            else:
                # open the chain of k = i, then move every older chain from i+1 to i
                if i < j:
                    k = i
                    TH[k] = u[k - 1]
                    K[k] = fR[k] - pR[k] * u[k - 1]
                    OK[k] = TH[k] > 0
                    hi = k
                    while hi + 1 <= j - 1 and P[hi + 1] - P[k] <= u[k]:
                        hi += 1
                    LO[k] = hi + 1
                    for b in range(2):
                        QB[k, b] = INF
                        QL[k, b] = 0
                        QT[k, b] = 0
                    if OK[k]:
                        _extend(P, HRP, HPP, pR, G, j, k, TH, LO, QB, QL, QT, TS)
                for k in range(i + 1, j):
                    if not OK[k]:
                        continue
                    delta = u[i] - u[i - 1] + d[i]
                    K[k] += hR[i] * u[i] + (pR[k] - (HRP[k - 1] - HRP[i - 1])) * delta
                    TH[k] -= delta
                    if TH[k] <= 0:
                        OK[k] = False
                        continue
                    _extend(P, HRP, HPP, pR, G, j, k, TH, LO, QB, QL, QT, TS)
                for k in range(i, j):
                    if not OK[k]:
                        continue
                    for b in range(2):
                        if QB[k, b] < INF:
                            W[k, 4 + b] = K[k] + QB[k, b]
                            WL[k, 4 + b] = QL[k, b]
                            WT[k, 4 + b] = QT[k, b]
                        if (d[k] + u[k] > TH[k]) and G[j, k + 1, k, 2 + b] < INF:
                            W[k, 6 + b] = (K[k] + pR[k] * (d[k] + u[k]) + hR[k] * u[k]
                                           + G[j, k + 1, k, 2 + b])
                            WL[k, 6 + b] = k
                            WT[k, 6 + b] = TS[j, k + 1, k, 2 + b]
            if record:
                for k in range(i, j):
                    for e in range(8):
                        WR[j, i, k, e] = W[k, e]

            dij = P[j] - P[i - 1]
            # t-free candidates per k: one block, or first block then the rest
            for a in range(2):
                for b in range(2):
                    e = 2 * a + b
                    for k in range(i, j + 1):
                        # a low start orders at i, a high-to-high block at j
                        if (a == 0 and k != i) or (e == 3 and k != j):
                            best = INF
                        else:
                            best = phi_order(P, HRP, HPP, fR, pR, hR, u, i, j, k, a, b)
                        bts = k
                        bbp = 2 | (k << 4)
                        if k < j:
                            for g in range(2):
                                wv = W[k, 4 * a + 2 * g + b]
                                if wv >= INF or wv > best:
                                    continue
                                l = WL[k, 4 * a + 2 * g + b]
                                ts = WT[k, 4 * a + 2 * g + b]
                                if wv < best or ts < bts:
                                    best = wv
                                    bts = ts
                                    bbp = 3 | (g << 3) | (k << 4) | (l << 16)
                        E[k, e] = best
                        ET[k, e] = bts
                        EB[k, e] = bbp
            for t in range(1, j + 1):
                for a in range(2):
                    al = u[i - 1] if a == 1 else 0
                    for b in range(2):
                        e = 2 * a + b
                        G[j, i, t, e] = INF
                        TS[j, i, t, e] = t
                        BP[j, i, t, e] = 0
                        be = u[j] if b == 1 else 0
                        X = dij - al + be
                        if X < 0:
                            continue
                        if X == 0:
                            c = phi_none(P, HRP, HPP, u, i, j, a, b)
                            if c < INF:
                                G[j, i, t, e] = c
                                BP[j, i, t, e] = 1
                            continue
                        best = INF
                        bts = 0
                        bbp = 0
                        kmin = i if i > t else t
                        base = HSP[t - 1] * X
                        for k in range(kmin, j + 1):
                            ev = E[k, e]
                            if ev >= INF:
                                continue
                            c = ev + HSP[k - 1] * X - base
                            if c < best or (c == best and ET[k, e] < bts):
                                best = c
                                bts = ET[k, e]
                                bbp = EB[k, e]
                        # leading block without any order
                        if i < j:
                            if naive:
                                for l in range(i, j):
                                    for g in range(2):
                                        c0 = phi_none(P, HRP, HPP, u, i, l, a, g)
                                        if c0 >= INF:
                                            continue
                                        gv = G[j, l + 1, t, 2 * g + b]
                                        if gv >= INF:
                                            continue
                                        c = c0 + gv
                                        ts = TS[j, l + 1, t, 2 * g + b]
                                        if c < best or (c == best and ts < bts):
                                            best = c
                                            bts = ts
                                            bbp = 4 | (g << 3) | (l << 16)
                            else:
                                # longer runs are reached through G(t, i+1, j)
                                for g in range(2):
                                    c0 = INF
                                    l = i
                                    if a == 0:
                                        if d[i] + (u[i] if g == 1 else 0) == 0:
                                            c0 = 0
                                    elif g == 1:
                                        if u[i - 1] == d[i] + u[i]:
                                            c0 = hR[i] * u[i]
                                    else:
                                        l = zl[i]
                                        if l != 0 and l < j:
                                            c0 = hold_drain(P, HRP, HPP, i, l, u[i - 1])
                                    if c0 >= INF:
                                        continue
                                    gv = G[j, l + 1, t, 2 * g + b]
                                    if gv >= INF:
                                        continue
                                    c = c0 + gv
                                    ts = TS[j, l + 1, t, 2 * g + b]
                                    if c < best or (c == best and ts < bts):
                                        best = c
                                        bts = ts
                                        bbp = 4 | (g << 3) | (l << 16)
                        if best < INF:
                            G[j, i, t, e] = best
                            TS[j, i, t, e] = bts
                            BP[j, i, t, e] = bbp

    C = np.full((n + 1, n, 4), INF, dtype=np.int64)
    CB = np.zeros((n + 1, n, 4), dtype=np.int64)
    PB = np.full((n, 4), INF, dtype=np.int64)
    PW = np.zeros((n, 4), dtype=np.int64)
    for i in range(T, 0, -1):
        # partial supplier order covering [i, l]; reads only C of later starts
        for t in range(1, T + 1):
            for e in range(4):
                PB[t, e] = INF
                PW[t, e] = 0
        for l in range(i, T):
            for a in range(2):
                al = u[i - 1] if a == 1 else 0
                for g in range(2):
                    Xl = P[l] - P[i - 1] - al + (u[l] if g == 1 else 0)
                    if Xl < 0:
                        continue
                    for t in range(1, l + 1):
                        gv = G[l, i, t, 2 * a + g]
                        if gv >= INF:
                            continue
                        ts = TS[l, i, t, 2 * a + g]
                        oc = 0 if Xl == 0 else fS[t] + pS[t] * Xl
                        for b in range(2):
                            cv = C[ts + 1, l + 1, 2 * g + b]
                            if cv >= INF:
                                continue
                            c = oc + gv + cv
                            e = 2 * a + b
                            if c < PB[t, e]:
                                PB[t, e] = c
                                PW[t, e] = 3 | (g << 3) | (l << 16)
        for t in range(T, 0, -1):
            for a in range(2):
                al = u[i - 1] if a == 1 else 0
                for b in range(2):
                    e = 2 * a + b
                    be = u[T] if b == 1 else 0
                    X = P[T] - P[i - 1] - al + be
                    if X < 0:
                        continue
                    if X == 0:
                        C[t, i, e] = G[T, i, t, e]
                        CB[t, i, e] = 4
                        continue
                    best = C[t + 1, i, e]
                    cb = 1
                    gv = G[T, i, t, e]
                    if gv < INF:
                        c = fS[t] + pS[t] * X + gv
                        if c < best:
                            best = c
                            cb = 2
                    if PB[t, e] < best:
                        best = PB[t, e]
                        cb = PW[t, e]
                    C[t, i, e] = best
                    CB[t, i, e] = cb
    return G, TS, BP, C, CB, WR
