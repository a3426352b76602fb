"""Jitted state-space DP over (retailer stock, supplier stock) per period.

Layer t of ``H`` holds the cost-to-go of periods t+1..T for every state at
the end of period t; layers are stored back to back starting at ``off[t]``.
"""
from __future__ import annotations

import numpy as np

from ._jit import INF, njit


@njit(cache=True)
def ibsr_tables(d, fR, pR, hR, fS, pS, hS, MR, MS, rest):
    T = d.shape[0] - 2
    off = np.zeros(T + 2, dtype=np.int64)
    for t in range(T + 1):
        off[t + 1] = off[t] + (MR[t] + 1) * (MS[t] + 1)
    H = np.full(off[T + 1], INF, dtype=np.int64)
    CH = np.full(off[T + 1], -1, dtype=np.int64)
    for q in range(off[T], off[T + 1]):
        H[q] = 0
    for t in range(T, 0, -1):
        w1 = MS[t] + 1
        w0 = MS[t - 1] + 1
        for r0 in range(MR[t - 1] + 1):
            for s0 in range(MS[t - 1] + 1):
                if t > 1 and r0 + s0 > rest[t - 1]:
                    continue
                best = INF
                bq = -1
                rlo = r0 - d[t]
                if rlo < 0:
                    rlo = 0
                for r1 in range(rlo, MR[t] + 1):
                    xr = r1 + d[t] - r0
                    cr = hR[t] * r1
                    if xr > 0:
                        cr += fR[t] + pR[t] * xr
                    slo = s0 - xr
                    if slo < 0:
                        slo = 0
                    for s1 in range(slo, MS[t] + 1):
                        if r1 + s1 > rest[t]:
                            break
                        q = off[t] + r1 * w1 + s1
                        nxt = H[q]
                        if nxt >= INF:
                            continue
                        xs = s1 + xr - s0
                        c = cr + hS[t] * s1 + nxt
                        if xs > 0:
                            c += fS[t] + pS[t] * xs
                        if c < best:
                            best = c
                            bq = q
                p = off[t - 1] + r0 * w0 + s0
                H[p] = best
                CH[p] = bq
    return H, CH, off


@njit(cache=True)
def single_level_tables(d, f, p, h, M):
    # cost-to-go over end-of-period stock 0..M[t]; layer t starts at off[t]
    T = d.shape[0] - 2
    off = np.zeros(T + 2, dtype=np.int64)
    for t in range(T + 1):
        off[t + 1] = off[t] + M[t] + 1
    H = np.full(off[T + 1], INF, dtype=np.int64)
    CH = np.full(off[T + 1], -1, dtype=np.int64)
    H[off[T]] = 0
    for t in range(T, 0, -1):
        for s0 in range(M[t - 1] + 1):
            best = INF
            bq = -1
            slo = s0 - d[t]
            if slo < 0:
                slo = 0
            for s1 in range(slo, M[t] + 1):
                q = off[t] + s1
                if H[q] >= INF:
                    continue
                x = s1 + d[t] - s0
                c = h[t] * s1 + H[q]
                if x > 0:
                    c += f[t] + p[t] * x
                if c < best:
                    best = c
                    bq = q
            H[off[t - 1] + s0] = best
            CH[off[t - 1] + s0] = bq
    return H, CH, off
