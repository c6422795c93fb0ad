"""Numba-compiled kernels (default backend).

Loop-style twins of `_kernels_numpy`; accumulation order matches so the two
backends agree to float precision. fastmath stays off for determinism.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def _piece_at(bk, pv, t):
    n = bk.shape[0]
    if t <= bk[0]:
        return pv[0]
    if t >= bk[n - 1]:
        return pv[pv.shape[0] - 1]
    idx = np.searchsorted(bk, t)
    return pv[idx - 1]


@njit(cache=True)
def _trans_pow_into(bk, pv, q, a, b, h, buf):
    up = b - h
    n = bk.shape[0]
    k = 0
    buf[k] = a
    k += 1
    buf[k] = up
    k += 1
    for i in range(n):
        t = bk[i]
        if a < t < up:
            buf[k] = t
            k += 1
        s = t - h
        if a < s < up:
            buf[k] = s
            k += 1
    knots = buf[:k]
    knots.sort()
    acc = 0.0
    for i in range(k - 1):
        lo = knots[i]
        hi = knots[i + 1]
        if hi > lo:
            tm = 0.5 * (lo + hi)
            d = _piece_at(bk, pv, tm + h) - _piece_at(bk, pv, tm)
            acc += abs(d) ** q * (hi - lo)
    return acc


@njit(cache=True)
def trans_pow(bk, pv, q, a, b, h):
    buf = np.empty(2 * bk.shape[0] + 2, dtype=np.float64)
    return _trans_pow_into(bk, pv, q, a, b, h, buf)


@njit(cache=True)
def _omega_pow_max_into(bk, pv, q, a, b, K, buf):
    n = bk.shape[0]
    k = 0
    K[k] = a
    k += 1
    for i in range(n):
        if a < bk[i] < b:
            K[k] = bk[i]
            k += 1
    K[k] = b
    k += 1
    span = b - a
    best = 0.0
    for i in range(k):
        for j in range(i + 1, k):
            h = K[j] - K[i]
            if 0.0 < h < span:
                F = _trans_pow_into(bk, pv, q, a, b, h, buf)
                if F > best:
                    best = F
    return best


@njit(cache=True)
def omega_pow_max(bk, pv, q, a, b):
    n = bk.shape[0]
    K = np.empty(n + 2, dtype=np.float64)
    buf = np.empty(2 * n + 2, dtype=np.float64)
    return _omega_pow_max_into(bk, pv, q, a, b, K, buf)


@njit(cache=True)
def ivar_dp(bk, pv, cuts, p, q):
    n = cuts.shape[0]
    e = p / q
    # cells with no knot strictly inside cost exactly 0; skip their omega scan
    lo = np.searchsorted(bk, cuts, side="right")
    hi = np.searchsorted(bk, cuts, side="left")
    m = bk.shape[0]
    K = np.empty(m + 2, dtype=np.float64)
    buf = np.empty(2 * m + 2, dtype=np.float64)
    best = np.zeros(n, dtype=np.float64)
    pred = np.full(n, -1, dtype=np.int64)
    for j in range(1, n):
        bj = -1.0
        pj = 0
        for i in range(j):
            if hi[j] > lo[i]:
                w = _omega_pow_max_into(bk, pv, q, cuts[i], cuts[j], K, buf) ** e
                cand = best[i] + w
            else:
                cand = best[i]
            if cand > bj:
                bj = cand
                pj = i
        best[j] = bj
        pred[j] = pj
    return best, pred


@njit(cache=True)
def lambda_table_max(v, lam, starts, ends, npairs):
    F = starts.shape[0]
    P = starts.shape[1]
    tmp = np.empty(P, dtype=np.float64)
    best = 0.0
    besti = -1
    for f in range(F):
        np_ = npairs[f]
        for k in range(np_):
            d = abs(v[ends[f, k]] - v[starts[f, k]])
            pos = k
            while pos > 0 and tmp[pos - 1] < d:
                tmp[pos] = tmp[pos - 1]
                pos -= 1
            tmp[pos] = d
        acc = 0.0
        for k in range(np_):
            acc += tmp[k] / lam[k]
        if acc > best:
            best = acc
            besti = f
    return best, besti
