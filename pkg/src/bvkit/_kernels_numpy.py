"""Pure-numpy kernel implementations (fallback backend).

Semantics must match `_kernels_numba`: per-family/per-chain accumulation is a
left-to-right fold so both backends agree to the last few ulps.
"""

from __future__ import annotations

import numpy as np


def piece_values_at(bk: np.ndarray, pv: np.ndarray, t: np.ndarray) -> np.ndarray:
    """Piece value of the step function at points t (never sampled on knots)."""
    idx = np.clip(np.searchsorted(bk, t) - 1, 0, pv.size - 1)
    return pv[idx]


def trans_pow_batch(bk, pv, q, a, b, H):
    """F(h) = ∫_a^{b-h} |x(t+h)-x(t)|^q dt for each h in H (exact, piecewise)."""
    H = np.asarray(H, dtype=np.float64)
    nh = H.size
    up = b - H
    base = np.broadcast_to(bk, (nh, bk.size))
    shifted = bk[None, :] - H[:, None]
    knots = np.concatenate(
        [base, shifted, np.full((nh, 1), a), up[:, None]], axis=1
    )
    knots = np.clip(knots, a, up[:, None])
    knots = np.sort(knots, axis=1)
    mids = 0.5 * (knots[:, :-1] + knots[:, 1:])
    lens = knots[:, 1:] - knots[:, :-1]
    lo = piece_values_at(bk, pv, mids.ravel()).reshape(mids.shape)
    hi = piece_values_at(bk, pv, (mids + H[:, None]).ravel()).reshape(mids.shape)
    return (np.abs(hi - lo) ** q * lens).sum(axis=1)


def trans_pow(bk, pv, q, a, b, h):
    return float(trans_pow_batch(bk, pv, q, a, b, np.array([h]))[0])


def omega_candidates(bk, a, b):
    """Kink locations of h -> F(h): positive pairwise knot differences in (0, b-a)."""
    interior = bk[(bk > a) & (bk < b)]
    K = np.concatenate(([a], interior, [b]))
    H = (K[None, :] - K[:, None]).ravel()
    return np.unique(H[(H > 0.0) & (H < b - a)])


def omega_pow_max(bk, pv, q, a, b):
    """sup_h F(h); F is piecewise linear in h and vanishes at both ends, so the
    supremum is attained at a kink."""
    H = omega_candidates(bk, a, b)
    if H.size == 0:
        return 0.0
    return float(trans_pow_batch(bk, pv, q, a, b, H).max())


def _edge_costs(bk, pv, cuts, e, q):
    """All-pairs cell costs omega^p, vectorized over edges grouped by the
    number of knots strictly inside the cell (0-knot cells cost exactly 0)."""
    n = cuts.size
    W = np.zeros((n, n))
    lo = np.searchsorted(bk, cuts, side="right")
    hi = np.searchsorted(bk, cuts, side="left")
    ii, jj = np.triu_indices(n, k=1)
    counts = hi[jj] - lo[ii]
    for k in np.unique(counts):
        if k <= 0:
            continue
        sel = counts == k
        i_arr, j_arr = ii[sel], jj[sel]
        a = cuts[i_arr]
        b = cuts[j_arr]
        K = np.empty((a.size, k + 2))
        K[:, 0] = a
        K[:, -1] = b
        K[:, 1:-1] = bk[lo[i_arr][:, None] + np.arange(k)[None, :]]
        span = b - a
        Fmax = np.zeros(a.size)
        for alpha in range(k + 2):
            for beta in range(alpha + 1, k + 2):
                h = K[:, beta] - K[:, alpha]
                valid = (h > 0.0) & (h < span)
                if not np.any(valid):
                    continue
                idx = np.nonzero(valid)[0]
                hv = h[idx]
                up = b[idx] - hv
                knots = np.concatenate([K[idx], K[idx] - hv[:, None]], axis=1)
                knots = np.clip(knots, a[idx][:, None], up[:, None])
                knots = np.sort(knots, axis=1)
                mids = 0.5 * (knots[:, :-1] + knots[:, 1:])
                lens = knots[:, 1:] - knots[:, :-1]
                left = piece_values_at(bk, pv, mids.ravel()).reshape(mids.shape)
                right = piece_values_at(bk, pv, (mids + hv[:, None]).ravel()).reshape(mids.shape)
                F = (np.abs(right - left) ** q * lens).sum(axis=1)
                Fmax[idx] = np.maximum(Fmax[idx], F)
        W[i_arr, j_arr] = Fmax**e
    return W


def ivar_dp(bk, pv, cuts, p, q):
    """Longest-path DP over increasing cut subsequences maximizing sum of
    omega^p; returns (best, pred) with best in the p-th power scale."""
    n = cuts.size
    W = _edge_costs(bk, pv, cuts, p / q, q)
    best = np.zeros(n)
    pred = np.full(n, -1, dtype=np.int64)
    for j in range(1, n):
        cand = best[:j] + W[:j, j]
        pj = int(np.argmax(cand))
        best[j] = cand[pj]
        pred[j] = pj
    return best, pred


def lambda_table_max(v, lam, starts, ends, npairs):
    """Best best-order weighted sum over the enumerated pair families.

    Padded slots carry (0,0) pairs whose increment 0 sorts last and adds 0.
    Returns (value, family index); index -1 when no family is positive.
    """
    if starts.shape[0] == 0:
        return 0.0, -1
    d = np.abs(v[ends] - v[starts])
    d = -np.sort(-d, axis=1)
    acc = np.zeros(d.shape[0])
    for k in range(d.shape[1]):
        acc += d[:, k] / lam[k]
    idx = int(np.argmax(acc))
    best = float(acc[idx])
    if best <= 0.0:
        return 0.0, -1
    return best, idx
