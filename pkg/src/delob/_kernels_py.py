"""Pure-numpy quadrature kernel; reference implementation.

``eu_numeric_grid`` evaluates Congress's expected policy utility and the
group's expected gross utility at each (status quo, discretion) pair by
composite Simpson quadrature over the shock support. Nodes are split exactly
at the regime boundaries of the outcome map, so the rule is exact for the
piecewise-quadratic integrands and the node count only affects speed, never
accuracy.

Each grid point decomposes into segments ``(lo, hi, x0, sx, e0, se)`` on
which the outcome is ``x = x0 + sx*w`` and the effort is ``e = e0 + se*w``:

  final-policy band:  [-R, a]  upper band edge binds, no lobbying
                      [a,  b]  interior, outcome pinned at x-tilde
                      [b,  R]  lower band edge binds, no lobbying

  proposal band:      [-R, a0] proposal clamped high, group stays out
                      [a0, a1] proposal clamped high, lobbying active
                      [a1, a2] interior (proposal unconstrained)
                      [a2, R]  proposal clamped low, lobbying active

The compiled twin in ``_kernels.pyx`` mirrors this layout statement for
statement; keep the two in sync.
"""

from __future__ import annotations

import numpy as np

# cap on elements materialized per temporary; keeps peak memory modest when
# the node count is large
_CHUNK_BUDGET = 4_000_000


def _segments(p0, dd, xt, alpha, R, final_band):
    n = p0.shape[0]
    ones = np.ones(n)
    zeros = np.zeros(n)
    neg_r = np.full(n, -R)
    pos_r = np.full(n, R)
    mid_x = np.full(n, xt)
    mid_e = np.full(n, xt / alpha)
    if final_band:
        a = np.clip(xt - p0 - dd, -R, R)
        b = np.clip(xt - p0 + dd, -R, R)
        return [
            (neg_r, a, p0 + dd, ones, zeros, zeros),
            (a, b, mid_x, zeros, mid_e, zeros),
            (b, pos_r, p0 - dd, ones, zeros, zeros),
        ]
    k = (1.0 + alpha) / alpha * xt
    q = alpha / (1.0 + alpha)
    r1 = 1.0 / (1.0 + alpha)
    a0 = np.clip(-(p0 + dd), -R, R)
    a1 = np.clip(k - p0 - dd, -R, R)
    a2 = np.clip(k - p0 + dd, -R, R)
    return [
        (neg_r, a0, p0 + dd, ones, zeros, zeros),
        (a0, a1, q * (p0 + dd), q * ones, r1 * (p0 + dd), r1 * ones),
        (a1, a2, mid_x, zeros, mid_e, zeros),
        (a2, pos_r, q * (p0 - dd), q * ones, r1 * (p0 - dd), r1 * ones),
    ]


def _accumulate(acc_c, acc_i, lo, length, n_ivals, x0, sx, e0, se, xc, alpha):
    active = np.flatnonzero(n_ivals > 0)
    if active.size == 0:
        return
    nmax = int(n_ivals[active].max())
    rows_per_chunk = max(1, _CHUNK_BUDGET // (nmax + 1))
    ks = np.arange(nmax + 1, dtype=np.float64)
    odd = ks % 2 == 1
    for start in range(0, active.size, rows_per_chunk):
        rows = active[start : start + rows_per_chunk]
        nn = n_ivals[rows].astype(np.float64)
        h = length[rows] / nn
        w = lo[rows, None] + ks[None, :] * h[:, None]
        wt = np.where(odd[None, :], 4.0, 2.0)
        wt = np.where((ks[None, :] == 0.0) | (ks[None, :] == nn[:, None]), 1.0, wt)
        wt = np.where(ks[None, :] > nn[:, None], 0.0, wt)
        fx = x0[rows, None] + sx[rows, None] * w
        fe = e0[rows, None] + se[rows, None] * w
        dev = fx - xc
        f_c = dev * dev
        f_i = fx * fx + alpha * fe * fe
        third = h / 3.0
        acc_c[rows] += third * np.sum(wt * f_c, axis=1)
        acc_i[rows] += third * np.sum(wt * f_i, axis=1)


def eu_numeric_grid(status_quo, discretion, xt, xc, shock_bound, alpha, nodes, final_band):
    """Expected utilities of Congress (policy part) and the group on a grid.

    Returns a pair of arrays aligned with the inputs. ``nodes`` is the target
    node count over the full support; each segment gets an even interval
    count proportional to its length, at least two.
    """
    p0 = np.ascontiguousarray(status_quo, dtype=np.float64)
    dd = np.ascontiguousarray(discretion, dtype=np.float64)
    if p0.shape != dd.shape or p0.ndim != 1:
        raise ValueError("status_quo and discretion must be equal-length 1-d arrays")
    R = float(shock_bound)
    half = max(1, (int(nodes) - 1) // 2)
    ratio = half / (2.0 * R)
    acc_c = np.zeros(p0.shape[0])
    acc_i = np.zeros(p0.shape[0])
    for lo, hi, x0, sx, e0, se in _segments(p0, dd, float(xt), float(alpha), R, bool(final_band)):
        length = hi - lo
        n_ivals = 2 * np.maximum(1, np.ceil(length * ratio)).astype(np.int64)
        n_ivals[length <= 0.0] = 0
        _accumulate(acc_c, acc_i, lo, length, n_ivals, x0, sx, e0, se, float(xc), float(alpha))
    scale = -1.0 / (2.0 * R)
    return scale * acc_c, scale * acc_i
