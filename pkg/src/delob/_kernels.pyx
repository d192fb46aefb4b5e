# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Simpson-quadrature kernel for expected utilities on (p0, d) grids.

Statement-for-statement mirror of ``_kernels_py.eu_numeric_grid``; the
contract, segment layout and node-allocation rule are documented there.
"""

from libc.math cimport ceil

import numpy as np


cdef inline double _clamp(double v, double lo, double hi) noexcept nogil:
    if v < lo:
        return lo
    if v > hi:
        return hi
    return v


def eu_numeric_grid(status_quo, discretion, xt, xc, shock_bound, alpha, nodes, final_band):
    p0_arr = np.ascontiguousarray(status_quo, dtype=np.float64)
    dd_arr = np.ascontiguousarray(discretion, dtype=np.float64)
    if p0_arr.shape != dd_arr.shape or p0_arr.ndim != 1:
        raise ValueError("status_quo and discretion must be equal-length 1-d arrays")

    cdef double[::1] p0v = p0_arr
    cdef double[::1] ddv = dd_arr
    cdef Py_ssize_t npts = p0v.shape[0]
    out_c = np.empty(npts, dtype=np.float64)
    out_i = np.empty(npts, dtype=np.float64)
    cdef double[::1] euc = out_c
    cdef double[::1] eui = out_i

    cdef double c_xt = xt
    cdef double c_xc = xc
    cdef double R = shock_bound
    cdef double c_alpha = alpha
    cdef bint final = final_band

    cdef long half = (<long> nodes - 1) // 2
    if half < 1:
        half = 1
    cdef double ratio = half / (2.0 * R)

    cdef double mid_e = c_xt / c_alpha
    cdef double k_level = (1.0 + c_alpha) / c_alpha * c_xt
    cdef double q = c_alpha / (1.0 + c_alpha)
    cdef double r1 = 1.0 / (1.0 + c_alpha)

    cdef double seg_lo[4]
    cdef double seg_hi[4]
    cdef double seg_x0[4]
    cdef double seg_sx[4]
    cdef double seg_e0[4]
    cdef double seg_se[4]
    cdef int nseg, s
    cdef Py_ssize_t g
    cdef long n, k
    cdef double p0, d, a, b, a0, a1, a2
    cdef double length, h, w, wt, fx, fe, dev
    cdef double acc_c, acc_i, sum_c, sum_i
    cdef double scale = -1.0 / (2.0 * R)

    for g in range(npts):
        p0 = p0v[g]
        d = ddv[g]
        if final:
            a = _clamp(c_xt - p0 - d, -R, R)
            b = _clamp(c_xt - p0 + d, -R, R)
            seg_lo[0] = -R; seg_hi[0] = a
            seg_x0[0] = p0 + d; seg_sx[0] = 1.0; seg_e0[0] = 0.0; seg_se[0] = 0.0
            seg_lo[1] = a; seg_hi[1] = b
            seg_x0[1] = c_xt; seg_sx[1] = 0.0; seg_e0[1] = mid_e; seg_se[1] = 0.0
            seg_lo[2] = b; seg_hi[2] = R
            seg_x0[2] = p0 - d; seg_sx[2] = 1.0; seg_e0[2] = 0.0; seg_se[2] = 0.0
            nseg = 3
        else:
            a0 = _clamp(-(p0 + d), -R, R)
            a1 = _clamp(k_level - p0 - d, -R, R)
            a2 = _clamp(k_level - p0 + d, -R, R)
            seg_lo[0] = -R; seg_hi[0] = a0
            seg_x0[0] = p0 + d; seg_sx[0] = 1.0; seg_e0[0] = 0.0; seg_se[0] = 0.0
            seg_lo[1] = a0; seg_hi[1] = a1
            seg_x0[1] = q * (p0 + d); seg_sx[1] = q
            seg_e0[1] = r1 * (p0 + d); seg_se[1] = r1
            seg_lo[2] = a1; seg_hi[2] = a2
            seg_x0[2] = c_xt; seg_sx[2] = 0.0; seg_e0[2] = mid_e; seg_se[2] = 0.0
            seg_lo[3] = a2; seg_hi[3] = R
            seg_x0[3] = q * (p0 - d); seg_sx[3] = q
            seg_e0[3] = r1 * (p0 - d); seg_se[3] = r1
            nseg = 4

        acc_c = 0.0
        acc_i = 0.0
        for s in range(nseg):
            length = seg_hi[s] - seg_lo[s]
            if length <= 0.0:
                continue
            n = 2 * <long> ceil(length * ratio)
            if n < 2:
                n = 2
            h = length / n
            sum_c = 0.0
            sum_i = 0.0
            for k in range(n + 1):
                w = seg_lo[s] + k * h
                if k == 0 or k == n:
                    wt = 1.0
                elif k % 2 == 1:
                    wt = 4.0
                else:
                    wt = 2.0
                fx = seg_x0[s] + seg_sx[s] * w
                fe = seg_e0[s] + seg_se[s] * w
                dev = fx - c_xc
                sum_c += wt * dev * dev
                sum_i += wt * (fx * fx + c_alpha * fe * fe)
            acc_c += h / 3.0 * sum_c
            acc_i += h / 3.0 * sum_i
        euc[g] = scale * acc_c
        eui[g] = scale * acc_i

    return out_c, out_i
