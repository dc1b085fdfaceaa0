# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled batch kernels; same arithmetic as _pykernels, one pass, no temporaries."""

import numpy as np
cimport numpy as cnp
from libc.math cimport INFINITY

cnp.import_array()

DEF K_HALFSPACE = 0
DEF K_QUADRANT = 1
DEF K_CONE_AB = 2
DEF K_TRANSLATES = 3
DEF K_S_INTERIOR = 4


cdef inline Py_ssize_t _upper(const double[::1] lo, double v) noexcept nogil:
    # number of entries <= v (searchsorted side="right")
    cdef Py_ssize_t a = 0, b = lo.shape[0], mid
    while a < b:
        mid = (a + b) // 2
        if lo[mid] <= v:
            a = mid + 1
        else:
            b = mid
    return a


def count_in_ball(int code, params, lo, hi, center, double r, h):
    cdef const double[:, ::1] hv = np.ascontiguousarray(h, dtype=np.float64)
    cdef const double[::1] lov = np.ascontiguousarray(lo, dtype=np.float64)
    cdef const double[::1] hiv = np.ascontiguousarray(hi, dtype=np.float64)
    cdef double c1 = center[0], c2 = center[1], c3 = center[2], c4 = center[3], c5 = center[4]
    cdef double pa = 0.0, pb = 0.0
    if len(params) >= 2:
        pa = params[0]
        pb = params[1]
    cdef double r2 = r * r
    cdef double r3 = r2 * r
    cdef Py_ssize_t n = hv.shape[0], m = lov.shape[0], i, idx
    cdef long long count = 0
    cdef double y1, y2, y3, y4, y5, x1, x2, x3, x4, x5, t, s, d, dl, dr, rhs, p
    cdef bint inside
    if code < 0 or code > 4:
        raise ValueError(f"unknown kernel code {code}")
    with nogil:
        for i in range(n):
            y1 = r * hv[i, 0]
            y2 = r * hv[i, 1]
            y3 = r2 * hv[i, 2]
            y4 = r3 * hv[i, 3]
            y5 = r3 * hv[i, 4]
            x1 = c1 + y1
            x2 = c2 + y2
            x3 = c3 + y3 - c1 * y2
            x4 = c4 + y4 - c1 * y3 + c1 * c1 * y2 / 2.0
            x5 = c5 + y5 + c1 * c2 * y2 + c1 * y2 * y2 / 2.0 - c2 * y3
            if code == K_HALFSPACE:
                if x2 >= 0.0:
                    count += 1
            elif code == K_QUADRANT:
                if x2 >= 0.0 and x4 >= 0.0:
                    count += 1
            elif code == K_CONE_AB:
                t = pa * x3 + pb * x5
                s = pa + pb * x2
                if x4 >= 0.0 and x2 >= 0.0 and t * t <= 2.0 * x2 * x4 * (s * s):
                    count += 1
            elif code == K_TRANSLATES:
                if x2 >= 0.0 and x4 >= 0.0:
                    idx = _upper(lov, x5) - 1
                    inside = idx >= 0 and x5 <= hiv[idx]
                    if inside:
                        d = 0.0
                    else:
                        dl = INFINITY
                        dr = INFINITY
                        if idx >= 0:
                            dl = x5 - hiv[idx]
                        if idx + 1 < m:
                            dr = lov[idx + 1] - x5
                        d = dl if dl < dr else dr
                    rhs = 2.0 * x2 * x2 * x2 * x4
                    if d * d <= rhs:
                        count += 1
            else:
                p = x2 * x2 * x2 * x4 - 2.0 * x2 * x2 * x3 * x3 - 6.0 * x2 * x3 * x5 - 6.0 * x5 * x5
                if p > 0.0 and x2 > 0.0:
                    count += 1
    return int(count)


def w3_endpoints(shifts, times, ks):
    cdef const double[:, ::1] sv = np.ascontiguousarray(shifts, dtype=np.float64)
    cdef const double[:, ::1] tv = np.ascontiguousarray(times, dtype=np.float64)
    cdef const long long[::1] kv = np.ascontiguousarray(ks, dtype=np.int64)
    cdef Py_ssize_t n = sv.shape[0], kmax = sv.shape[1], i, j
    out2 = np.zeros(n)
    out4 = np.zeros(n)
    cdef double[::1] o2 = out2
    cdef double[::1] o4 = out4
    cdef double q1, q2, q3, q4, a, b, y2, y3, y4
    with nogil:
        for i in range(n):
            q1 = 0.0
            q2 = 0.0
            q3 = 0.0
            q4 = 0.0
            for j in range(kmax):
                if j < kv[i]:
                    a = sv[i, j]
                    b = tv[i, j]
                else:
                    a = 0.0
                    b = 0.0
                q1 = q1 + a
                y2 = b
                y3 = -(b * b) / 2.0
                y4 = b * b * b / 6.0
                q4 = q4 + y4 - q1 * y3 + q1 * q1 * y2 / 2.0
                q3 = q3 + y3 - q1 * y2
                q1 = q1 + b
                q2 = q2 + y2
            o2[i] = q2
            o4[i] = q4
    return out2, out4
