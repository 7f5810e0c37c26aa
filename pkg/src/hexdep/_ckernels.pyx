# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: type I integrand and pair classification.

Mirrors ``hexdep._pykernels`` function for function.  ``quad_integrand`` uses
the closed-form area of co-oriented hexagons; ``quad_integrand_clip`` computes
the same quantity by Sutherland-Hodgman clipping and is kept as a cross-check.
"""
import numpy as np
from libc.math cimport fabs, sqrt, cos, sin, M_PI

NAME = "cython"

cdef enum:
    MAXV = 48

cdef double SQRT3 = sqrt(3.0)
cdef double EPS = 1e-9

cdef double HX[6]
cdef double HY[6]
for _k in range(6):
    HX[_k] = cos(M_PI * _k / 3.0)
    HY[_k] = sin(M_PI * _k / 3.0)


cdef inline bint hex_contains(double cx, double cy, double r, double px, double py) noexcept nogil:
    cdef double dx = fabs(px - cx)
    cdef double dy = fabs(py - cy)
    cdef double a = 0.5 * SQRT3 * r
    return dy <= a + EPS and 0.5 * SQRT3 * dx + 0.5 * dy <= a + EPS


cdef inline void hex_vertices(double cx, double cy, double r, double* vx, double* vy) noexcept nogil:
    cdef int k
    for k in range(6):
        vx[k] = cx + r * HX[k]
        vy[k] = cy + r * HY[k]


cdef int clip_by_hex(double* sx, double* sy, int n,
                     double cx, double cy, double r,
                     double* ox, double* oy) noexcept nogil:
    """Clip polygon (sx, sy, n) by a hexagon; result in (ox, oy)."""
    cdef double vx[6]
    cdef double vy[6]
    cdef double bx[MAXV]
    cdef double by[MAXV]
    cdef double* inx = sx
    cdef double* iny = sy
    cdef double* outx
    cdef double* outy
    cdef int m, i, e
    cdef double ax, ay, ex, ey, dp, dc, t, px, py
    hex_vertices(cx, cy, r, vx, vy)
    for e in range(6):
        if n == 0:
            return 0
        # alternate buffers so the last pass lands in (ox, oy)
        if e % 2 == 0:
            outx, outy = bx, by
        else:
            outx, outy = ox, oy
        ax = vx[e]
        ay = vy[e]
        ex = vx[(e + 1) % 6] - ax
        ey = vy[(e + 1) % 6] - ay
        m = 0
        px = inx[n - 1]
        py = iny[n - 1]
        dp = ex * (py - ay) - ey * (px - ax)
        for i in range(n):
            dc = ex * (iny[i] - ay) - ey * (inx[i] - ax)
            if dc >= 0.0:
                if dp < 0.0:
                    t = dp / (dp - dc)
                    outx[m] = px + t * (inx[i] - px)
                    outy[m] = py + t * (iny[i] - py)
                    m += 1
                outx[m] = inx[i]
                outy[m] = iny[i]
                m += 1
            elif dp >= 0.0:
                t = dp / (dp - dc)
                outx[m] = px + t * (inx[i] - px)
                outy[m] = py + t * (iny[i] - py)
                m += 1
            px = inx[i]
            py = iny[i]
            dp = dc
        inx, iny, n = outx, outy, m
    return n


cdef inline double shoelace(double* x, double* y, int n) noexcept nogil:
    cdef double s = 0.0
    cdef int i, j
    if n < 3:
        return 0.0
    for i in range(n):
        j = i + 1 if i + 1 < n else 0
        s += x[i] * y[j] - x[j] * y[i]
    s *= 0.5
    return s if s > 1e-14 else 0.0


cdef inline double ramp2(double s) noexcept nogil:
    return 0.5 * s * s if s > 0.0 else 0.0


cdef inline double below(double c, double w1, double w2) noexcept nogil:
    return ramp2(c) - ramp2(c - w1) - ramp2(c - w2) + ramp2(c - w1 - w2)


cdef inline double slab_area(double* lo, double* hi) noexcept nogil:
    """Area of {p : lo_k <= n_k . p <= hi_k}, normals at 30, 150, 270 degrees."""
    cdef double w1 = hi[0] - lo[0]
    cdef double w2 = hi[1] - lo[1]
    cdef double shift = lo[0] + lo[1]
    cdef double c_hi = -(lo[2] + shift)
    cdef double c_lo = -(hi[2] + shift)
    cdef double res
    if w1 <= 0.0 or w2 <= 0.0 or c_hi <= c_lo:
        return 0.0
    res = (below(c_hi, w1, w2) - below(c_lo, w1, w2)) * (2.0 / SQRT3)
    return res if res > 1e-14 else 0.0


cdef inline void slab_bounds(double cx, double cy, double r, double* lo, double* hi) noexcept nogil:
    cdef double a = 0.5 * SQRT3 * r
    cdef double u0 = 0.5 * SQRT3 * cx + 0.5 * cy
    cdef double u1 = -0.5 * SQRT3 * cx + 0.5 * cy
    cdef double u2 = -cy
    lo[0] = u0 - a
    hi[0] = u0 + a
    lo[1] = u1 - a
    hi[1] = u1 + a
    lo[2] = u2 - a
    hi[2] = u2 + a


def quad_integrand(px, py, double gamma, double cx2, double cy2):
    cdef double[::1] xs = np.ascontiguousarray(px, dtype=np.float64).ravel()
    cdef double[::1] ys = np.ascontiguousarray(py, dtype=np.float64).ravel()
    out_arr = np.zeros(xs.shape[0])
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i, n = xs.shape[0]
    cdef int k
    cdef double lo_c[3]
    cdef double hi_c[3]
    cdef double lo_a[3]
    cdef double hi_a[3]
    cdef double lo[3]
    cdef double hi[3]
    cdef double lo2[3]
    cdef double hi2[3]
    cdef double a_cell, a_cut
    slab_bounds(cx2, cy2, 1.0, lo_c, hi_c)
    slab_bounds(0.0, 0.0, gamma, lo_a, hi_a)
    with nogil:
        for i in range(n):
            if not hex_contains(0.0, 0.0, 1.0, xs[i], ys[i]):
                continue
            if hex_contains(cx2, cy2, gamma, xs[i], ys[i]):
                continue
            slab_bounds(xs[i], ys[i], gamma, lo, hi)
            for k in range(3):
                lo[k] = lo[k] if lo[k] > lo_c[k] else lo_c[k]
                hi[k] = hi[k] if hi[k] < hi_c[k] else hi_c[k]
                lo2[k] = lo[k] if lo[k] > lo_a[k] else lo_a[k]
                hi2[k] = hi[k] if hi[k] < hi_a[k] else hi_a[k]
            a_cell = slab_area(lo, hi)
            if a_cell == 0.0:
                continue
            a_cut = slab_area(lo2, hi2)
            if a_cell > a_cut:
                out[i] = a_cell - a_cut
    return out_arr.reshape(np.shape(px))


def quad_integrand_clip(px, py, double gamma, double cx2, double cy2):
    cdef double[::1] xs = np.ascontiguousarray(px, dtype=np.float64).ravel()
    cdef double[::1] ys = np.ascontiguousarray(py, dtype=np.float64).ravel()
    out_arr = np.zeros(xs.shape[0])
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i, n = xs.shape[0]
    cdef double sx[6]
    cdef double sy[6]
    cdef double ax[MAXV]
    cdef double ay[MAXV]
    cdef double bx[MAXV]
    cdef double by[MAXV]
    cdef int na, nb
    cdef double a_cell, a_cut, x, y
    with nogil:
        for i in range(n):
            x = xs[i]
            y = ys[i]
            if not hex_contains(0.0, 0.0, 1.0, x, y):
                continue
            if hex_contains(cx2, cy2, gamma, x, y):
                continue
            hex_vertices(x, y, gamma, sx, sy)
            na = clip_by_hex(sx, sy, 6, cx2, cy2, 1.0, ax, ay)
            a_cell = shoelace(ax, ay, na)
            if a_cell == 0.0:
                continue
            nb = clip_by_hex(ax, ay, na, 0.0, 0.0, gamma, bx, by)
            a_cut = shoelace(bx, by, nb)
            if a_cell > a_cut:
                out[i] = a_cell - a_cut
    return out_arr.reshape(np.shape(px))


def classify(s1x, s1y, s2x, s2y, double gamma, double cx2, double cy2):
    cdef double[::1] x1 = np.ascontiguousarray(s1x, dtype=np.float64)
    cdef double[::1] y1 = np.ascontiguousarray(s1y, dtype=np.float64)
    cdef double[::1] x2 = np.ascontiguousarray(s2x, dtype=np.float64)
    cdef double[::1] y2 = np.ascontiguousarray(s2y, dtype=np.float64)
    cdef Py_ssize_t i, n = x1.shape[0]
    out_arr = np.zeros(n, dtype=np.int8)
    cdef signed char[::1] out = out_arr
    if hex_contains(0.0, 0.0, gamma, cx2, cy2):
        out_arr[:] = 2
        return out_arr
    with nogil:
        for i in range(n):
            if hex_contains(0.0, 0.0, gamma, x2[i], y2[i]) or hex_contains(cx2, cy2, gamma, x1[i], y1[i]):
                out[i] = 3
            elif hex_contains(0.0, 0.0, gamma, x1[i] - x2[i], y1[i] - y2[i]):
                out[i] = 1
    return out_arr
