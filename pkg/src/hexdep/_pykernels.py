"""Pure numpy kernels, used when the Cython extension is unavailable.

Intersections here use the closed-form area of co-oriented hexagons
(:func:`hexdep.hexgeom.slab_area`) instead of polygon clipping; all regions in
the model share one orientation, so both routes give the same numbers.
"""
import numpy as np

from .hexgeom import contains_array, slab_area, slab_bounds

NAME = "python"

NONE, TYPE_I, TYPE_II, TYPE_III = 0, 1, 2, 3


def quad_integrand(px, py, gamma, cx2, cy2):
    px = np.ascontiguousarray(px, dtype=float)
    py = np.ascontiguousarray(py, dtype=float)
    out = np.zeros(px.shape)
    mask = contains_array(0.0, 0.0, 1.0, px, py) & ~contains_array(cx2, cy2, gamma, px, py)
    if not mask.any():
        return out
    lo_p, hi_p = slab_bounds(px[mask], py[mask], gamma)
    lo_c, hi_c = slab_bounds(cx2, cy2, 1.0)
    lo_a, hi_a = slab_bounds(0.0, 0.0, gamma)
    lo = np.maximum(lo_p, lo_c)
    hi = np.minimum(hi_p, hi_c)
    a_cell = slab_area(lo, hi)
    a_cut = slab_area(np.maximum(lo, lo_a), np.minimum(hi, hi_a))
    out[mask] = np.maximum(a_cell - a_cut, 0.0)
    return out


def classify(s1x, s1y, s2x, s2y, gamma, cx2, cy2):
    s1x = np.asarray(s1x, dtype=float)
    n = s1x.shape[0]
    if contains_array(0.0, 0.0, gamma, np.array([cx2]), np.array([cy2]))[0]:
        return np.full(n, TYPE_II, dtype=np.int8)
    cross = contains_array(0.0, 0.0, gamma, s2x, s2y) | contains_array(cx2, cy2, gamma, s1x, s1y)
    mutual = contains_array(0.0, 0.0, gamma, np.asarray(s1x) - s2x, np.asarray(s1y) - s2y)
    out = np.zeros(n, dtype=np.int8)
    out[mutual] = TYPE_I
    out[cross] = TYPE_III
    return out
