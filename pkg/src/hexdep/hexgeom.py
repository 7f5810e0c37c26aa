"""Regular hexagons and convex polygons in units of the cell radius.

Every hexagon shares one global orientation: vertex ``k`` sits at angle
``k * 60`` degrees from the centre, so vertex 0 lies on the +x axis and the
edge normals point at 30, 90, 150, ... degrees.  Cells and interference
regions use the same orientation.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

SQRT3 = math.sqrt(3.0)
EPS_GEOM = 1e-9
HEX_UNIT_AREA = 1.5 * SQRT3

# Unit normals of the three edge-pair directions (30, 150, 270 degrees).
# They sum to zero, which the slab area formula below relies on.
SLAB_NORMALS = np.array(
    [[0.5 * SQRT3, 0.5], [-0.5 * SQRT3, 0.5], [0.0, -1.0]], dtype=float
)


@dataclass(frozen=True)
class Point:
    x: float
    y: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"point coordinates must be finite, got ({self.x}, {self.y})")

    def __add__(self, other: Point) -> Point:
        return Point(self.x + other.x, self.y + other.y)

    def __sub__(self, other: Point) -> Point:
        return Point(self.x - other.x, self.y - other.y)


ORIGIN = Point(0.0, 0.0)


@dataclass(frozen=True)
class Hexagon:
    """Regular hexagon given by its centre and centre-to-vertex radius."""

    center: Point
    radius: float

    def __post_init__(self) -> None:
        if not (self.radius > 0 and math.isfinite(self.radius)):
            raise ValueError(f"hexagon radius must be positive, got {self.radius}")

    @property
    def apothem(self) -> float:
        return 0.5 * SQRT3 * self.radius

    @property
    def area(self) -> float:
        return HEX_UNIT_AREA * self.radius * self.radius


@dataclass(frozen=True)
class ConvexPolygon:
    """Counter-clockwise convex polygon; ``vertices == ()`` is the empty set."""

    vertices: tuple[Point, ...] = ()

    def __post_init__(self) -> None:
        if 0 < len(self.vertices) < 3:
            raise ValueError("a non-empty polygon needs at least 3 vertices")

    @classmethod
    def from_coords(cls, coords: Sequence[Sequence[float]]) -> ConvexPolygon:
        return cls(tuple(Point(float(x), float(y)) for x, y in coords))

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    def coords(self) -> np.ndarray:
        return np.array([(p.x, p.y) for p in self.vertices], dtype=float).reshape(-1, 2)

    def translate(self, dx: float, dy: float) -> ConvexPolygon:
        return ConvexPolygon(tuple(Point(p.x + dx, p.y + dy) for p in self.vertices))


EMPTY = ConvexPolygon()


def hex_to_polygon(h: Hexagon) -> ConvexPolygon:
    """Vertices ``center + radius * (cos k60, sin k60)`` for k = 0..5."""
    cx, cy, r = h.center.x, h.center.y, h.radius
    verts = []
    for k in range(6):
        t = math.radians(60 * k)
        verts.append(Point(cx + r * math.cos(t), cy + r * math.sin(t)))
    return ConvexPolygon(tuple(verts))


def contains(h: Hexagon, p: Point) -> bool:
    """True if ``p`` is inside ``h`` or within ``EPS_GEOM`` of its boundary."""
    dx = abs(p.x - h.center.x)
    dy = abs(p.y - h.center.y)
    a = 0.5 * SQRT3 * h.radius
    return dy <= a + EPS_GEOM and 0.5 * SQRT3 * dx + 0.5 * dy <= a + EPS_GEOM


def contains_array(cx: float, cy: float, r: float, px: np.ndarray, py: np.ndarray) -> np.ndarray:
    """Vectorised :func:`contains` for a single hexagon and many points."""
    dx = np.abs(px - cx)
    dy = np.abs(py - cy)
    a = 0.5 * SQRT3 * r
    return (dy <= a + EPS_GEOM) & (0.5 * SQRT3 * dx + 0.5 * dy <= a + EPS_GEOM)


def _cross(o: Point, a: Point, b: Point) -> float:
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)


def polygon_contains(poly: ConvexPolygon, p: Point) -> bool:
    """Half-plane test of ``p`` against every edge of a CCW convex polygon."""
    if poly.is_empty:
        return False
    vs = poly.vertices
    for i, a in enumerate(vs):
        b = vs[(i + 1) % len(vs)]
        edge = math.hypot(b.x - a.x, b.y - a.y)
        if _cross(a, b, p) < -EPS_GEOM * edge:
            return False
    return True


def area(poly: ConvexPolygon) -> float:
    """Shoelace area; 0 for the empty polygon."""
    vs = poly.vertices
    if not vs:
        return 0.0
    s = 0.0
    n = len(vs)
    for i in range(n):
        a, b = vs[i], vs[(i + 1) % n]
        s += a.x * b.y - b.x * a.y
    return max(0.5 * s, 0.0)


def _dedupe(points: list[Point]) -> list[Point]:
    out: list[Point] = []
    for p in points:
        if out and abs(p.x - out[-1].x) <= EPS_GEOM and abs(p.y - out[-1].y) <= EPS_GEOM:
            continue
        out.append(p)
    while len(out) > 1 and abs(out[0].x - out[-1].x) <= EPS_GEOM and abs(out[0].y - out[-1].y) <= EPS_GEOM:
        out.pop()
    return out


def clip_convex(subject: ConvexPolygon, clip: ConvexPolygon) -> ConvexPolygon:
    """Intersection of two convex polygons (Sutherland-Hodgman).

    Results thinner than ``EPS_GEOM`` collapse to the empty polygon.
    """
    if subject.is_empty or clip.is_empty:
        return EMPTY
    out = list(subject.vertices)
    cv = clip.vertices
    for i in range(len(cv)):
        a, b = cv[i], cv[(i + 1) % len(cv)]
        if not out:
            break
        inp, out = out, []
        prev = inp[-1]
        d_prev = _cross(a, b, prev)
        for cur in inp:
            d_cur = _cross(a, b, cur)
            if d_cur >= 0.0:
                if d_prev < 0.0:
                    out.append(_lerp(prev, cur, d_prev, d_cur))
                out.append(cur)
            elif d_prev >= 0.0:
                out.append(_lerp(prev, cur, d_prev, d_cur))
            prev, d_prev = cur, d_cur
    out = _dedupe(out)
    if len(out) < 3:
        return EMPTY
    poly = ConvexPolygon(tuple(out))
    # a sliver's area is at most its width times its diameter
    if area(poly) <= EPS_GEOM * max(_diameter(poly), 1.0):
        return EMPTY
    return poly


def _lerp(p: Point, q: Point, dp: float, dq: float) -> Point:
    t = dp / (dp - dq)
    return Point(p.x + t * (q.x - p.x), p.y + t * (q.y - p.y))


def _diameter(poly: ConvexPolygon) -> float:
    c = poly.coords()
    return float(np.max(np.ptp(c, axis=0)))


def sample_uniform(h: Hexagon, rng: np.random.Generator) -> Point:
    """One point drawn uniformly from ``h``."""
    xy = sample_uniform_array(h, 1, rng)
    return Point(float(xy[0, 0]), float(xy[0, 1]))


def sample_uniform_array(h: Hexagon, n: int, rng: np.random.Generator) -> np.ndarray:
    """``n`` uniform points in ``h`` as an ``(n, 2)`` array.

    Each draw picks one of the six equilateral triangles fanning out from the
    centre and a uniform point in it (folded unit square), so exactly three
    random numbers are consumed per point.
    """
    return _sample_hex(h.center.x, h.center.y, h.radius, n, rng)


_VX = np.cos(np.radians(60.0 * np.arange(7)))
_VY = np.sin(np.radians(60.0 * np.arange(7)))


def _sample_hex(cx: float, cy: float, r: float, n: int, rng: np.random.Generator) -> np.ndarray:
    k = rng.integers(0, 6, size=n)
    u = rng.random(n)
    v = rng.random(n)
    fold = u + v > 1.0
    u = np.where(fold, 1.0 - u, u)
    v = np.where(fold, 1.0 - v, v)
    out = np.empty((n, 2))
    out[:, 0] = cx + r * (u * _VX[k] + v * _VX[k + 1])
    out[:, 1] = cy + r * (u * _VY[k] + v * _VY[k + 1])
    return out


def sextant(h: Hexagon, px: np.ndarray, py: np.ndarray) -> np.ndarray:
    """Index 0..5 of the centre triangle holding each point."""
    ang = np.arctan2(py - h.center.y, px - h.center.x) % (2 * np.pi)
    return np.minimum((ang // (np.pi / 3)).astype(int), 5)


# --- co-oriented hexagon intersections in closed form ---------------------
#
# A co-oriented hexagon is the set lo_k <= n_k . p <= hi_k for the three slab
# normals.  Intersections of such sets keep the same form (max of lo, min of
# hi), and their area has a piecewise-quadratic closed form in the six bounds.


def slab_bounds(cx, cy, r):
    """``(lo, hi)`` arrays of shape ``(..., 3)`` describing co-oriented hexagons."""
    cx = np.asarray(cx, dtype=float)
    cy = np.asarray(cy, dtype=float)
    centre = cx[..., None] * SLAB_NORMALS[:, 0] + cy[..., None] * SLAB_NORMALS[:, 1]
    a = 0.5 * SQRT3 * np.asarray(r, dtype=float)[..., None]
    return centre - a, centre + a


def _ramp2(s):
    s = np.maximum(s, 0.0)
    return 0.5 * s * s


def slab_area(lo, hi) -> np.ndarray:
    """Area of ``{p : lo_k <= n_k . p <= hi_k}`` for each leading index.

    In coordinates ``(u1, u2) = (n_0 . p, n_1 . p)`` the region is a box cut
    by the slab ``-hi3 <= u1 + u2 <= -lo3``; the Jacobian back to ``p`` is
    ``2 / sqrt(3)``.  The box is shifted to the origin first so that no term
    grows with the distance of the region from the origin.
    """
    lo = np.asarray(lo, dtype=float)
    hi = np.asarray(hi, dtype=float)
    w1 = hi[..., 0] - lo[..., 0]
    w2 = hi[..., 1] - lo[..., 1]
    shift = lo[..., 0] + lo[..., 1]
    c_hi = -(lo[..., 2] + shift)
    c_lo = -(hi[..., 2] + shift)

    def below(c):
        return _ramp2(c) - _ramp2(c - w1) - _ramp2(c - w2) + _ramp2(c - w1 - w2)

    ok = (w1 > 0) & (w2 > 0) & (c_hi > c_lo)
    res = np.where(ok, (below(c_hi) - below(c_lo)) * (2.0 / SQRT3), 0.0)
    return np.where(res > 1e-14, res, 0.0)


def cooriented_intersection_area(hexagons: Sequence[Hexagon]) -> float:
    """Exact area of the intersection of co-oriented hexagons."""
    if not hexagons:
        raise ValueError("need at least one hexagon")
    lo, hi = slab_bounds([h.center.x for h in hexagons],
                         [h.center.y for h in hexagons],
                         [h.radius for h in hexagons])
    return float(slab_area(lo.max(axis=0), hi.min(axis=0)))
