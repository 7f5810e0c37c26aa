import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from hexdep.hexgeom import (
    EMPTY,
    ConvexPolygon,
    Hexagon,
    Point,
    area,
    clip_convex,
    contains,
    contains_array,
    cooriented_intersection_area,
    hex_to_polygon,
    polygon_contains,
    sample_uniform,
    sample_uniform_array,
    sextant,
)

from conftest import SQRT3, convex_hull

UNIT = Hexagon(Point(0.0, 0.0), 1.0)

coord = st.floats(-5, 5, allow_nan=False, allow_infinity=False)
points = st.lists(st.tuples(coord, coord), min_size=3, max_size=9)


def _poly(pts):
    poly = convex_hull(pts)
    assume(not poly.is_empty and area(poly) > 1e-3)
    return poly


# --- hex_to_polygon ------------------------------------------------------

def test_unit_hexagon_vertices():
    vs = hex_to_polygon(UNIT).vertices
    assert len(vs) == 6
    assert (vs[0].x, vs[0].y) == pytest.approx((1.0, 0.0))
    assert (vs[3].x, vs[3].y) == pytest.approx((-1.0, 0.0), abs=1e-15)


def test_radius_two_area():
    assert area(hex_to_polygon(Hexagon(Point(0, 0), 2.0))) == pytest.approx(1.5 * SQRT3 * 4, rel=1e-14)


def test_translated_hexagon_vertices():
    a = hex_to_polygon(UNIT).coords()
    b = hex_to_polygon(Hexagon(Point(3.0, 0.0), 1.0)).coords()
    np.testing.assert_allclose(b - a, np.tile([3.0, 0.0], (6, 1)), atol=1e-15)


# --- contains -------------------------------------------------------------

def test_contains_center_boundary_and_beyond_apothem():
    assert contains(UNIT, Point(0, 0))
    assert contains(UNIT, Point(1, 0))
    assert contains(UNIT, Point(0, 0.8660))
    assert not contains(UNIT, Point(0, 0.8661))
    assert not contains(UNIT, Point(1.001, 0))


@given(coord, coord, st.floats(0.1, 4))
def test_contains_matches_halfplane_clipping(x, y, r):
    h = Hexagon(Point(0.3, -0.2), r)
    p = Point(x, y)
    # skip the eps-band where the two tolerances (absolute vs edge-scaled) differ
    poly = hex_to_polygon(h)
    d = min(_edge_distance(poly, p))
    assume(abs(d) > 1e-7)
    assert contains(h, p) == polygon_contains(poly, p)


def _edge_distance(poly, p):
    vs = poly.vertices
    for i, a in enumerate(vs):
        b = vs[(i + 1) % len(vs)]
        ex, ey = b.x - a.x, b.y - a.y
        yield (ex * (p.y - a.y) - ey * (p.x - a.x)) / math.hypot(ex, ey)


def test_contains_array_agrees_with_scalar(rng):
    xy = rng.uniform(-2, 2, size=(2000, 2))
    vec = contains_array(0.5, 0.1, 1.3, xy[:, 0], xy[:, 1])
    h = Hexagon(Point(0.5, 0.1), 1.3)
    assert vec.tolist() == [contains(h, Point(x, y)) for x, y in xy]


# --- area -----------------------------------------------------------------

def test_area_unit_hexagon_and_square():
    assert area(hex_to_polygon(UNIT)) == pytest.approx(3 * SQRT3 / 2, rel=1e-15)
    square = ConvexPolygon.from_coords([(0, 0), (1, 0), (1, 1), (0, 1)])
    assert area(square) == 1.0
    assert area(EMPTY) == 0.0


@given(st.floats(0.01, 100))
def test_hexagon_area_scaling(r):
    assert area(hex_to_polygon(Hexagon(Point(0, 0), r))) == pytest.approx(r * r * 1.5 * SQRT3, rel=1e-12)


# --- clip_convex ----------------------------------------------------------

def test_clip_idempotent():
    p = hex_to_polygon(UNIT)
    assert area(clip_convex(p, p)) == pytest.approx(area(p), rel=1e-12)


def test_clip_disjoint_is_empty():
    far = hex_to_polygon(Hexagon(Point(10, 0), 1.0))
    out = clip_convex(hex_to_polygon(UNIT), far)
    assert out.is_empty and area(out) == 0.0


def test_clip_overlap_matches_hit_count(rng):
    """Unit hexagons 1.5 apart: clipped area vs a 10^6-point hit count over the box."""
    a, b = UNIT, Hexagon(Point(1.5, 0.0), 1.0)
    exact = area(clip_convex(hex_to_polygon(a), hex_to_polygon(b)))
    n = 1_000_000
    # bounding box of the union: x in [-1, 2.5], y in [-sqrt3/2, sqrt3/2]
    x = rng.uniform(-1.0, 2.5, n)
    y = rng.uniform(-SQRT3 / 2, SQRT3 / 2, n)
    hit = contains_array(0, 0, 1, x, y) & contains_array(1.5, 0, 1, x, y)
    box = 3.5 * SQRT3
    p = hit.mean()
    est, se = p * box, box * math.sqrt(p * (1 - p) / n)
    assert abs(exact - est) <= 3 * se


@settings(max_examples=200)
@given(points, points)
def test_clip_commutative_and_bounded(pa, pb):
    a, b = _poly(pa), _poly(pb)
    ab, ba = area(clip_convex(a, b)), area(clip_convex(b, a))
    scale = max(area(a), area(b))
    assert abs(ab - ba) <= 1e-12 * scale
    assert ab <= min(area(a), area(b)) + 1e-12 * scale


@settings(max_examples=200)
@given(points, points, coord, coord)
def test_clip_translation_invariant(pa, pb, dx, dy):
    a, b = _poly(pa), _poly(pb)
    base = area(clip_convex(a, b))
    moved = area(clip_convex(a.translate(dx, dy), b.translate(dx, dy)))
    # inside/outside tests use an absolute 1e-9 tolerance, so area may move by ~eps * perimeter
    assert abs(base - moved) <= 1e-7


@settings(max_examples=300)
@given(st.lists(st.tuples(coord, coord, st.floats(0.2, 4)), min_size=1, max_size=3))
def test_cooriented_formula_matches_clipping(hexes):
    hs = [Hexagon(Point(x, y), r) for x, y, r in hexes]
    poly = hex_to_polygon(hs[0])
    for h in hs[1:]:
        poly = clip_convex(poly, hex_to_polygon(h))
    assert cooriented_intersection_area(hs) == pytest.approx(area(poly), abs=1e-9)


# --- sampling -------------------------------------------------------------

def test_sample_single_point_is_inside(rng):
    h = Hexagon(Point(2.0, -1.0), 0.7)
    for _ in range(100):
        assert contains(h, sample_uniform(h, rng))


def test_samples_all_inside(rng):
    h = Hexagon(Point(-3.0, 4.0), 2.5)
    xy = sample_uniform_array(h, 100_000, rng)
    assert contains_array(-3.0, 4.0, 2.5, xy[:, 0], xy[:, 1]).all()


def test_sample_mean_is_center(rng):
    n = 1_000_000
    xy = sample_uniform_array(UNIT, n, rng)
    # per-axis variance of a uniform unit hexagon is 5/24
    se = math.sqrt(5 / 24 / n)
    assert abs(xy[:, 0].mean()) <= 4 * se
    assert abs(xy[:, 1].mean()) <= 4 * se


def test_sextant_fractions(rng):
    n = 1_000_000
    xy = sample_uniform_array(UNIT, n, rng)
    frac = np.bincount(sextant(UNIT, xy[:, 0], xy[:, 1]), minlength=6) / n
    se = math.sqrt((1 / 6) * (5 / 6) / n)
    assert np.all(np.abs(frac - 1 / 6) <= 4 * se)


def test_sampling_is_reproducible():
    a = sample_uniform_array(UNIT, 1000, np.random.default_rng(5))
    b = sample_uniform_array(UNIT, 1000, np.random.default_rng(5))
    assert np.array_equal(a, b)


def test_invalid_shapes_rejected():
    with pytest.raises(ValueError):
        Hexagon(Point(0, 0), 0.0)
    with pytest.raises(ValueError):
        Point(float("nan"), 0.0)
    with pytest.raises(ValueError):
        ConvexPolygon.from_coords([(0, 0), (1, 1)])
