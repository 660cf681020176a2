import math
import random

import pytest

from lombardi.errors import CoincidentPoints, PointOutsideWedge
from lombardi.geometry import Direction, Point, arc_clearance, wrap_angle
from lombardi.hyperbolic import (
    HPoint,
    Wedge,
    equally_spaced_ideal_rays,
    geodesic_through,
    point_on_ray,
    ray_ideal_endpoint,
    tangent_toward,
    wedge_opening,
)

ORIGIN = HPoint(Point(0.0, 0.0))


def test_geodesic_through_origin_is_diameter():
    g = geodesic_through(ORIGIN, HPoint.ideal_at(0.0))
    assert g.arc.is_segment
    assert g.arc.q.dist(Point(1, 0)) < 1e-12


def test_geodesic_between_perpendicular_ideals():
    g = geodesic_through(HPoint.ideal_at(0.0), HPoint.ideal_at(math.pi / 2))
    assert g.arc.center.dist(Point(1, 1)) < 1e-9
    assert abs(g.arc.radius - 1.0) < 1e-9


def test_geodesic_is_symmetric_point_set():
    a = HPoint(Point(0.3, 0.4))
    b = HPoint(Point(-0.5, 0.1))
    g1 = geodesic_through(a, b)
    g2 = geodesic_through(b, a)
    for t in (0.0, 0.25, 0.5, 0.75, 1.0):
        assert arc_clearance(g2.arc, g1.arc.point_at(t)) < 1e-12


def test_geodesic_coincident_raises():
    with pytest.raises(CoincidentPoints):
        geodesic_through(ORIGIN, ORIGIN)


def test_geodesic_orthogonality_invariant():
    rng = random.Random(2)
    for _ in range(300):
        a = HPoint(Point.polar(rng.uniform(0, 0.95), rng.uniform(0, 2 * math.pi)))
        b = HPoint(Point.polar(rng.uniform(0, 0.95), rng.uniform(0, 2 * math.pi)))
        if a.location.dist(b.location) < 1e-3:
            continue
        g = geodesic_through(a, b)
        if g.arc.is_segment:
            assert abs(a.location.cross(b.location)) < 1e-9
        else:
            c, r = g.arc.center, g.arc.radius
            assert abs(c.dot(c) - (1.0 + r * r)) <= 1e-9 * (1.0 + r * r)
        # endpoints bound the inside-disk portion
        assert g.arc.midpoint().norm() < 1.0 + 1e-12


def test_point_on_ray_diameter_euclidean_midpoint():
    p = point_on_ray(ORIGIN, HPoint.ideal_at(0.0), 0.5)
    assert p.location.dist(Point(0.5, 0.0)) < 1e-12


def test_point_on_ray_limits_and_membership():
    base = HPoint(Point(0.2, -0.1))
    end = HPoint.ideal_at(2.0)
    g = geodesic_through(base, end)
    prev_dist = -1.0
    for t in (0.001, 0.2, 0.5, 0.8, 0.999):
        p = point_on_ray(base, end, t)
        assert arc_clearance(g.arc, p.location) < 1e-10
        d = p.location.dist(end.location)
        if prev_dist >= 0:
            assert d < prev_dist  # monotone approach to the ideal end
        prev_dist = d
    assert point_on_ray(base, end, 0.0).location.dist(base.location) == 0.0
    assert point_on_ray(base, end, 1.0).ideal


def test_ray_ideal_endpoint_is_ideal_and_forward():
    rng = random.Random(9)
    for _ in range(300):
        x = Point.polar(rng.uniform(0, 0.9), rng.uniform(0, 2 * math.pi))
        d = Direction(rng.uniform(0, 2 * math.pi))
        isle = ray_ideal_endpoint(x, d)
        assert abs(isle.norm() - 1.0) < 1e-9
        # the ray leaves x in direction d toward that endpoint
        t = tangent_toward(x, isle)
        assert abs(wrap_angle(t.angle - d.angle)) < 1e-9


def _symmetric_wedge(apex: HPoint, axis: float, half: float) -> Wedge:
    return Wedge(apex, Direction(axis - half), Direction(axis + half))


def test_wedge_opening_at_apex_is_half_opening():
    w = _symmetric_wedge(HPoint(Point(0.1, 0.2)), 0.7, math.pi / 3)
    assert abs(wedge_opening(w.apex, w) - math.pi / 3) < 1e-9


def test_wedge_opening_tends_to_pi():
    w = _symmetric_wedge(ORIGIN, 0.0, math.pi / 3)
    end = HPoint.ideal_at(0.0)
    val = wedge_opening(point_on_ray(ORIGIN, end, 1.0 - 1e-7), w)
    assert val > math.pi - 1e-3


def test_wedge_opening_monotone_sweep():
    rng = random.Random(33)
    for _ in range(20):
        apex = HPoint(Point.polar(rng.uniform(0, 0.5), rng.uniform(0, 2 * math.pi)))
        axis = rng.uniform(0, 2 * math.pi)
        half = rng.uniform(0.3, math.pi / 2)
        w = _symmetric_wedge(apex, axis, half)
        end = HPoint(ray_ideal_endpoint(apex.location, Direction(axis)), True)
        prev = 0.0
        for i in range(100):
            t = (i + 1) / 101.0
            x = point_on_ray(apex, end, t)
            val = wedge_opening(x, w)
            assert val >= prev - 1e-12
            prev = val
        assert prev > half  # strictly grew beyond the apex value


def test_wedge_opening_outside_raises():
    w = _symmetric_wedge(ORIGIN, 0.0, 0.3)
    with pytest.raises(PointOutsideWedge):
        wedge_opening(HPoint(Point(-0.5, 0.0)), w)


def test_equally_spaced_rays_base_case():
    pts = equally_spaced_ideal_rays(ORIGIN, Direction(0.0), 3)
    angles = sorted(norm := [p.location.angle() for p in pts])
    want = sorted([-math.pi / 3, math.pi / 3])
    for got, expect in zip(angles, want):
        assert abs(got - expect) < 1e-12
    assert all(abs(p.location.norm() - 1.0) < 1e-12 for p in pts)


def test_equally_spaced_rays_angle_audit():
    rng = random.Random(77)
    for _ in range(50):
        x = HPoint(Point.polar(rng.uniform(0, 0.85), rng.uniform(0, 2 * math.pi)))
        incoming = Direction(rng.uniform(0, 2 * math.pi))
        d = rng.randint(2, 7)
        pts = equally_spaced_ideal_rays(x, incoming, d)
        dirs = [incoming.reversed()] + [tangent_toward(x.location, p.location) for p in pts]
        angles = sorted(dd.angle for dd in dirs)
        for i in range(d):
            gap = (angles[(i + 1) % d] - angles[i]) % (2 * math.pi)
            assert abs(gap - 2 * math.pi / d) < 1e-10
