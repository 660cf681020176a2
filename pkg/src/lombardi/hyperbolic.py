"""Poincare-disk primitives: geodesics, ideal points, wedges, spaced rays.

The model is conformal, so hyperbolic angles are measured directly between
the Euclidean tangents of the geodesic arcs. Geodesics are either diameter
segments or arcs of circles orthogonal to the unit circle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import CoincidentPoints, PointOutsideWedge
from .geometry import (
    Arc,
    Circle,
    Direction,
    Point,
    arc_from_tangent,
    norm_angle,
    wrap_angle,
)

UNIT = Circle(Point(0.0, 0.0), 1.0)

_COLLINEAR_EPS = 1e-13


@dataclass(frozen=True)
class HPoint:
    """A point of the closed disk; ideal points sit on the unit circle."""

    location: Point
    ideal: bool = False

    def __post_init__(self):
        r = self.location.norm()
        if self.ideal:
            if abs(r - 1.0) > 1e-6:
                raise ValueError(f"ideal point must lie on the unit circle, |p|={r}")
            if r != 1.0:  # renormalize within tolerance
                object.__setattr__(self, "location", self.location * (1.0 / r))
        elif r >= 1.0:
            raise ValueError(f"interior point must satisfy |p| < 1, got {r}")

    @staticmethod
    def interior(p: Point) -> "HPoint":
        return HPoint(p, False)

    @staticmethod
    def ideal_at(angle: float) -> "HPoint":
        return HPoint(Point(math.cos(angle), math.sin(angle)), True)


@dataclass(frozen=True)
class Geodesic:
    """Supporting arc of a geodesic segment (diameter chord or orthogonal arc)."""

    arc: Arc

    def __post_init__(self):
        if not self.arc.is_segment:
            c = self.arc.center
            r = self.arc.radius
            if abs(c.dot(c) - (1.0 + r * r)) > 1e-9 * (1.0 + r * r):
                raise ValueError("geodesic arc is not orthogonal to the unit circle")

    def tangent_from_start(self) -> Direction:
        return self.arc.travel_at_p()


def _orthogonal_center(a: Point, b: Point) -> Point | None:
    """Center of the circle through a, b orthogonal to the unit circle."""
    det = 4.0 * a.cross(b)
    if abs(det) < _COLLINEAR_EPS * max(1.0, a.norm() * b.norm()):
        return None  # a, b, origin collinear: the geodesic is a diameter
    r1 = a.dot(a) + 1.0
    r2 = b.dot(b) + 1.0
    cx = (r1 * 2.0 * b.y - r2 * 2.0 * a.y) / det
    cy = (r2 * 2.0 * a.x - r1 * 2.0 * b.x) / det
    return Point(cx, cy)


def geodesic_through(a: HPoint, b: HPoint) -> Geodesic:
    """The geodesic segment from a to b (returned arc starts at a)."""
    pa, pb = a.location, b.location
    if pa.dist(pb) <= 1e-12:
        raise CoincidentPoints("geodesic endpoints coincide")
    c = _orthogonal_center(pa, pb)
    if c is None:
        return Geodesic(Arc(pa, pb, 0.0))
    # Of the two arcs of the orthogonal circle, take the one inside the disk.
    radial = Direction.of(pa - c)
    best = None
    for side in (math.pi / 2.0, -math.pi / 2.0):
        cand = arc_from_tangent(pa, radial.rotated(side), pb)
        if best is None or cand.midpoint().norm() < best.midpoint().norm():
            best = cand
    return Geodesic(best)


def ray_ideal_endpoint(x: Point, d: Direction) -> Point:
    """Ideal endpoint of the geodesic ray leaving interior point x along d."""
    v = d.vector()
    if abs(x.cross(v)) < _COLLINEAR_EPS * max(1.0, x.norm()):
        # straight ray through the origin
        b = x.dot(v)
        t = -b + math.sqrt(b * b + 1.0 - x.dot(x))
        return x + v * t
    c = _orthogonal_center_for_ray(x, v)
    dist = c.norm()
    along = 1.0 / dist  # chord foot distance from the origin toward c
    foot = c * (along / dist)
    h = math.sqrt(max(0.0, 1.0 - along * along))
    n = Point(-c.y / dist, c.x / dist)
    cand = (foot + n * h, foot - n * h)
    # first ideal point encountered when traveling from x in direction v
    orient = 1.0 if (x - c).cross(v) > 0.0 else -1.0
    ax = (x - c).angle()
    rels = [norm_angle(orient * ((p - c).angle() - ax)) for p in cand]
    return cand[0] if rels[0] <= rels[1] else cand[1]


def _orthogonal_center_for_ray(x: Point, v: Point) -> Point:
    # solve 2 c.x = |x|^2 + 1 and c.v = x.v
    det = 2.0 * x.cross(v)
    rhs1 = x.dot(x) + 1.0
    rhs2 = x.dot(v)
    cx = (rhs1 * v.y - 2.0 * rhs2 * x.y) / det
    cy = (2.0 * rhs2 * x.x - rhs1 * v.x) / det
    return Point(cx, cy)


def tangent_toward(x: Point, target: Point) -> Direction:
    """Tangent direction at x of the geodesic from x toward target."""
    kind_x = HPoint(x, abs(x.norm() - 1.0) <= 1e-12)
    kind_t = HPoint(target, abs(target.norm() - 1.0) <= 1e-12)
    return geodesic_through(kind_x, kind_t).tangent_from_start()


def point_on_ray(base: HPoint, ideal_end: HPoint, t: float) -> HPoint:
    """Monotone parameterization of the ray from base (t=0) to an ideal point (t=1)."""
    if not ideal_end.ideal:
        raise ValueError("ray endpoint must be ideal")
    if base.ideal:
        raise ValueError("ray base must be interior")
    if t <= 0.0:
        return base
    if t >= 1.0:
        return ideal_end
    g = geodesic_through(base, ideal_end)
    return HPoint(g.arc.point_at(t), False)


@dataclass(frozen=True)
class Wedge:
    """Angular sector at an apex, spanning ccw from boundary lo to boundary hi."""

    apex: HPoint
    lo: Direction
    hi: Direction

    @property
    def opening(self) -> float:
        return self.lo.ccw_to(self.hi)

    @property
    def axis(self) -> Direction:
        return self.lo.rotated(0.5 * self.opening)


def wedge_opening(x: HPoint, w: Wedge) -> float:
    """Largest angle to the wedge axis ray achievable by a ray from x
    that stays inside the wedge.

    Computed as the angle at x between the axis ray's ideal endpoint and
    each boundary's ideal endpoint, minimized over the two boundaries.
    Rises from half the apex opening (x at the apex) to pi (x ideal).
    """
    apex = w.apex.location
    if x.ideal:
        return math.pi
    at_apex = x.location.dist(apex) <= 1e-12
    if at_apex:
        dir_r = w.axis
    else:
        dir_r = tangent_toward(apex, x.location)
        off = w.lo.ccw_to(dir_r)
        if off > w.opening + 1e-9:
            raise PointOutsideWedge("x is not inside the wedge")
    v_inf = ray_ideal_endpoint(apex, dir_r)
    if at_apex:
        t_ref = dir_r
    else:
        t_ref = tangent_toward(x.location, v_inf)
    best = math.pi
    for boundary in (w.lo, w.hi):
        ideal = ray_ideal_endpoint(apex, boundary)
        t_b = tangent_toward(x.location, ideal)
        best = min(best, abs(wrap_angle(t_b.angle - t_ref.angle)))
    return best


def equally_spaced_ideal_rays(x: HPoint, incoming: Direction, d: int) -> list[HPoint]:
    """Ideal endpoints of d-1 new rays completing a 2*pi/d fan at x.

    `incoming` is the travel direction of the parent edge as it arrives at
    x; the reversed direction (back toward the parent) is the remaining
    spoke of the fan. New rays are returned in ccw order from it.
    """
    if x.ideal:
        raise ValueError("fan center must be interior")
    if d < 2:
        raise ValueError("degree must be at least 2")
    back = incoming.reversed()
    out = []
    for k in range(1, d):
        ray = back.rotated(2.0 * math.pi * k / d)
        out.append(HPoint(ray_ideal_endpoint(x.location, ray), True))
    return out
