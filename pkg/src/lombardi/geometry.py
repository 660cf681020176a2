"""Euclidean kernel: points, directions, circles, circular arcs, Mobius maps.

Arcs are encoded by their two endpoints plus a signed *bulge*, the tangent
of one quarter of the signed central angle (positive = counterclockwise
travel from p to q). Bulge 0 encodes a straight segment, and tangent
directions are continuous through that limit, so near-flat arcs never go
through an ill-conditioned center computation. The "pair of collinear
rays" configuration (central angle 2*pi) has infinite bulge and is
rejected with DegenerateArc; callers perturb their inputs instead.

All types are immutable values and all functions are pure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

from .errors import (
    CoincidentPoints,
    DegenerateArc,
    DegenerateLocus,
    IdenticalCircles,
    InfiniteImage,
)

TWO_PI = 2.0 * math.pi

# Default tolerances; every construction is closed-form, so these are tight.
POS_EPS = 1e-9
ANG_EPS = 1e-10

# Below this |bulge| an arc is treated as a segment in center-based math.
_SEGMENT_BULGE = 1e-12


def wrap_angle(a: float) -> float:
    """Reduce an angle to (-pi, pi]."""
    a = math.fmod(a, TWO_PI)
    if a <= -math.pi:
        a += TWO_PI
    elif a > math.pi:
        a -= TWO_PI
    return a


def norm_angle(a: float) -> float:
    """Reduce an angle to [0, 2*pi)."""
    a = math.fmod(a, TWO_PI)
    return a + TWO_PI if a < 0.0 else a


@dataclass(frozen=True)
class Point:
    x: float
    y: float

    def __add__(self, other: "Point") -> "Point":
        return Point(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Point") -> "Point":
        return Point(self.x - other.x, self.y - other.y)

    def __mul__(self, s: float) -> "Point":
        return Point(self.x * s, self.y * s)

    __rmul__ = __mul__

    def dot(self, other: "Point") -> float:
        return self.x * other.x + self.y * other.y

    def cross(self, other: "Point") -> float:
        return self.x * other.y - self.y * other.x

    def norm(self) -> float:
        return math.hypot(self.x, self.y)

    def dist(self, other: "Point") -> float:
        return math.hypot(self.x - other.x, self.y - other.y)

    def angle(self) -> float:
        return math.atan2(self.y, self.x)

    def as_complex(self) -> complex:
        return complex(self.x, self.y)

    @staticmethod
    def from_complex(z: complex) -> "Point":
        return Point(z.real, z.imag)

    @staticmethod
    def polar(r: float, a: float) -> "Point":
        return Point(r * math.cos(a), r * math.sin(a))


@dataclass(frozen=True)
class Direction:
    """A direction in the plane, stored as an angle normalized to [0, 2*pi)."""

    angle: float

    def __post_init__(self):
        object.__setattr__(self, "angle", norm_angle(self.angle))

    def vector(self) -> Point:
        return Point(math.cos(self.angle), math.sin(self.angle))

    def rotated(self, by: float) -> "Direction":
        return Direction(self.angle + by)

    def reversed(self) -> "Direction":
        return Direction(self.angle + math.pi)

    def signed_to(self, other: "Direction") -> float:
        """Signed rotation in (-pi, pi] taking this direction to `other`."""
        return wrap_angle(other.angle - self.angle)

    def ccw_to(self, other: "Direction") -> float:
        """Counterclockwise rotation in [0, 2*pi) taking this to `other`."""
        return norm_angle(other.angle - self.angle)

    @staticmethod
    def of(v: Point) -> "Direction":
        return Direction(math.atan2(v.y, v.x))


@dataclass(frozen=True)
class Circle:
    center: Point
    radius: float

    def __post_init__(self):
        if not (self.radius > 0.0 and math.isfinite(self.radius)):
            raise ValueError(f"circle radius must be positive finite, got {self.radius}")

    def point_at(self, a: float) -> Point:
        return self.center + Point.polar(self.radius, a)

    def contains(self, p: Point, tol: float = POS_EPS) -> bool:
        return abs(p.dist(self.center) - self.radius) <= tol * max(1.0, self.radius)


@dataclass(frozen=True)
class Arc:
    """Circular arc or segment from p to q with bulge = tan(theta/4).

    theta is the signed central angle of travel from p to q, counter-
    clockwise positive, in (-2*pi, 2*pi). bulge 0 is a segment.
    """

    p: Point
    q: Point
    bulge: float

    def __post_init__(self):
        if not math.isfinite(self.bulge):
            raise DegenerateArc("bulge must be finite (collinear-ray configuration)")
        if self.p.dist(self.q) <= POS_EPS:
            raise CoincidentPoints("arc endpoints coincide")

    @property
    def is_segment(self) -> bool:
        return self.bulge == 0.0

    @cached_property
    def central_angle(self) -> float:
        return 4.0 * math.atan(self.bulge)

    @cached_property
    def chord(self) -> float:
        return self.p.dist(self.q)

    @cached_property
    def radius(self) -> float:
        b = abs(self.bulge)
        if b < _SEGMENT_BULGE:
            return math.inf
        return self.chord * (1.0 + b * b) / (4.0 * b)

    @cached_property
    def center(self) -> Point:
        if abs(self.bulge) < _SEGMENT_BULGE:
            raise DegenerateArc("segment has no center")
        # Center sits perpendicular to the travel direction at p, on the
        # left for ccw travel and on the right for cw travel.
        side = math.pi / 2.0 if self.bulge > 0.0 else -math.pi / 2.0
        return self.p + Point.polar(self.radius, self.travel_at_p().angle + side)

    @property
    def circle(self) -> Circle:
        return Circle(self.center, self.radius)

    @cached_property
    def _start_angle(self) -> float:
        return (self.p - self.center).angle()

    def travel_at_p(self) -> Direction:
        """Direction of travel (p toward q) at p."""
        delta = (self.q - self.p).angle()
        return Direction(delta - 0.5 * self.central_angle)

    def travel_at_q(self) -> Direction:
        """Direction of travel (p toward q) at q."""
        delta = (self.q - self.p).angle()
        return Direction(delta + 0.5 * self.central_angle)

    def point_at(self, t: float) -> Point:
        """Point at parameter t in [0, 1], measured by swept angle."""
        if abs(self.bulge) < _SEGMENT_BULGE:
            return self.p + (self.q - self.p) * t
        c = self.center
        start = (self.p - c).angle()
        return c + Point.polar(self.radius, start + t * self.central_angle)

    def midpoint(self) -> Point:
        return self.point_at(0.5)

    def reversed(self) -> "Arc":
        return Arc(self.q, self.p, -self.bulge)

    def angle_in_extent(self, ang: float, tol: float = 1e-9) -> bool:
        """Whether a point at angle `ang` on the supporting circle is on the arc."""
        theta = self.central_angle
        rel = norm_angle((ang - self._start_angle) * (1.0 if theta > 0 else -1.0))
        return rel <= abs(theta) + tol or rel >= TWO_PI - tol


def endpoint_tangents(a: Arc) -> tuple[Direction, Direction]:
    """Tangent directions pointing INTO the arc from each endpoint.

    For a segment these are the two opposite chord directions.
    """
    return a.travel_at_p(), a.travel_at_q().reversed()


def arc_from_tangent(p: Point, dir_p: Direction, q: Point) -> Arc:
    """The unique arc or segment from p to q leaving p with tangent dir_p."""
    if p.dist(q) <= POS_EPS:
        raise CoincidentPoints("arc endpoints coincide")
    delta = (q - p).angle()
    half = wrap_angle(delta - dir_p.angle)
    if abs(abs(half) - math.pi) <= ANG_EPS:
        raise DegenerateArc("tangent anti-aligned with chord: collinear-ray configuration")
    return Arc(p, q, math.tan(0.5 * half))


def arc_through(p: Point, mid: Point, q: Point) -> Arc:
    """The arc from p to q passing through interior point mid."""
    if p.dist(q) <= POS_EPS or p.dist(mid) <= POS_EPS or q.dist(mid) <= POS_EPS:
        raise CoincidentPoints("arc_through needs three distinct points")
    # Inscribed angle at mid determines the central angle of the p->q arc
    # on the far side of the chord from mid.
    phi = wrap_angle((q - mid).angle() - (p - mid).angle())
    if abs(phi) <= ANG_EPS:
        raise DegenerateArc("mid collinear with and outside the chord")
    if abs(abs(phi) - math.pi) <= ANG_EPS:
        return Arc(p, q, 0.0)
    theta = (TWO_PI - 2.0 * abs(phi)) * (-1.0 if phi > 0 else 1.0)
    return Arc(p, q, math.tan(0.25 * theta))


def circle_through_points(p1: Point, p2: Point, p3: Point) -> Circle:
    """Circumscribed circle of three non-collinear points."""
    d = 2.0 * ((p1 - p3).cross(p2 - p3))
    if abs(d) < 1e-15 * max(1.0, p1.dist(p2) ** 2):
        raise DegenerateArc("collinear points have no circumscribed circle")
    s1 = p1.dot(p1)
    s2 = p2.dot(p2)
    s3 = p3.dot(p3)
    ux = (s1 * (p2.y - p3.y) + s2 * (p3.y - p1.y) + s3 * (p1.y - p2.y)) / d
    uy = (s1 * (p3.x - p2.x) + s2 * (p1.x - p3.x) + s3 * (p2.x - p1.x)) / d
    c = Point(ux, uy)
    return Circle(c, c.dist(p1))


def circle_through_chord_angle(o: Circle, p: Point, q: Point, theta: float,
                               side: str) -> Arc:
    """Arc connecting two points of circle `o`, meeting it at angle theta.

    theta in [0, pi] is measured from the circle's tangent ray toward the
    far endpoint; side is "inside" or "outside". theta 0 yields the arc of
    `o` itself; the diametral outside right angle is the collinear-ray case.
    """
    if side not in ("inside", "outside"):
        raise ValueError(f"side must be 'inside' or 'outside', got {side!r}")
    if not (-ANG_EPS <= theta <= math.pi + ANG_EPS):
        raise ValueError("theta must lie in [0, pi]")
    if not o.contains(p) or not o.contains(q):
        raise ValueError("chord endpoints must lie on the circle")
    radial = Direction.of(p - o.center)
    t_ccw = radial.rotated(math.pi / 2.0)
    t_cw = radial.rotated(-math.pi / 2.0)
    chord = q - p
    # Tangent ray heading toward q's half-plane; for a diametral chord the
    # ccw tangent is the deterministic tie-break.
    if t_ccw.vector().dot(chord) >= -abs(t_cw.vector().dot(chord)):
        base, inward = t_ccw, 1.0
    else:
        base, inward = t_cw, -1.0
    tilt = theta if side == "inside" else -theta
    return arc_from_tangent(p, base.rotated(inward * tilt), q)


def tangent_line_angle(d1: Direction, d2: Direction) -> float:
    """Unsigned angle between two tangent LINES, in [0, pi/2]."""
    a = abs(wrap_angle(d2.angle - d1.angle))
    return min(a, math.pi - a)


def arc_circle_angle(a: Arc, o: Circle, at: Point) -> float:
    """Angle between an arc and a circle at a common point, in [0, pi/2]."""
    if at.dist(a.p) <= POS_EPS:
        t = a.travel_at_p()
    elif at.dist(a.q) <= POS_EPS:
        t = a.travel_at_q()
    else:
        raise ValueError("point is not an endpoint of the arc")
    radial = Direction.of(at - o.center)
    return tangent_line_angle(t, radial.rotated(math.pi / 2.0))


@dataclass(frozen=True)
class LocusInputs:
    """Two anchored tangent rays plus the required meeting angle.

    theta_pq is the counterclockwise angle, at the meeting point, from the
    tangent into the arc toward p to the tangent into the arc toward q.
    """

    p: Point
    q: Point
    dir_p: Direction
    dir_q: Direction
    theta_pq: float

    def __post_init__(self):
        if not math.isfinite(self.theta_pq) or norm_angle(self.theta_pq) == 0.0:
            raise ValueError("theta_pq must be finite and nonzero mod 2*pi")
        if self.p.dist(self.q) <= POS_EPS:
            raise CoincidentPoints("locus base points coincide")

    @property
    def chord_dir(self) -> Direction:
        return Direction.of(self.q - self.p)

    @property
    def theta_ph(self) -> float:
        """Angle of the p-tangent measured from the chord direction."""
        return norm_angle(self.dir_p.angle - self.chord_dir.angle)

    @property
    def theta_qh(self) -> float:
        """Angle of the q-tangent measured from the chord direction."""
        return norm_angle(self.dir_q.angle - self.chord_dir.angle)

    def half_central_angle(self, orientation: int = 1) -> float:
        """x, where 2x is the central angle the locus circle spans over pq.

        In directed angles 2x = theta_pq + (dir_q - dir_p); only the
        difference of the two anchored tangents matters, not their
        orientation relative to the chord.
        """
        theta = self.theta_pq if orientation >= 0 else -self.theta_pq
        return 0.5 * norm_angle(theta + self.dir_q.angle - self.dir_p.angle)


def meeting_locus(inputs: LocusInputs, orientation: int = 1) -> Circle:
    """Circle of meeting points of tangent-anchored arc pairs.

    Every point r of the returned circle is where the unique arcs
    arc_from_tangent(p, dir_p, r) and arc_from_tangent(q, dir_q, r) meet,
    and there they meet at angle theta_pq (ccw from the r->p tangent to the
    r->q tangent for orientation +1, clockwise for -1).
    """
    x = inputs.half_central_angle(orientation)
    s = math.sin(x)
    if abs(s) <= 1e-12:
        raise DegenerateLocus("locus degenerates to the line through p and q")
    chord = inputs.p.dist(inputs.q)
    radius = chord / (2.0 * abs(s))
    delta = inputs.chord_dir.angle
    center = inputs.p + Point.polar(radius, delta - x + math.pi / 2.0)
    return Circle(center, radius)


def intersect_circles(a: Circle, b: Circle) -> list[Point]:
    """0, 1 (tangency) or 2 intersection points of two distinct circles."""
    scale = max(a.radius, b.radius)
    d = a.center.dist(b.center)
    if d <= POS_EPS * scale and abs(a.radius - b.radius) <= POS_EPS * scale:
        raise IdenticalCircles("circles coincide")
    if d > a.radius + b.radius + POS_EPS * scale:
        return []
    if d < abs(a.radius - b.radius) - POS_EPS * scale:
        return []
    u = (b.center - a.center) * (1.0 / d)
    along = (d * d + a.radius * a.radius - b.radius * b.radius) / (2.0 * d)
    h2 = a.radius * a.radius - along * along
    foot = a.center + u * along
    if h2 <= (POS_EPS * scale) ** 2:
        return [foot]
    h = math.sqrt(h2)
    n = Point(-u.y, u.x)
    return [foot + n * h, foot - n * h]


def _segment_clearance(p: Point, q: Point, x: Point) -> float:
    v = q - p
    t = (x - p).dot(v) / v.dot(v)
    t = min(1.0, max(0.0, t))
    return (p + v * t).dist(x)


def arc_clearance(a: Arc, x: Point) -> float:
    """Minimum Euclidean distance from x to the arc's point set."""
    if abs(a.bulge) < _SEGMENT_BULGE:
        return _segment_clearance(a.p, a.q, x)
    c = a.center
    if a.angle_in_extent((x - c).angle()):
        return abs(x.dist(c) - a.radius)
    return min(x.dist(a.p), x.dist(a.q))


def _intersect_segment_segment(a: Arc, b: Arc) -> list[Point]:
    p, r = a.p, a.q - a.p
    q, s = b.p, b.q - b.p
    denom = r.cross(s)
    if abs(denom) < 1e-14 * max(r.norm(), s.norm()) ** 2:
        return []  # parallel; collinear overlap handled by caller
    t = (q - p).cross(s) / denom
    u = (q - p).cross(r) / denom
    eps = 1e-9
    if -eps <= t <= 1 + eps and -eps <= u <= 1 + eps:
        return [p + r * t]
    return []


def _intersect_line_circle(p: Point, q: Point, c: Circle) -> list[Point]:
    v = q - p
    length = v.norm()
    u = v * (1.0 / length)
    w = p - c.center
    b = u.dot(w)
    disc = b * b - (w.dot(w) - c.radius * c.radius)
    tol = (POS_EPS * c.radius) ** 2
    if disc < -tol:
        return []
    if disc <= tol:
        ts = [-b]
    else:
        root = math.sqrt(max(0.0, disc))
        ts = [-b - root, -b + root]
    eps = 1e-9 * length
    return [p + u * t for t in ts if -eps <= t <= length + eps]


def _same_circle_overlap(a: Arc, b: Arc) -> list[Point]:
    # Arcs on one circle: report the midpoint of any positive-length overlap.
    samples = [a.point_at(t) for t in (0.1, 0.3, 0.5, 0.7, 0.9)]
    inside = [s for s in samples if arc_clearance(b, s) <= 1e-9 * max(1.0, a.radius)]
    return [inside[len(inside) // 2]] if inside else []


def intersect_arcs(a1: Arc, a2: Arc, exclude_endpoints: bool = True) -> list[Point]:
    """Common points of two arcs, excluding endpoints shared by both."""
    seg1 = abs(a1.bulge) < _SEGMENT_BULGE
    seg2 = abs(a2.bulge) < _SEGMENT_BULGE
    if seg1 and seg2:
        candidates = _intersect_segment_segment(a1, a2)
    elif seg1:
        candidates = _intersect_line_circle(a1.p, a1.q, a2.circle)
    elif seg2:
        candidates = _intersect_line_circle(a2.p, a2.q, a1.circle)
    else:
        try:
            candidates = intersect_circles(a1.circle, a2.circle)
        except IdenticalCircles:
            return _same_circle_overlap(a1, a2)
    scale = max(a1.chord, a2.chord, 1.0)
    tol = 1e-9 * scale
    out: list[Point] = []
    for pt in candidates:
        if arc_clearance(a1, pt) > tol or arc_clearance(a2, pt) > tol:
            continue
        if exclude_endpoints:
            shared = any(
                pt.dist(e1) <= tol and pt.dist(e2) <= tol
                for e1 in (a1.p, a1.q) for e2 in (a2.p, a2.q)
                if e1.dist(e2) <= tol
            )
            if shared:
                continue
        if all(pt.dist(prev) > tol for prev in out):
            out.append(pt)
    return out


@dataclass(frozen=True)
class MobiusMap:
    """z -> (a z + b) / (c z + d) with complex coefficients, ad - bc != 0."""

    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self):
        if abs(self.a * self.d - self.b * self.c) == 0.0:
            raise ValueError("mobius map requires ad - bc != 0")

    @staticmethod
    def identity() -> "MobiusMap":
        return MobiusMap(1, 0, 0, 1)

    def inverse(self) -> "MobiusMap":
        return MobiusMap(self.d, -self.b, -self.c, self.a)

    def compose(self, inner: "MobiusMap") -> "MobiusMap":
        """self after inner: (self . inner)(z) = self(inner(z))."""
        return MobiusMap(
            self.a * inner.a + self.b * inner.c,
            self.a * inner.b + self.b * inner.d,
            self.c * inner.a + self.d * inner.c,
            self.c * inner.b + self.d * inner.d,
        )

    def pole(self) -> complex | None:
        """Preimage of the point at infinity, or None for affine maps."""
        if abs(self.c) == 0.0:
            return None
        return -self.d / self.c

    def apply_complex(self, z: complex) -> complex:
        den = self.c * z + self.d
        if abs(den) < 1e-300:
            raise InfiniteImage("input maps to the point at infinity")
        return (self.a * z + self.b) / den


def mobius_from_three_points(src: tuple[Point, Point, Point],
                             dst: tuple[Point, Point, Point]) -> MobiusMap:
    """The Mobius map sending three source points to three target points."""

    def to_zero_one_inf(z1: complex, z2: complex, z3: complex) -> MobiusMap:
        return MobiusMap(z2 - z3, -z1 * (z2 - z3), z2 - z1, -z3 * (z2 - z1))

    f = to_zero_one_inf(*(p.as_complex() for p in src))
    g = to_zero_one_inf(*(p.as_complex() for p in dst))
    return g.inverse().compose(f)


def _pole_point(m: MobiusMap) -> Point | None:
    pole = m.pole()
    return None if pole is None else Point.from_complex(pole)


def mobius_apply(m: MobiusMap, obj: Point | Circle | Arc):
    """Apply a Mobius map to a point, circle, or arc.

    Generalized circles map to generalized circles; an input whose image
    passes through the point at infinity raises InfiniteImage, since lines
    and ray pairs are not representable.
    """
    if isinstance(obj, Point):
        return Point.from_complex(m.apply_complex(obj.as_complex()))
    if isinstance(obj, Circle):
        pole = _pole_point(m)
        if pole is not None and obj.contains(pole):
            raise InfiniteImage("circle passes through the map's pole")
        base = 0.0
        if pole is not None:
            base = (pole - obj.center).angle() + 0.5  # keep samples off the pole
        pts = [mobius_apply(m, obj.point_at(base + k * TWO_PI / 3.0)) for k in range(3)]
        return circle_through_points(*pts)
    if isinstance(obj, Arc):
        pole = _pole_point(m)
        if pole is not None and arc_clearance(obj, pole) <= POS_EPS * max(1.0, obj.chord):
            raise InfiniteImage("arc passes through the map's pole")
        p = mobius_apply(m, obj.p)
        mid = mobius_apply(m, obj.midpoint())
        q = mobius_apply(m, obj.q)
        return arc_through(p, mid, q)
    raise TypeError(f"cannot apply mobius map to {type(obj).__name__}")
