"""Independent certification of the drawing conditions.

Everything here is recomputed from vertex positions and edge arcs alone;
the per-vertex frames stored in a drawing are never consulted, so a layout
engine cannot vouch for itself through them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .drawing import Drawing, DrawnEdge
from .geometry import Arc, Point, arc_clearance, intersect_arcs, wrap_angle

TWO_PI = 2.0 * math.pi

CLEARANCE_EPS = 1e-6
GRAZE_EPS = 1e-9


@dataclass
class VerificationReport:
    per_vertex_deviation: dict[int, float] = field(default_factory=dict)
    max_deviation: float = 0.0
    worst_vertex: int | None = None
    incidence_violations: list[tuple[tuple[int, int], int, float]] = field(default_factory=list)
    crossing_count: int = 0
    grazing_count: int = 0
    cocircularity_residual: float | None = None
    planar: bool = True

    def to_document(self) -> dict:
        return {
            "max_deviation": self.max_deviation,
            "worst_vertex": self.worst_vertex,
            "per_vertex_deviation": {str(k): v for k, v in sorted(self.per_vertex_deviation.items())},
            "incidence_violations": [
                {"edge": list(e), "vertex": v, "distance": d}
                for e, v, d in self.incidence_violations
            ],
            "crossing_count": self.crossing_count,
            "grazing_count": self.grazing_count,
            "cocircularity_residual": self.cocircularity_residual,
            "planar": self.planar,
        }


def resolution_report(d: Drawing) -> VerificationReport:
    """Per-vertex deviation from perfectly even tangent spacing.

    Tangents are recovered from the arcs, sorted circularly; the deviation
    at a vertex of degree k is max |gap - 2*pi/k|. Degree-1 vertices are
    vacuously perfect.
    """
    report = VerificationReport()
    incident: dict[int, list[float]] = {v: [] for v in range(d.n)}
    for e in d.edges:
        incident[e.u].append(d.incident_tangent(e, e.u).angle)
        incident[e.v].append(d.incident_tangent(e, e.v).angle)
    for v in range(d.n):
        angles = sorted(incident[v])
        k = len(angles)
        if k <= 1:
            report.per_vertex_deviation[v] = 0.0
            continue
        want = TWO_PI / k
        dev = 0.0
        for i in range(k):
            gap = (angles[(i + 1) % k] - angles[i]) % TWO_PI
            dev = max(dev, abs(gap - want))
        report.per_vertex_deviation[v] = dev
        if dev > report.max_deviation:
            report.max_deviation = dev
            report.worst_vertex = v
    report.cocircularity_residual = _cocircularity(d.positions)
    return report


def _cocircularity(points: list[Point]) -> float | None:
    """Residual of the algebraic best-fit circle through the positions."""
    n = len(points)
    if n < 3:
        return None
    sxx = sxy = syy = sx = sy = bx = by = bc = 0.0
    for p in points:
        z = p.x * p.x + p.y * p.y
        sxx += p.x * p.x
        sxy += p.x * p.y
        syy += p.y * p.y
        sx += p.x
        sy += p.y
        bx += z * p.x
        by += z * p.y
        bc += z
    # solve [[sxx,sxy,sx],[sxy,syy,sy],[sx,sy,n]] (d,e,f) = (bx,by,bc)
    m = [[sxx, sxy, sx, bx], [sxy, syy, sy, by], [sx, sy, float(n), bc]]
    for col in range(3):
        piv = max(range(col, 3), key=lambda r: abs(m[r][col]))
        m[col], m[piv] = m[piv], m[col]
        if abs(m[col][col]) < 1e-300:
            return None  # collinear configuration
        for r in range(3):
            if r != col:
                fct = m[r][col] / m[col][col]
                for c in range(col, 4):
                    m[r][c] -= fct * m[col][c]
    dd, ee, ff = (m[i][3] / m[i][i] for i in range(3))
    center = Point(dd / 2.0, ee / 2.0)
    radius = math.sqrt(max(0.0, ff + center.dot(center)))
    if radius <= 0.0:
        return None
    return max(abs(p.dist(center) - radius) for p in points)


def _tangent_angle_at(arc: Arc, pt: Point) -> float:
    if abs(arc.bulge) < 1e-12:  # matches the kernel's segment threshold
        return (arc.q - arc.p).angle()
    side = math.pi / 2.0 if arc.bulge > 0 else -math.pi / 2.0
    return (pt - arc.center).angle() + side


def incidence_and_crossings(d: Drawing, clearance_eps: float = CLEARANCE_EPS) -> VerificationReport:
    """Arc-through-vertex violations plus pairwise crossing counts.

    Pairs sharing an endpoint are not counted at the shared point. A
    crossing is flagged "grazing" instead of counted when the arcs are
    near-tangential there or the contact sits at an arc endpoint.
    """
    report = VerificationReport()
    arcs: list[tuple[DrawnEdge, Arc]] = [(e, d.arc_of(e)) for e in d.edges]
    scale = max((a.chord for _, a in arcs), default=1.0)
    for e, a in arcs:
        for v in range(d.n):
            if v in (e.u, e.v):
                continue
            dist = arc_clearance(a, d.positions[v])
            if dist < clearance_eps * max(1.0, scale):
                report.incidence_violations.append((e.key(), v, dist))
    for i in range(len(arcs)):
        e1, a1 = arcs[i]
        for j in range(i + 1, len(arcs)):
            e2, a2 = arcs[j]
            for pt in intersect_arcs(a1, a2):
                graze_tol = GRAZE_EPS * max(1.0, scale)
                near_end = any(pt.dist(p) < graze_tol
                               for p in (a1.p, a1.q, a2.p, a2.q))
                t1 = _tangent_angle_at(a1, pt)
                t2 = _tangent_angle_at(a2, pt)
                line_angle = abs(wrap_angle(t1 - t2))
                line_angle = min(line_angle, math.pi - line_angle)
                if near_end or line_angle < GRAZE_EPS:
                    report.grazing_count += 1
                else:
                    report.crossing_count += 1
    report.planar = report.crossing_count == 0
    return report


def full_report(d: Drawing, clearance_eps: float = CLEARANCE_EPS) -> VerificationReport:
    res = resolution_report(d)
    inc = incidence_and_crossings(d, clearance_eps)
    res.incidence_violations = inc.incidence_violations
    res.crossing_count = inc.crossing_count
    res.grazing_count = inc.grazing_count
    res.planar = inc.planar
    return res
