"""Planar drawings of Halin graphs via hyperbolic tree drawings.

The tree is drawn in the Poincare disk with leaves at infinity: the root
sits at the center with equally spaced rays, and every deeper internal
node is pulled in from its ideal position to the unique point of its
parent ray where the dominance wedge grants it an opening of
pi * (1 - 1/deg); its children then fan out on equally spaced rays.
Conformality makes the Euclidean arc angles equal the hyperbolic ones, so
internal resolution is exact by construction. The leaf cycle is added
outside the disk with arcs meeting the unit circle at 30 degrees, which
completes the 120-degree fan at every degree-3 leaf.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field

from .drawing import Drawing, DrawnEdge, VertexFrame
from .errors import BisectionFailed, ParseError
from .geometry import Circle, Direction, Point, circle_through_chord_angle
from .graphs import RotationGraph
from .hyperbolic import (
    HPoint,
    Wedge,
    equally_spaced_ideal_rays,
    geodesic_through,
    point_on_ray,
    tangent_toward,
    wedge_opening,
)

UNIT = Circle(Point(0.0, 0.0), 1.0)

BISECTION_CAP = 200
OUTER_ANGLE = math.pi / 6  # arcs of the leaf cycle meet the disk at 30 degrees


@dataclass
class RootedTree:
    root: int
    parent: dict[int, int | None]
    children: dict[int, list[int]]  # rotation (ccw) order
    labels: list[str]

    @property
    def n(self) -> int:
        return len(self.parent)

    def degree(self, v: int) -> int:
        return len(self.children[v]) + (0 if self.parent[v] is None else 1)

    def leaves(self) -> list[int]:
        return [v for v in self.parent if not self.children[v]]

    def depth_order(self) -> list[int]:
        """Internal nodes by increasing depth (the induction in reverse)."""
        depth = {self.root: 0}
        out = []
        queue = deque([self.root])
        while queue:
            v = queue.popleft()
            if self.children[v]:
                out.append(v)
            for c in self.children[v]:
                depth[c] = depth[v] + 1
                queue.append(c)
        return sorted(out, key=lambda v: (depth[v], v))


def tree_from_graph(g: RotationGraph, root: int | None = None) -> RootedTree:
    """Root a tree-shaped graph, keeping children in rotation order."""
    if g.m != g.n - 1:
        raise ParseError("halin input tree must have n-1 edges")
    if root is None:
        root = _centroid(g)
    if g.degree(root) < 2:
        raise ParseError("root must be an internal node")
    parent: dict[int, int | None] = {root: None}
    children: dict[int, list[int]] = {}
    queue = deque([root])
    seen = {root}
    while queue:
        v = queue.popleft()
        rot = g.rotation[v]
        if parent[v] is not None:
            k = rot.index(parent[v])
            rot = rot[k + 1:] + rot[:k]  # children ccw after the parent edge
        children[v] = [w for w in rot if w not in seen or parent.get(w) == v]
        for w in children[v]:
            parent[w] = v
            seen.add(w)
            queue.append(w)
    if len(seen) != g.n:
        raise ParseError("halin input tree is disconnected")
    return RootedTree(root, parent, children, list(g.labels))


def _centroid(g: RotationGraph) -> int:
    best, best_score = 0, g.n + 1
    sizes = {}

    def subtree(v: int, par: int) -> int:
        s = 1
        for w in g.adjacency[v]:
            if w != par:
                s += subtree(w, v)
        return s

    for v in range(g.n):
        if g.degree(v) < 2:
            continue
        worst = max(subtree(w, v) for w in g.adjacency[v])
        if worst < best_score:
            best, best_score = v, worst
    return best


@dataclass
class HyperbolicTreeDrawing:
    tree: RootedTree
    points: dict[int, HPoint]
    ray_at_parent: dict[int, Direction]  # tangent at parent(v) toward v
    residuals: dict[int, float] = field(default_factory=dict)

    def wedge_of(self, v: int) -> Wedge:
        """Dominance wedge of a non-root node at its parent."""
        p = self.tree.parent[v]
        if p is None:
            raise ValueError("the root has no dominance wedge")
        half = math.pi / self.tree.degree(p)
        ray = self.ray_at_parent[v]
        return Wedge(self.points[p], ray.rotated(-half), ray.rotated(half))


def good_hyperbolic_tree(t: RootedTree) -> HyperbolicTreeDrawing:
    """Hyperbolic drawing with ideal leaves and nested dominance regions."""
    points: dict[int, HPoint] = {}
    ray_at_parent: dict[int, Direction] = {}
    residuals: dict[int, float] = {}

    order = t.depth_order()
    if not order:
        raise ParseError("tree has no internal node")
    for v in order:
        if v == t.root:
            points[v] = HPoint(Point(0.0, 0.0))
            d = t.degree(v)
            for k, c in enumerate(t.children[v]):
                ray = Direction(2.0 * math.pi * k / d)
                ray_at_parent[c] = ray
                points[c] = HPoint.ideal_at(ray.angle)
            continue
        parent_pt = points[t.parent[v]]
        ideal_v = points[v]
        half = math.pi / t.degree(t.parent[v])
        ray = ray_at_parent[v]
        wedge = Wedge(parent_pt, ray.rotated(-half), ray.rotated(half))
        target = math.pi * (1.0 - 1.0 / t.degree(v))
        x = _bisect_opening(parent_pt, ideal_v, wedge, target)
        residuals[v] = abs(wedge_opening(x, wedge) - target)
        points[v] = x
        incoming = geodesic_through(parent_pt, x).arc.travel_at_q()
        fan = equally_spaced_ideal_rays(x, incoming, t.degree(v))
        for c, ideal in zip(t.children[v], fan):
            points[c] = ideal
            ray_at_parent[c] = tangent_toward(x.location, ideal.location)
    return HyperbolicTreeDrawing(t, points, ray_at_parent, residuals)


def _bisect_opening(parent_pt: HPoint, ideal_v: HPoint, wedge: Wedge,
                    target: float) -> HPoint:
    lo, hi = 0.0, 1.0
    f_lo = wedge_opening(parent_pt, wedge) - target
    if f_lo >= 0.0:
        raise BisectionFailed(
            "wedge already open at the apex (degree-2 chain); no interior root")
    for _ in range(BISECTION_CAP):
        mid = 0.5 * (lo + hi)
        x = point_on_ray(parent_pt, ideal_v, mid)
        if wedge_opening(x, wedge) < target:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-17:
            break
    return point_on_ray(parent_pt, ideal_v, 0.5 * (lo + hi))


def draw_halin(t: RootedTree) -> Drawing:
    """Planar drawing: geodesic tree edges plus the 30-degree outer cycle."""
    hyper = good_hyperbolic_tree(t)
    leaves = t.leaves()
    if len(leaves) < 3:
        raise ParseError("halin graph needs at least three leaves")
    positions = [hyper.points[v].location for v in range(t.n)]
    edges: list[DrawnEdge] = []
    for v in range(t.n):
        p = t.parent[v]
        if p is None:
            continue
        arc = geodesic_through(hyper.points[p], hyper.points[v]).arc
        edges.append(DrawnEdge(p, v, arc.bulge, "tree"))
    ring = sorted(leaves, key=lambda v: positions[v].angle())
    for i, u in enumerate(ring):
        w = ring[(i + 1) % len(ring)]
        arc = circle_through_chord_angle(UNIT, positions[u], positions[w],
                                         OUTER_ANGLE, "outside")
        edges.append(DrawnEdge(u, w, arc.bulge, "cycle"))

    drawing = Drawing(positions, edges, {}, list(t.labels))
    frames = {}
    for v in range(t.n):
        incident = [e for e in drawing.edges if v in (e.u, e.v)]
        first = drawing.incident_tangent(incident[0], v)
        frames[v] = VertexFrame(first.angle, len(incident))
    drawing.frames = frames
    return drawing
