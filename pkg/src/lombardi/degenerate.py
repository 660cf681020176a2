"""Incremental layout for 2- and 3-degenerate graphs.

Vertices are reinserted in reverse elimination order. A placed vertex's
frame (one base angle; the rotation gives every neighbor a slot) is fixed
by the first arc drawn at it. Degree-2 insertions pick a point on the
meeting-locus circle of the two anchored tangents; degree-3 insertions
intersect two locus circles and check the third, which can genuinely
fail: both candidate points may collide with existing features.

Free choices (initial directions, the sweep given to degree-1 edges) are
varied deterministically from the seed across retries, because some
inputs, such as odd cycles closed by a degree-2 insertion over straight
edges, make the locus degenerate for the most natural choice.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from .drawing import Drawing, DrawnEdge, VertexFrame
from .errors import (
    CoincidentPlacement,
    CoincidentPoints,
    DegenerateArc,
    DegenerateLocus,
    NoClearPoint,
    NotThreeDegenerate,
    NotTwoDegenerate,
)
from .geometry import (
    Arc,
    Direction,
    LocusInputs,
    Point,
    arc_clearance,
    arc_from_tangent,
    endpoint_tangents,
    intersect_circles,
    meeting_locus,
    wrap_angle,
)
from .graphs import RotationGraph, degeneracy_order

TWO_PI = 2.0 * math.pi

CLEARANCE = 1e-6
LOCUS_SAMPLES = 256
REFINE_ROUNDS = 4
SEED_SPACING = 8.0
MAX_ATTEMPTS = 16


@dataclass
class PartialState:
    g: RotationGraph
    clearance: float = CLEARANCE
    deg1_length: float = 1.0
    deg1_sweep: float = 0.0  # central angle given to degree-1 arcs
    positions: dict[int, Point] = field(default_factory=dict)
    frame_base: dict[int, float] = field(default_factory=dict)
    edges: list[DrawnEdge] = field(default_factory=list)
    arc_cache: list[Arc] = field(default_factory=list)
    seeds_placed: int = 0

    def slot_dir(self, v: int, neighbor: int) -> Direction:
        idx = self.g.rotation_index(v, neighbor)
        return Direction(self.frame_base[v] + TWO_PI * idx / self.g.degree(v))

    def fix_frame(self, v: int, neighbor: int, tangent: Direction) -> None:
        if v in self.frame_base:
            return
        idx = self.g.rotation_index(v, neighbor)
        self.frame_base[v] = tangent.angle - TWO_PI * idx / self.g.degree(v)

    def arcs(self) -> list[Arc]:
        return self.arc_cache

    def add_edge(self, u: int, v: int, arc: Arc) -> None:
        self.edges.append(DrawnEdge(u, v, arc.bulge))
        self.arc_cache.append(arc)

    def point_clearance(self, pt: Point, beat: float = 0.0) -> float:
        """Min distance to drawn features; may exit early once below beat."""
        best = math.inf
        for p in self.positions.values():
            d = pt.dist(p)
            if d < best:
                best = d
                if best <= beat:
                    return best
        for arc in self.arc_cache:
            d = arc_clearance(arc, pt)
            if d < best:
                best = d
                if best <= beat:
                    return best
        return best

    def arc_vertex_clearance(self, arc: Arc, skip: tuple[int, ...],
                             beat: float = 0.0) -> float:
        best = math.inf
        for v, p in self.positions.items():
            if v in skip:
                continue
            d = arc_clearance(arc, p)
            if d < best:
                best = d
                if best <= beat:
                    return best
        return best


def _insertion_score(state: PartialState, v: int, cand: Point,
                     new_arcs: list[tuple[int, Arc]], beat: float = 0.0) -> float:
    score = state.point_clearance(cand, beat)
    if score <= beat:
        return score
    for other, arc in new_arcs:
        score = min(score, state.arc_vertex_clearance(arc, (other, v), beat))
        if score <= beat:
            return score
    return score


def _anchored_arcs(state: PartialState, v: int, neighbors: list[int],
                   cand: Point) -> list[tuple[int, Arc]] | None:
    out = []
    for w in neighbors:
        try:
            out.append((w, arc_from_tangent(state.positions[w],
                                            state.slot_dir(w, v), cand)))
        except (DegenerateArc, CoincidentPoints):
            return None
    return out


def _sample_circle(state: PartialState, v: int, nbrs: list[int], circle,
                   accept=None):
    """Best clearance-scoring point of a circle of candidate positions."""

    def best_on(center_angle: float, span: float, count: int):
        top_score, top_pt, top_ang, top_arcs = -1.0, None, 0.0, None
        for k in range(count):
            ang = center_angle - span / 2.0 + span * (k + 0.5) / count
            cand = circle.point_at(ang)
            if accept is not None and not accept(cand):
                continue
            if state.point_clearance(cand, top_score) <= top_score:
                continue  # cannot beat the incumbent; skip arc construction
            arcs = _anchored_arcs(state, v, nbrs, cand)
            if arcs is None:
                continue
            score = _insertion_score(state, v, cand, arcs, top_score)
            if score > top_score:
                top_score, top_pt, top_ang, top_arcs = score, cand, ang, arcs
        return top_score, top_pt, top_ang, top_arcs

    score, pt, ang, arcs = best_on(0.0, TWO_PI, LOCUS_SAMPLES)
    span = TWO_PI / LOCUS_SAMPLES * 4.0
    for _ in range(REFINE_ROUNDS):
        if score >= state.clearance or pt is None:
            break
        score2, pt2, ang2, arcs2 = best_on(ang, span, 64)
        if score2 > score:
            score, pt, ang, arcs = score2, pt2, ang2, arcs2
        span /= 8.0
    return score, pt, arcs


def _commit(state: PartialState, v: int, pt: Point, arcs) -> Point:
    state.positions[v] = pt
    for (w, arc) in arcs:
        state.add_edge(w, v, arc)
    first = arcs[0]
    state.fix_frame(v, first[0], endpoint_tangents(first[1])[1])
    return pt


def place_degree2(state: PartialState, v: int, p: int, q: int) -> Point:
    """Insert a vertex joined to two placed, frame-fixed neighbors.

    Samples the meeting-locus circle, scores candidates by minimum
    clearance to everything already drawn, refines near the best sample
    when all scores are tight, then realizes both arcs and fixes v's frame.
    """
    d = state.g.degree(v)
    i_p = state.g.rotation_index(v, p)
    i_q = state.g.rotation_index(v, q)
    theta = ((i_q - i_p) % d) * TWO_PI / d
    inputs = LocusInputs(state.positions[p], state.positions[q],
                         state.slot_dir(p, v), state.slot_dir(q, v), theta)
    locus = meeting_locus(inputs)
    score, pt, arcs = _sample_circle(state, v, [p, q], locus)
    if pt is None or score < state.clearance:
        raise NoClearPoint(f"no clear point on the locus circle for vertex {v}")
    return _commit(state, v, pt, arcs)


def _place_degree3(state: PartialState, v: int, nbrs: list[int]) -> Point:
    """Insert a vertex joined to three placed neighbors.

    The two common points of the three locus circles are the only possible
    positions; both may be invalid, which is a genuine rejection.
    """
    d = state.g.degree(v)
    p, q, r = nbrs
    idx = {w: state.g.rotation_index(v, w) for w in nbrs}

    def locus(a: int, b: int):
        theta = ((idx[b] - idx[a]) % d) * TWO_PI / d
        return meeting_locus(LocusInputs(
            state.positions[a], state.positions[b],
            state.slot_dir(a, v), state.slot_dir(b, v), theta))

    l_pq = locus(p, q)
    l_pr = locus(p, r)
    l_qr = locus(q, r)
    loci = [l_pq, l_pr, l_qr]

    def on_all(c: Point) -> bool:
        return all(abs(c.dist(l.center) - l.radius) <= 1e-8 * max(1.0, l.radius)
                   for l in loci)

    candidates: list[Point] = []
    distinct_pair = None
    for i in range(3):
        for j in range(i + 1, 3):
            a, b = loci[i], loci[j]
            if a.center.dist(b.center) > 1e-9 or abs(a.radius - b.radius) > 1e-9:
                distinct_pair = (a, b)
                break
        if distinct_pair:
            break
    if distinct_pair is None:
        # all three loci coincide: a whole circle of valid positions
        score, pt, arcs = _sample_circle(state, v, nbrs, l_pq, accept=on_all)
        if pt is None or score < state.clearance:
            raise CoincidentPlacement(state.g.labels[v], [])
        return _commit(state, v, pt, arcs)
    candidates = intersect_circles(*distinct_pair)
    live = [c for c in candidates if on_all(c)
            and min(c.dist(state.positions[w]) for w in nbrs) > state.clearance]
    best_pt, best_arcs, best_score = None, None, -1.0
    for cand in live:
        arcs = _anchored_arcs(state, v, nbrs, cand)
        if arcs is None:
            continue
        # rotation-order audit: arriving tangents must occupy v's slots
        tangents = {w: endpoint_tangents(arc)[1] for w, arc in arcs}
        gap_pq = tangents[p].ccw_to(tangents[q])
        gap_pr = tangents[p].ccw_to(tangents[r])
        want_pq = ((idx[q] - idx[p]) % d) * TWO_PI / d
        want_pr = ((idx[r] - idx[p]) % d) * TWO_PI / d
        if abs(wrap_angle(gap_pq - want_pq)) > 1e-6 or abs(wrap_angle(gap_pr - want_pr)) > 1e-6:
            continue
        score = _insertion_score(state, v, cand, arcs)
        if score > best_score:
            best_score, best_pt, best_arcs = score, cand, arcs
    if best_pt is None or best_score < state.clearance:
        raise CoincidentPlacement(state.g.labels[v], candidates)
    state.positions[v] = best_pt
    for (w, arc) in best_arcs:
        state.add_edge(w, v, arc)
    state.fix_frame(v, p, endpoint_tangents(best_arcs[0][1])[1])
    return best_pt


def _place_degree1(state: PartialState, v: int, p: int) -> Point:
    if p not in state.frame_base:
        state.frame_base[p] = 0.0
    tangent = state.slot_dir(p, v)
    sweep = state.deg1_sweep
    length = state.deg1_length
    base = state.positions[p]
    for _ in range(24):
        cand = base + Point.polar(length, tangent.angle + sweep / 2.0)
        if cand.dist(base) < 1e-12:
            break
        arc = Arc(base, cand, math.tan(sweep / 4.0))
        score = min(state.point_clearance(cand),
                    state.arc_vertex_clearance(arc, (p, v), beat=0.0))
        if score >= state.clearance:
            state.positions[v] = cand
            state.add_edge(p, v, arc)
            state.fix_frame(v, p, endpoint_tangents(arc)[1])
            return cand
        length /= 2.0
    raise NoClearPoint(f"no clear point along the outgoing arc for vertex {v}")


def _place_seed(state: PartialState, v: int) -> Point:
    while True:
        cand = Point(SEED_SPACING * state.seeds_placed, 0.0)
        state.seeds_placed += 1
        if state.point_clearance(cand, beat=1.0) >= 1.0:
            state.positions[v] = cand
            state.frame_base[v] = 0.0
            return cand


def _insert(state: PartialState, v: int, placed: list[int]) -> None:
    nbrs = sorted((w for w in state.g.adjacency[v] if w in state.positions),
                  key=lambda w: state.g.rotation_index(v, w))
    if len(nbrs) == 0:
        _place_seed(state, v)
    elif len(nbrs) == 1:
        _place_degree1(state, v, nbrs[0])
    elif len(nbrs) == 2:
        place_degree2(state, v, nbrs[0], nbrs[1])
    elif len(nbrs) == 3:
        _place_degree3(state, v, nbrs)
    else:
        raise NotThreeDegenerate(f"insertion degree {len(nbrs)} at vertex {v}")


def _draw(g: RotationGraph, seed: int, max_insert_degree: int) -> Drawing:
    order, d = degeneracy_order(g)
    if d > max_insert_degree:
        kind = NotTwoDegenerate if max_insert_degree == 2 else NotThreeDegenerate
        raise kind(f"graph has degeneracy {d} > {max_insert_degree}")
    rng = random.Random(seed)
    last_error: Exception | None = None
    for attempt in range(MAX_ATTEMPTS):
        state = PartialState(g)
        if attempt:
            # odd cycles need curvature on tree edges; vary the free sweep
            state.deg1_sweep = 0.35 + 0.5 * rng.random()
        try:
            for v in reversed(order):
                _insert(state, v, order)
        except (DegenerateLocus, DegenerateArc, NoClearPoint, CoincidentPlacement) as exc:
            last_error = exc
            continue
        frames = {}
        for v in range(g.n):
            deg = g.degree(v)
            frames[v] = VertexFrame(state.frame_base.get(v, 0.0), max(deg, 1))
        return Drawing([state.positions[v] for v in range(g.n)],
                       state.edges, frames, list(g.labels))
    raise last_error if last_error is not None else NoClearPoint("layout failed")


def draw_2degenerate(g: RotationGraph, seed: int = 0) -> Drawing:
    """Full drawing of a 2-degenerate graph with the given rotation system."""
    return _draw(g, seed, 2)


def draw_3degenerate(g: RotationGraph, seed: int = 0) -> Drawing:
    """Drawing of a 3-degenerate graph, or CoincidentPlacement when some
    degree-3 insertion has both candidate points blocked."""
    return _draw(g, seed, 3)
