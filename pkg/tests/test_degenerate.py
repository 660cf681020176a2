import math
import random

import pytest

from lombardi.degenerate import (
    PartialState,
    draw_2degenerate,
    draw_3degenerate,
    place_degree2,
)
from lombardi.errors import (
    CoincidentPlacement,
    NotThreeDegenerate,
    NotTwoDegenerate,
)
from lombardi.geometry import LocusInputs, Point, arc_clearance, meeting_locus
from lombardi.graphs import build_graph, degeneracy_order
from lombardi.verify import full_report
from sample_graphs import (
    complete,
    corpus_graph,
    cube,
    maximal_outerplanar_fan,
    random_2degenerate,
)

TWO_PI = 2.0 * math.pi


def clean(dr, tol=1e-9):
    rep = full_report(dr)
    assert rep.max_deviation < tol
    assert not rep.incidence_violations
    return rep


# ------------------------------------------------------------- place_degree2


def _two_path_state():
    """Path a-b plus a pending vertex v joined to both ends."""
    g = build_graph([0, 1, 2], [(0, 1), (0, 2), (1, 2)],
                    {"0": [1, 2], "1": [0, 2], "2": [0, 1]})
    state = PartialState(g)
    state.positions[0] = Point(0.0, 0.0)
    state.frame_base[0] = 0.3  # curved start so the closing locus is proper
    from lombardi.geometry import arc_from_tangent, endpoint_tangents, Direction
    arc = arc_from_tangent(Point(0, 0), Direction(0.3 + 0.0), Point(1.0, 0.4))
    state.positions[1] = Point(1.0, 0.4)
    state.add_edge(0, 1, arc)
    state.fix_frame(1, 0, endpoint_tangents(arc)[1])
    return g, state


def test_place_degree2_point_on_locus():
    g, state = _two_path_state()
    d = g.degree(2)
    i0 = g.rotation_index(2, 0)
    i1 = g.rotation_index(2, 1)
    inputs = LocusInputs(state.positions[0], state.positions[1],
                         state.slot_dir(0, 2), state.slot_dir(1, 2),
                         ((i1 - i0) % d) * TWO_PI / d)
    locus = meeting_locus(inputs)
    pt = place_degree2(state, 2, 0, 1)
    assert abs(pt.dist(locus.center) - locus.radius) < 1e-10


def test_place_degree2_respects_clearance():
    g, state = _two_path_state()
    pt = place_degree2(state, 2, 0, 1)
    for v in (0, 1):
        assert pt.dist(state.positions[v]) >= state.clearance


def test_place_degree2_survives_cluttered_scene():
    # pepper the scene with blocking vertices near the locus
    rng = random.Random(42)
    for trial in range(100):
        g, state = _two_path_state()
        for k in range(6):
            fake = 100 + k  # not in the graph; raw clutter points
            state.positions[fake] = Point(rng.uniform(-2, 2), rng.uniform(-2, 2))
        pt = place_degree2(state, 2, 0, 1)
        others = [p for w, p in state.positions.items() if w != 2]
        assert min(pt.dist(p) for p in others) >= state.clearance


# ------------------------------------------------------------- full layouts


def test_star_is_straight():
    g = build_graph(list(range(6)), [(0, i) for i in range(1, 6)])
    dr = draw_2degenerate(g, seed=0)
    clean(dr)
    assert all(e.bulge == 0.0 for e in dr.edges)
    # slots spaced 72 degrees at the hub
    rep = full_report(dr)
    assert rep.per_vertex_deviation[0] < 1e-12


def test_fan_succeeds():
    dr = draw_2degenerate(maximal_outerplanar_fan(6), seed=0)
    clean(dr)


def test_triangle_needs_curvature_but_succeeds():
    g = build_graph([0, 1, 2], [(0, 1), (1, 2), (2, 0)])
    dr = draw_2degenerate(g, seed=0)
    clean(dr)
    assert any(abs(e.bulge) > 1e-6 for e in dr.edges)


def test_rejects_not_two_degenerate():
    with pytest.raises(NotTwoDegenerate):
        draw_2degenerate(complete(4), seed=0)
    with pytest.raises(NotThreeDegenerate):
        draw_3degenerate(complete(5), seed=0)


def test_random_two_degenerate_suite():
    rng = random.Random(11)
    for i in range(30):
        g = random_2degenerate(rng.randint(4, 30), rng)
        dr = draw_2degenerate(g, seed=i)
        clean(dr)


def test_determinism_bitwise():
    rng = random.Random(3)
    g = random_2degenerate(18, rng)
    a = draw_2degenerate(g, seed=9)
    b = draw_2degenerate(g, seed=9)
    assert [(p.x, p.y) for p in a.positions] == [(p.x, p.y) for p in b.positions]
    assert [(e.u, e.v, e.bulge) for e in a.edges] == [(e.u, e.v, e.bulge) for e in b.edges]


def test_k4_succeeds_mode3():
    dr = draw_3degenerate(complete(4), seed=0)
    clean(dr)


def test_cube_succeeds_mode3():
    dr = draw_3degenerate(cube(), seed=0)
    clean(dr)


def test_degree3_insertions_lie_on_all_three_loci():
    dr = draw_3degenerate(cube(), seed=0)
    g = cube()
    order, _ = degeneracy_order(g)
    placed = set()
    rep = full_report(dr)
    assert rep.max_deviation < 1e-9
    # every vertex inserted with 3 placed neighbors: recompute its loci
    for v in reversed(order):
        nbrs = [w for w in g.adjacency[v] if w in placed]
        placed.add(v)
        if len(nbrs) != 3:
            continue
        d = g.degree(v)
        idx = {w: g.rotation_index(v, w) for w in nbrs}
        frames = dr.frames
        for a in nbrs:
            for b in nbrs:
                if a >= b:
                    continue
                theta = ((idx[b] - idx[a]) % d) * TWO_PI / d
                base_a = frames[a]
                slot_a = base_a.slot(g.rotation_index(a, v))
                slot_b = frames[b].slot(g.rotation_index(b, v))
                locus = meeting_locus(LocusInputs(
                    dr.positions[a], dr.positions[b], slot_a, slot_b, theta))
                res = abs(dr.positions[v].dist(locus.center) - locus.radius)
                assert res < 1e-8 * max(1.0, locus.radius)


def test_g7_fails_with_coincident_placement():
    g = corpus_graph("g7")
    with pytest.raises(CoincidentPlacement) as exc:
        draw_3degenerate(g, seed=0)
    assert len(exc.value.candidates) == 2
    assert exc.value.vertex in ("p", "q", "r", "s")


def test_g7_forcing_all_apexes_share_candidates():
    # the four apex insertion loci admit a single shared finite position
    g = corpus_graph("g7")
    from lombardi.degenerate import _insert, PartialState
    from lombardi.geometry import intersect_circles
    order, _ = degeneracy_order(g)
    state = PartialState(g)
    names = {lab: i for i, lab in enumerate(g.labels)}
    triangle = {names["x"], names["y"], names["z"]}
    for v in reversed(order):
        if v in triangle:
            _insert(state, v, order)
    spots = []
    for lab in ("p", "q", "r", "s"):
        apex = names[lab]
        nbrs = sorted(g.adjacency[apex], key=lambda w: g.rotation_index(apex, w))
        d = g.degree(apex)
        idx = {w: g.rotation_index(apex, w) for w in nbrs}

        def locus(a, b):
            theta = ((idx[b] - idx[a]) % d) * TWO_PI / d
            return meeting_locus(LocusInputs(
                state.positions[a], state.positions[b],
                state.slot_dir(a, apex), state.slot_dir(b, apex), theta))

        l1, l2, l3 = (locus(nbrs[0], nbrs[1]), locus(nbrs[0], nbrs[2]),
                      locus(nbrs[1], nbrs[2]))
        valid = [c for c in intersect_circles(l1, l2)
                 if abs(c.dist(l3.center) - l3.radius) <= 1e-6 * max(1.0, l3.radius)]
        assert len(valid) == 1
        spots.append(valid[0])
    for other in spots[1:]:
        assert spots[0].dist(other) < 1e-6
