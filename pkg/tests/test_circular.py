import math
import random

import pytest

from lombardi.circular import assign_slots, draw_circular
from lombardi.decompose import circular_plan
from lombardi.errors import InvalidPlan
from lombardi.geometry import arc_circle_angle, Circle, Point
from lombardi.verify import full_report, resolution_report
from sample_graphs import (
    circulant,
    complete_bipartite,
    corpus_graph,
    cycle,
    random_regular,
)

UNIT = Circle(Point(0.0, 0.0), 1.0)
TWO_PI = 2.0 * math.pi


def grid_has(grid, value, tol=1e-12):
    return any(abs((s - value + math.pi) % TWO_PI - math.pi) < tol for s in grid)


# ------------------------------------------------------------- slot assignment


def test_assign_slots_div4_avoids_radial_and_tangential():
    plan = circular_plan(complete_bipartite(4, 4))
    slots = assign_slots(4, plan)
    assert slots.audit_even_spacing()
    for forbidden in (0.0, math.pi, math.pi / 2, 3 * math.pi / 2):
        assert not grid_has(slots.grid, forbidden)


def test_assign_slots_odd_has_inward_radial_matching():
    g = corpus_graph("wagner")
    plan = circular_plan(g)
    slots = assign_slots(3, plan)
    assert slots.audit_even_spacing()
    matching_idx = next(i for i, f in enumerate(plan.factors) if f.kind == "one-regular")
    beta_out, beta_in = slots.factor_slots[matching_idx]
    assert abs(beta_out - math.pi / 2) < 1e-12  # inward radial
    assert abs(beta_in - math.pi / 2) < 1e-12
    others = [slots.factor_slots[i] for i in range(len(plan.factors)) if i != matching_idx]
    for b_out, b_in in others:
        assert abs((b_in - (math.pi - b_out)) % TWO_PI) < 1e-9  # mirror pair


def test_assign_slots_hamiltonian_has_tangential_pair():
    g = corpus_graph("paley13")
    plan = circular_plan(g)
    slots = assign_slots(6, plan)
    assert slots.audit_even_spacing()
    ham_idx = next(i for i, f in enumerate(plan.factors)
                   if f.tag == "on-circle-hamiltonian")
    b_out, b_in = slots.factor_slots[ham_idx]
    assert abs(b_out) < 1e-12 and abs(b_in - math.pi) < 1e-12


def test_assign_slots_rejects_mismatched_plan():
    plan = circular_plan(complete_bipartite(4, 4))
    with pytest.raises(InvalidPlan):
        assign_slots(6, plan)


# ------------------------------------------------------------- drawings


def check_drawing(g, dr, expect_case=None):
    rep = full_report(dr)
    assert rep.max_deviation < 1e-9
    assert not rep.incidence_violations
    assert max(abs(p.norm() - 1.0) for p in dr.positions) < 1e-9
    return rep


def test_wagner_drawing_matching_interior_perpendicular():
    g = corpus_graph("wagner")
    plan = circular_plan(g)
    dr = draw_circular(g, plan, seed=0)
    check_drawing(g, dr)
    for e in dr.edges:
        if "perpendicular-matching" not in (e.group or ""):
            continue
        arc = dr.arc_of(e)
        # perpendicular to the circle at both endpoints, and interior
        assert abs(arc_circle_angle(arc, UNIT, arc.p) - math.pi / 2) < 1e-9
        assert abs(arc_circle_angle(arc, UNIT, arc.q) - math.pi / 2) < 1e-9
        assert arc.midpoint().norm() < 1.0 + 1e-9


def test_k44_drawing_two_arc_families():
    g = complete_bipartite(4, 4)
    plan = circular_plan(g)
    dr = draw_circular(g, plan, seed=0)
    check_drawing(g, dr)
    groups = {e.group for e in dr.edges}
    assert len(groups) == 2


def test_paley13_on_circle_hamiltonian_edges():
    g = corpus_graph("paley13")
    plan = circular_plan(g)
    dr = draw_circular(g, plan, seed=0)
    check_drawing(g, dr)
    on_circle = [e for e in dr.edges if "on-circle-hamiltonian" in (e.group or "")]
    assert len(on_circle) == 13
    for e in on_circle:
        arc = dr.arc_of(e)
        assert arc.center.dist(Point(0, 0)) < 1e-9
        assert abs(arc.radius - 1.0) < 1e-9


def test_factor_angle_consistency():
    # all edges of one factor meet the circle at one angle (both endpoints)
    for name in ("wagner", "paley13"):
        g = corpus_graph(name)
        dr = draw_circular(g, circular_plan(g), seed=0)
        by_group = {}
        for e in dr.edges:
            arc = dr.arc_of(e)
            for pt in (arc.p, arc.q):
                by_group.setdefault(e.group, []).append(arc_circle_angle(arc, UNIT, pt))
        for group, angles in by_group.items():
            assert max(angles) - min(angles) < 1e-9, group


def test_frames_match_arc_tangents():
    g = complete_bipartite(4, 4)
    dr = draw_circular(g, circular_plan(g), seed=0)
    for e in dr.edges:
        for v in (e.u, e.v):
            t = dr.incident_tangent(e, v).angle
            frame = dr.frames[v]
            best = min(abs((t - frame.slot(k).angle + math.pi) % TWO_PI - math.pi)
                       for k in range(frame.degree))
            assert best < 1e-9


def test_two_regular_cycle_graph_on_circle():
    g = cycle(7)
    dr = draw_circular(g, circular_plan(g), seed=0)
    check_drawing(g, dr)
    for e in dr.edges:
        arc = dr.arc_of(e)
        assert abs(arc.radius - 1.0) < 1e-9


def test_random_regular_graphs_draw_clean():
    rng = random.Random(99)
    cases = [(8, 3), (10, 4), (12, 5), (8, 4), (9, 4)]
    for n, d in cases:
        g = random_regular(n, d, rng)
        try:
            plan = circular_plan(g)
        except Exception:
            continue  # e.g. odd-degree graph without a perfect matching
        dr = draw_circular(g, plan, seed=5)
        check_drawing(g, dr)


def test_determinism_same_seed_same_drawing():
    g = corpus_graph("wagner")
    plan = circular_plan(g)
    a = draw_circular(g, plan, seed=3)
    b = draw_circular(g, plan, seed=3)
    assert [(p.x, p.y) for p in a.positions] == [(p.x, p.y) for p in b.positions]
    assert [(e.u, e.v, e.bulge) for e in a.edges] == [(e.u, e.v, e.bulge) for e in b.edges]


def test_circulant_8_14_even_factor_route():
    # 6-regular, not bipartite: exercises a degree-2-mod-4 search route
    g = circulant(8, [1, 2, 3])
    plan = circular_plan(g)
    assert plan.case in ("two-mod-4-hamiltonian", "two-mod-4-bipartite")
    dr = draw_circular(g, plan, seed=0)
    check_drawing(g, dr)
