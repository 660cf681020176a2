"""Circular layout: realize a decomposition plan on a common circle.

Slot offsets are measured from the counterclockwise tangent at each
vertex ("beta"). An arc leaving one vertex at offset beta arrives at the
other endpoint at the mirror offset pi - beta for any vertex placement,
so assigning each 2-regular factor a mirror pair from one evenly spaced
grid gives perfect angular resolution identically, not just numerically.

Case rules for the grid:
  div4                no slot tangential (0, pi) or radial (pi/2, 3*pi/2)
  odd                 the 1-factor takes the inward radial slot
  2 mod 4 hamiltonian one factor lies on the circle (tangential pair)
  2 mod 4 bipartite   one factor alternates inside/outside radially
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from .decompose import DecompositionPlan, _cycles_of_two_regular
from .drawing import Drawing, DrawnEdge, VertexFrame
from .errors import DegenerateArc, InfeasibleCase, InvalidPlan, PerturbationExhausted
from .geometry import Arc, Direction, Point, arc_clearance, arc_from_tangent, norm_angle
from .graphs import RotationGraph

TWO_PI = 2.0 * math.pi

JITTER = 1e-3
MAX_RETRIES = 64
CLEARANCE = 1e-6


@dataclass
class SlotAssignment:
    degree: int
    grid: list[float]  # slot offsets from the ccw tangent, ascending
    factor_slots: list[tuple[float, float]]  # (leaving, arriving) per factor
    twist: float
    case: str

    def audit_even_spacing(self, tol: float = 1e-10) -> bool:
        gaps = [(self.grid[(i + 1) % self.degree] - self.grid[i]) % TWO_PI
                for i in range(self.degree)]
        return all(abs(g - TWO_PI / self.degree) <= tol for g in gaps)


def _mirror_pairs(grid: list[float]) -> list[tuple[int, int]]:
    """Index pairs (i, j) with grid[j] = pi - grid[i] mod 2*pi, i <= j."""
    pairs = []
    used = set()
    for i, s in enumerate(grid):
        if i in used:
            continue
        target = norm_angle(math.pi - s)
        j = min(range(len(grid)), key=lambda k: abs((grid[k] - target + math.pi) % TWO_PI - math.pi))
        if abs((grid[j] - target + math.pi) % TWO_PI - math.pi) > 1e-9:
            raise InfeasibleCase("slot grid is not mirror-symmetric")
        used.update((i, j))
        pairs.append((i, j) if i <= j else (j, i))
    return pairs


def assign_slots(d: int, plan: DecompositionPlan) -> SlotAssignment:
    """Choose the evenly spaced slot grid and give each factor its pair."""
    if d == 0:
        return SlotAssignment(0, [], [], 0.0, plan.case)
    two_factor_count = sum(1 for f in plan.factors if f.kind == "two-regular")
    if plan.case == "div4":
        if d % 4 != 0 or two_factor_count != d // 2:
            raise InvalidPlan("div4 plan must carry d/2 two-regular factors")
        grid = [norm_angle(math.pi / 2 + math.pi / d + TWO_PI * k / d) for k in range(d)]
        special = None
    elif plan.case == "odd":
        if d % 2 == 0 or two_factor_count != (d - 1) // 2:
            raise InvalidPlan("odd plan must carry one matching plus (d-1)/2 two-factors")
        grid = [norm_angle(math.pi / 2 + TWO_PI * k / d) for k in range(d)]
        special = "matching"
    elif plan.case == "two-mod-4-hamiltonian":
        if d % 4 != 2 or two_factor_count != d // 2:
            raise InvalidPlan("hamiltonian plan needs d = 2 mod 4 and d/2 two-factors")
        grid = [norm_angle(TWO_PI * k / d) for k in range(d)]
        special = "hamiltonian"
    elif plan.case == "two-mod-4-bipartite":
        if d % 4 != 2 or two_factor_count != d // 2:
            raise InvalidPlan("bipartite plan needs d = 2 mod 4 and d/2 two-factors")
        grid = [norm_angle(math.pi / 2 + TWO_PI * k / d) for k in range(d)]
        special = "perpendicular"
    else:
        raise InvalidPlan(f"unknown plan case {plan.case!r}")

    pairs = _mirror_pairs(grid)
    self_pairs = [(i, j) for i, j in pairs if i == j]
    cross_pairs = [(i, j) for i, j in pairs if i != j]

    slot_of: list[tuple[float, float]] = []
    free = list(cross_pairs)
    for f in plan.factors:
        if f.kind == "one-regular":
            if special != "matching" or len(self_pairs) != 1:
                raise InvalidPlan("matching factor only valid in the odd case")
            radial_in = self_pairs[0][0]
            slot_of.append((grid[radial_in], grid[radial_in]))
        elif f.tag == "on-circle-hamiltonian" and special == "hamiltonian":
            tang = [(i, j) for i, j in free if abs(grid[i]) < 1e-12]
            if not tang:
                raise InfeasibleCase("tangential pair missing from grid")
            free.remove(tang[0])
            slot_of.append((grid[tang[0][0]], grid[tang[0][1]]))
        elif f.tag == "perpendicular-bipartite" and special == "perpendicular":
            if len(self_pairs) != 2:
                raise InfeasibleCase("perpendicular slots missing from grid")
            inside = min(self_pairs)[0]
            outside = max(self_pairs)[0]
            slot_of.append((grid[inside], grid[outside]))
        else:
            if not free:
                raise InvalidPlan("more factors than available slot pairs")
            i, j = free.pop(0)
            slot_of.append((grid[i], grid[j]))
    if free:
        raise InvalidPlan("unused slot pairs left over")
    twist = min(((s - math.pi / 2 + math.pi) % TWO_PI - math.pi for s in grid),
                key=abs)
    return SlotAssignment(d, sorted(grid), slot_of, twist, plan.case)


def _vertex_order(g: RotationGraph, plan: DecompositionPlan) -> list[int]:
    if plan.case == "two-mod-4-hamiltonian" and plan.factors:
        cycles = _cycles_of_two_regular(sorted(plan.factors[0].edges))
        if len(cycles) == 1 and len(cycles[0]) == g.n:
            return cycles[0]
    return list(range(g.n))


def draw_circular(g: RotationGraph, plan: DecompositionPlan,
                  seed: int = 0) -> Drawing:
    """Place the vertices on the unit circle and realize every factor.

    Vertices go in cycle order for the hamiltonian case, index order
    otherwise; a deterministic seeded jitter of up to 1e-3 radians is
    applied only when an arc degenerates or passes through a vertex.
    """
    d = max((g.degree(v) for v in range(g.n)), default=0)
    slots = assign_slots(d, plan)
    order = _vertex_order(g, plan)
    base_angles = {v: TWO_PI * i / g.n for i, v in enumerate(order)}
    rng = random.Random(seed)

    psi = dict(base_angles)
    failure = "no attempt"
    for attempt in range(MAX_RETRIES + 1):
        try:
            drawing = _realize(g, plan, slots, psi)
        except DegenerateArc as exc:
            failure = f"degenerate arc: {exc}"
        else:
            bad = _arc_through_vertex(drawing)
            if bad is None:
                return drawing
            failure = f"arc {bad[0]} passes through vertex {bad[1]}"
        psi = {v: base_angles[v] + rng.uniform(-JITTER, JITTER) for v in base_angles}
    raise PerturbationExhausted(f"retries exhausted; last failure: {failure}")


def _realize(g: RotationGraph, plan: DecompositionPlan, slots: SlotAssignment,
             psi: dict[int, float]) -> Drawing:
    pos = [Point(math.cos(psi[v]), math.sin(psi[v])) for v in range(g.n)]
    edges: list[DrawnEdge] = []

    def tangent(v: int, beta: float) -> Direction:
        return Direction(psi[v] + math.pi / 2.0 + beta)

    def emit(u: int, w: int, beta: float, group: str) -> None:
        arc = arc_from_tangent(pos[u], tangent(u, beta), pos[w])
        edges.append(DrawnEdge(u, w, arc.bulge, group))

    for idx, factor in enumerate(plan.factors):
        beta_out, beta_in = slots.factor_slots[idx]
        group = f"factor{idx}:{factor.tag}"
        if factor.kind == "one-regular":
            for u, w in sorted(factor.edges):
                emit(u, w, beta_out, group)
            continue
        cycles = _cycles_of_two_regular(sorted(factor.edges))
        if factor.tag == "on-circle-hamiltonian":
            cyc = cycles[0]
            # orient the cycle so traversal is ccw in placement order
            if norm_angle(psi[cyc[1]] - psi[cyc[0]]) > math.pi:
                cyc = [cyc[0]] + cyc[1:][::-1]
            for i, u in enumerate(cyc):
                w = cyc[(i + 1) % len(cyc)]
                sweep = norm_angle(psi[w] - psi[u])
                edges.append(DrawnEdge(u, w, math.tan(sweep / 4.0), group))
            continue
        if factor.tag == "perpendicular-bipartite":
            for cyc in cycles:
                if len(cyc) % 2:
                    raise InvalidPlan("perpendicular factor contains an odd cycle")
                for i, u in enumerate(cyc):
                    w = cyc[(i + 1) % len(cyc)]
                    emit(u, w, beta_out if i % 2 == 0 else beta_in, group)
            continue
        for cyc in cycles:
            for i, u in enumerate(cyc):
                emit(u, cyc[(i + 1) % len(cyc)], beta_out, group)

    frames = {v: VertexFrame(psi[v] + math.pi / 2.0 + slots.grid[0], slots.degree)
              for v in range(g.n)} if slots.degree else {}
    return Drawing(pos, edges, frames, list(g.labels))


def _arc_through_vertex(d: Drawing) -> tuple[tuple[int, int], int] | None:
    for e in d.edges:
        arc = d.arc_of(e)
        for v in range(d.n):
            if v in (e.u, e.v):
                continue
            if arc_clearance(arc, d.positions[v]) < CLEARANCE:
                return e.key(), v
    return None
