"""Concentric-circle drawings of dihedrally symmetric graphs.

The input describes one vertex orbit per circle and edge orbits between
circles; everything else is forced by symmetry. Solving proceeds from the
innermost circle outward. A circle's unknowns are its twist t (frame base
angle relative to the radial direction) and radius r; every edge orbit
arriving from a smaller circle contributes one scalar consistency
equation (the arc anchored at the inner endpoint must arrive exactly on
its assigned outer slot), and every same-circle orbit contributes one
equation in t alone, since uniform scaling preserves all tangent angles.

Two inward orbits determine (t, r) uniquely; the solver scans the radius
bracket, solving the first equation for t at each sample and bisecting
the second's sign change, then polishes with damped Newton. One or zero
inward orbits leave the radius free, so it is chosen heuristically as a
multiple of the previous radius.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from .drawing import Drawing, DrawnEdge, VertexFrame
from .errors import (
    DegenerateArc,
    CoincidentPoints,
    InconsistentThirdConstraint,
    MultiEdgeOnExpansion,
    ParseError,
    RootFindingFailed,
    TooManyInwardNeighbors,
)
from .geometry import Point, Direction, arc_from_tangent, endpoint_tangents, wrap_angle
from .graphs import RotationGraph, build_graph

TWO_PI = 2.0 * math.pi

RADIUS_RATIO = 2.0  # heuristic radius multiplier for underdetermined circles
RADIUS_BRACKET = 64.0
T_SAMPLES = 512
R_SAMPLES = 512
RESIDUAL_TOL = 1e-10
VERIFY_TOL = 1e-8


@dataclass(frozen=True)
class EdgeOrbit:
    c_from: int
    off_from: int
    c_to: int
    off_to: int

    @property
    def step(self) -> int:
        return self.off_to - self.off_from

    def same_circle(self) -> bool:
        return self.c_from == self.c_to


@dataclass
class SpiroSpec:
    symmetry: int
    phases: list[int]  # per circle, in units of pi/symmetry (0 or 1)
    fixed_radii: list[float | None]
    orbits: list[EdgeOrbit]
    order: list[list[tuple[int, str]]]  # per circle: [(orbit index, role)...]
    name: str = ""

    @property
    def num_circles(self) -> int:
        return len(self.phases)

    def degree(self, c: int) -> int:
        return len(self.order[c])

    def is_diameter(self, o: EdgeOrbit) -> bool:
        return (o.same_circle() and self.symmetry % 2 == 0
                and o.step % self.symmetry == self.symmetry // 2)

    def vertex_id(self, c: int, k: int) -> int:
        return c * self.symmetry + k % self.symmetry

    def vertex_angle(self, c: int, k: int) -> float:
        return TWO_PI * (k % self.symmetry) / self.symmetry \
            + math.pi * self.phases[c] / self.symmetry

    def slot_index(self, c: int, orbit: int, role: str) -> int:
        return self.order[c].index((orbit, role))

    def inward_orbits(self, c: int) -> list[int]:
        seen = []
        for o_idx, role in self.order[c]:
            orb = self.orbits[o_idx]
            other = orb.c_to if role == "from" else orb.c_from
            if other < c and o_idx not in seen:
                seen.append(o_idx)
        return seen

    def same_circle_orbits(self, c: int) -> list[int]:
        seen = []
        for o_idx, _role in self.order[c]:
            if self.orbits[o_idx].same_circle() and o_idx not in seen:
                seen.append(o_idx)
        return seen

    def neighbor_of(self, c: int, k: int, orbit: int, role: str) -> tuple[int, int]:
        orb = self.orbits[orbit]
        if self.is_diameter(orb):
            return (c, k + self.symmetry // 2)
        if role == "from":
            return (orb.c_to, k + orb.step)
        return (orb.c_from, k - orb.step)


def parse_spiro_spec(text_or_obj) -> SpiroSpec:
    """Parse and validate a spirograph document."""
    if isinstance(text_or_obj, str):
        try:
            obj = json.loads(text_or_obj)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: line {exc.lineno}: {exc.msg}") from exc
    else:
        obj = text_or_obj
    try:
        n = int(obj["symmetry"])
        circles = obj["circles"]
        orbit_docs = obj["orbits"]
        order_doc = obj["order"]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"spiro document missing field: {exc}") from exc
    if n < 3:
        raise ParseError("symmetry order must be at least 3")
    phases, radii = [], []
    for c in circles:
        phase = int(c.get("phase", 0))
        if phase not in (0, 1):
            raise ParseError("phase must be 0 or 1 (units of pi/symmetry)")
        phases.append(phase)
        radii.append(float(c["radius"]) if "radius" in c else None)
    orbits = []
    for od in orbit_docs:
        (cf, sf), (ct, st) = od["from"], od["to"]
        if not (0 <= cf < len(phases) and 0 <= ct < len(phases)):
            raise ParseError("orbit references unknown circle")
        orbits.append(EdgeOrbit(cf, sf % n, ct, st % n))
    order: list[list[tuple[int, str]]] = []
    for c in range(len(phases)):
        refs = order_doc.get(str(c), order_doc.get(c))
        if refs is None:
            raise ParseError(f"missing rotation for circle {c}")
        parsed = []
        for idx, role in refs:
            if role not in ("from", "to") or not 0 <= int(idx) < len(orbits):
                raise ParseError(f"bad rotation reference {[idx, role]!r}")
            parsed.append((int(idx), role))
        order.append(parsed)
    spec = SpiroSpec(n, phases, radii, orbits, order, name=obj.get("name", ""))
    _validate(spec)
    return spec


def _validate(spec: SpiroSpec) -> None:
    n = spec.symmetry
    # rotations must list exactly the incident orbit endpoints
    for c in range(spec.num_circles):
        want: list[tuple[int, str]] = []
        for i, orb in enumerate(spec.orbits):
            if spec.is_diameter(orb):
                if orb.c_from == c:
                    want.append((i, "from"))
                continue
            if orb.c_from == c:
                want.append((i, "from"))
            if orb.c_to == c:
                want.append((i, "to"))
        if sorted(want) != sorted(spec.order[c]):
            raise ParseError(f"rotation of circle {c} does not list its incidences")
        if len(spec.inward_orbits(c)) > 3:
            raise TooManyInwardNeighbors(f"circle {c} has more than three inward orbits")
    for orb in spec.orbits:
        if orb.same_circle() and orb.step % n == 0:
            raise ParseError("same-circle orbit with zero step")
    expand_graph(spec)  # raises on multi-edges


def expand_graph(spec: SpiroSpec) -> RotationGraph:
    """Concrete rotation graph of the expanded symmetric specification."""
    n = spec.symmetry
    edges = set()
    for i, orb in enumerate(spec.orbits):
        count = n // 2 if spec.is_diameter(orb) else n
        for k in range(count):
            u = spec.vertex_id(orb.c_from, k + orb.off_from)
            v = spec.vertex_id(orb.c_to, k + orb.off_to)
            if u == v:
                raise MultiEdgeOnExpansion("orbit expands to a loop")
            key = (min(u, v), max(u, v))
            if key in edges:
                raise MultiEdgeOnExpansion(f"orbits expand to repeated edge {key}")
            edges.add(key)
    rotation = {}
    for c in range(spec.num_circles):
        for k in range(n):
            vid = spec.vertex_id(c, k)
            nbrs = []
            for o_idx, role in spec.order[c]:
                oc, ok = spec.neighbor_of(c, k, o_idx, role)
                nbrs.append(spec.vertex_id(oc, ok))
            rotation[str(vid)] = nbrs
    ids = list(range(spec.num_circles * n))
    return build_graph(ids, sorted(edges), rotation, name=spec.name)


@dataclass
class CircleSolution:
    radius: float
    twist: float
    residuals: dict[int, float] = field(default_factory=dict)
    radius_sign_changes: int | None = None
    heuristic_radius: bool = False


class _Solver:
    """Per-circle constraint assembly over already-solved inner circles."""

    def __init__(self, spec: SpiroSpec, solved: list[CircleSolution], c: int):
        self.spec = spec
        self.solved = solved
        self.c = c

    def _endpoints(self, o_idx: int) -> tuple[tuple[int, int], int, tuple[int, int], int]:
        """Representative instance: inner (circle, k), inner slot, outer (c, k), outer slot."""
        spec, c = self.spec, self.c
        orb = spec.orbits[o_idx]
        if orb.c_from != c:  # inner endpoint plays the "from" role
            inner = (orb.c_from, 0)
            outer = (c, orb.step)
            i_slot = spec.slot_index(orb.c_from, o_idx, "from")
            o_slot = spec.slot_index(c, o_idx, "to")
        else:
            inner = (orb.c_to, 0)
            outer = (c, -orb.step)
            i_slot = spec.slot_index(orb.c_to, o_idx, "to")
            o_slot = spec.slot_index(c, o_idx, "from")
        return inner, i_slot, outer, o_slot

    def inward_residual(self, o_idx: int, t: float, r: float) -> float | None:
        spec, c = self.spec, self.c
        (ci, ki), i_slot, (_, ko), o_slot = self._endpoints(o_idx)
        sol = self.solved[ci]
        phi_in = spec.vertex_angle(ci, ki)
        p_in = Point.polar(sol.radius, phi_in)
        d_in = Direction(phi_in + sol.twist + TWO_PI * i_slot / spec.degree(ci))
        phi_out = spec.vertex_angle(c, ko)
        p_out = Point.polar(r, phi_out)
        try:
            arc = arc_from_tangent(p_in, d_in, p_out)
        except (DegenerateArc, CoincidentPoints):
            return None
        arrival = endpoint_tangents(arc)[1].angle
        assigned = phi_out + t + TWO_PI * o_slot / spec.degree(c)
        return wrap_angle(arrival - assigned)

    def ring_residual(self, o_idx: int, t: float, r: float) -> float | None:
        spec, c = self.spec, self.c
        orb = spec.orbits[o_idx]
        h = (self.spec.symmetry // 2) if spec.is_diameter(orb) else orb.step
        phi0 = spec.vertex_angle(c, 0)
        phih = spec.vertex_angle(c, h)
        p0 = Point.polar(r, phi0)
        ph = Point.polar(r, phih)
        from_slot = spec.slot_index(c, o_idx, "from")
        to_slot = from_slot if spec.is_diameter(orb) else spec.slot_index(c, o_idx, "to")
        d0 = Direction(phi0 + t + TWO_PI * from_slot / spec.degree(c))
        try:
            arc = arc_from_tangent(p0, d0, ph)
        except (DegenerateArc, CoincidentPoints):
            return None
        arrival = endpoint_tangents(arc)[1].angle
        assigned = phih + t + TWO_PI * to_slot / spec.degree(c)
        return wrap_angle(arrival - assigned)

    def residual(self, kind: tuple[str, int], t: float, r: float) -> float | None:
        what, o_idx = kind
        if what == "in":
            return self.inward_residual(o_idx, t, r)
        return self.ring_residual(o_idx, t, r)


def _t_roots(fn, r: float, samples: int = T_SAMPLES) -> list[float]:
    """Roots of a wrapped-angle equation in t over [0, 2*pi)."""
    ts = [TWO_PI * i / samples for i in range(samples + 1)]
    vals = [fn(t, r) for t in ts]
    roots = []
    for i in range(samples):
        a, b = vals[i], vals[i + 1]
        if a is None or b is None:
            continue
        if a == 0.0:
            roots.append(ts[i])
            continue
        if a * b < 0.0 and abs(a - b) < math.pi:  # exclude wrap jumps
            lo, hi, fa = ts[i], ts[i + 1], a
            for _ in range(80):
                mid = 0.5 * (lo + hi)
                fm = fn(mid, r)
                if fm is None:
                    break
                if fm == 0.0:
                    lo = hi = mid
                    break
                if (fm > 0.0) == (fa > 0.0):
                    lo, fa = mid, fm
                else:
                    hi = mid
            roots.append(0.5 * (lo + hi))
    return roots


def circle_candidates(spec: SpiroSpec, c: int, solved: list[CircleSolution],
                      shrink: float = 1.0) -> list[CircleSolution]:
    """All valid (twist, radius) solutions for circle c, deterministic order.

    A circle can admit several twist roots (mirror branches); the caller
    backtracks across them because an inner branch can make an outer
    circle unsolvable.
    """
    solver = _Solver(spec, solved, c)
    inward = spec.inward_orbits(c)
    rings = spec.same_circle_orbits(c)
    equations = [("in", o) for o in inward] + [("ring", o) for o in rings]
    fixed = spec.fixed_radii[c]
    r_prev = solved[-1].radius if solved else None

    if len(inward) <= 1:
        if fixed is not None:
            r = fixed
        else:
            r = (RADIUS_RATIO * r_prev if r_prev is not None else 1.0) * shrink
            if r_prev is not None:
                r = max(r, r_prev * 1.01)
        heuristic = fixed is None
        if not equations:
            return [CircleSolution(r, 0.0, {}, None, heuristic)]
        fn = lambda t, rr: solver.residual(equations[0], t, rr)
        out = []
        for t in sorted(_t_roots(fn, r)):
            residuals = {}
            ok = True
            for kind in equations:
                v = solver.residual(kind, t, r)
                if v is None or abs(v) > VERIFY_TOL:
                    ok = False
                    break
                residuals[kind[1]] = abs(v)
            if ok:
                out.append(CircleSolution(r, t % TWO_PI, residuals, None, heuristic))
        if not out:
            raise RootFindingFailed(f"no consistent twist for circle {c}")
        return out

    # two or three inward orbits: (t, r) is determined up to branch choice
    eq1, eq2 = equations[0], equations[1]
    if r_prev is None:
        raise RootFindingFailed("inward orbits require an already-solved inner circle")
    lo_r = fixed if fixed is not None else r_prev * 1.0001
    hi_r = fixed if fixed is not None else r_prev * RADIUS_BRACKET

    def branches(r: float) -> list[tuple[float, float]]:
        """(t, eq2 residual) for every eq1 twist root at this radius."""
        pairs = []
        for t in _t_roots(lambda t, rr: solver.residual(eq1, t, rr), r):
            v = solver.residual(eq2, t, r)
            if v is not None:
                pairs.append((t, v))
        return pairs

    seeds: list[tuple[float, float]] = []
    sign_changes = 0
    if fixed is not None:
        seeds = [(fixed, t) for t, _v in branches(fixed)]
    else:
        ratio = (hi_r / lo_r) ** (1.0 / (R_SAMPLES - 1))
        prev_r, prev_pairs = None, None
        for i in range(R_SAMPLES):
            r = lo_r * ratio ** i
            pairs = branches(r)
            if prev_pairs is not None:
                for t_prev, v_prev in prev_pairs:
                    # continue the branch whose twist is nearest
                    cont = min(pairs, default=None,
                               key=lambda tv: abs(wrap_angle(tv[0] - t_prev)))
                    if cont is None or abs(wrap_angle(cont[0] - t_prev)) > 0.5:
                        continue
                    t_cur, v_cur = cont
                    if v_prev == 0.0:
                        seeds.append((prev_r, t_prev))
                    elif v_prev * v_cur < 0.0 and abs(v_prev - v_cur) < math.pi:
                        sign_changes += 1
                        seeds.append((_bisect_radius(solver, eq1, eq2, prev_r, r,
                                                     t_prev, v_prev)))
            prev_r, prev_pairs = r, pairs
    out = []
    last_error: Exception | None = None
    for r0, t0 in seeds:
        try:
            t, r = _newton_polish(solver, eq1, eq2, t0, r0)
        except RootFindingFailed as exc:
            last_error = exc
            continue
        if fixed is None and not (lo_r * 0.99 <= r <= hi_r * 1.01):
            continue
        residuals = {}
        ok = True
        for kind in equations[2:]:
            v = solver.residual(kind, t, r)
            if v is None or abs(v) > VERIFY_TOL:
                ok = False
                residuals[kind[1]] = math.inf if v is None else abs(v)
                break
            residuals[kind[1]] = abs(v)
        if not ok:
            last_error = InconsistentThirdConstraint(
                f"unused constraint residual too large on circle {c}: {residuals}")
            continue
        if any(abs(s.radius - r) < 1e-9 and abs(wrap_angle(s.twist - t)) < 1e-9
               for s in out):
            continue
        out.append(CircleSolution(r, t % TWO_PI, residuals, sign_changes, False))
    if not out:
        raise last_error if last_error else RootFindingFailed(
            f"no bracketed (twist, radius) solution for circle {c}")
    out.sort(key=lambda s: (s.radius, s.twist))
    for s in out:
        s.radius_sign_changes = sign_changes
    return out


def _bisect_radius(solver, eq1, eq2, r_lo, r_hi, t_near, f_lo) -> tuple[float, float]:
    for _ in range(80):
        mid = math.sqrt(r_lo * r_hi)
        roots = _t_roots(lambda t, rr: solver.residual(eq1, t, rr), mid, samples=128)
        if not roots:
            break
        t_mid = min(roots, key=lambda t: abs(wrap_angle(t - t_near)))
        fm = solver.residual(eq2, t_mid, mid)
        if fm is None:
            break
        t_near = t_mid
        if fm == 0.0:
            r_lo = r_hi = mid
            break
        if (fm > 0.0) == (f_lo > 0.0):
            r_lo, f_lo = mid, fm
        else:
            r_hi = mid
    return math.sqrt(r_lo * r_hi), t_near


def solve_circle(spec: SpiroSpec, c: int,
                 solved: list[CircleSolution]) -> CircleSolution:
    """First valid solution for circle c (see circle_candidates)."""
    return circle_candidates(spec, c, solved)[0]


def _newton_polish(solver: _Solver, eq1, eq2, t0: float, r0: float,
                   iters: int = 60) -> tuple[float, float]:
    t, r = t0, r0

    def f(tt, rr):
        a = solver.residual(eq1, tt, rr)
        b = solver.residual(eq2, tt, rr)
        if a is None or b is None:
            return None
        return (a, b)

    cur = f(t, r)
    if cur is None:
        raise RootFindingFailed("polish started at an invalid point")
    for _ in range(iters):
        err = max(abs(cur[0]), abs(cur[1]))
        if err < RESIDUAL_TOL * 1e-2:
            break
        dt = 1e-7
        dr = 1e-7 * max(r, 1.0)
        f_t = f(t + dt, r)
        f_r = f(t, r + dr)
        if f_t is None or f_r is None:
            break
        j11 = (f_t[0] - cur[0]) / dt
        j21 = (f_t[1] - cur[1]) / dt
        j12 = (f_r[0] - cur[0]) / dr
        j22 = (f_r[1] - cur[1]) / dr
        det = j11 * j22 - j12 * j21
        if abs(det) < 1e-300:
            break
        step_t = (-cur[0] * j22 + cur[1] * j12) / det
        step_r = (-cur[1] * j11 + cur[0] * j21) / det
        scale = 1.0
        for _damp in range(30):
            nt, nr = t + scale * step_t, r + scale * step_r
            if nr > 0:
                nxt = f(nt, nr)
                if nxt is not None and max(abs(nxt[0]), abs(nxt[1])) < err:
                    t, r, cur = nt, nr, nxt
                    break
            scale *= 0.5
        else:
            break
    if max(abs(cur[0]), abs(cur[1])) > RESIDUAL_TOL:
        raise RootFindingFailed("newton polish did not converge")
    return t, r


def iter_solutions(spec: SpiroSpec, shrink: dict[int, float] | None = None):
    """All complete circle assignments, DFS order over twist branches.

    Raises the deepest solver error if no complete assignment exists.
    """
    shrink = shrink or {}
    chosen: list[CircleSolution] = []
    deepest: list[Exception | None] = [None]
    found: list[bool] = [False]

    def rec(c: int):
        if c == spec.num_circles:
            found[0] = True
            yield list(chosen)
            return
        try:
            cands = circle_candidates(spec, c, chosen, shrink.get(c, 1.0))
        except (RootFindingFailed, InconsistentThirdConstraint) as exc:
            deepest[0] = exc
            return
        for cand in cands:
            chosen.append(cand)
            yield from rec(c + 1)
            chosen.pop()

    yield from rec(0)
    if not found[0]:
        raise deepest[0] if deepest[0] else RootFindingFailed("spec unsolvable")


def solve_all(spec: SpiroSpec, shrink: dict[int, float] | None = None
              ) -> list[CircleSolution]:
    """First complete solution (inner to outer, lowest radius/twist branches)."""
    return next(iter_solutions(spec, shrink))


def draw_spirograph(spec: SpiroSpec, seed: int = 0) -> Drawing:
    """Solve every circle and realize all edge orbits.

    When a heuristically sized circle makes an arc pass through a vertex,
    its radius factor is shrunk by 0.75 and the outer circles re-solved.
    """
    shrink: dict[int, float] = {}
    drawing = None
    for _round in range(8):
        solved_any = None
        for branches, solved in zip(range(32), iter_solutions(spec, shrink)):
            solved_any = solved
            drawing = _emit(spec, solved)
            if _arc_through_vertex(drawing) is None:
                return drawing
        culprit = next((c for c in reversed(range(spec.num_circles))
                        if solved_any and solved_any[c].heuristic_radius), None)
        if culprit is None:
            return drawing  # nothing adjustable; report as-is
        shrink[culprit] = shrink.get(culprit, 1.0) * 0.75
    return drawing




def _emit(spec: SpiroSpec, solved: list[CircleSolution]) -> Drawing:
    n = spec.symmetry
    positions = []
    frames = {}
    for c in range(spec.num_circles):
        for k in range(n):
            positions.append(Point.polar(solved[c].radius, spec.vertex_angle(c, k)))
            frames[spec.vertex_id(c, k)] = VertexFrame(
                spec.vertex_angle(c, k) + solved[c].twist, spec.degree(c))
    edges = []
    for i, orb in enumerate(spec.orbits):
        count = n // 2 if spec.is_diameter(orb) else n
        d_from = spec.degree(orb.c_from)
        slot = spec.slot_index(orb.c_from, i, "from")
        for k in range(count):
            ku = k + orb.off_from
            kv = k + orb.off_to if not spec.is_diameter(orb) else k + orb.off_from + n // 2
            u = spec.vertex_id(orb.c_from, ku)
            v = spec.vertex_id(orb.c_to, kv)
            phi_u = spec.vertex_angle(orb.c_from, ku)
            tangent = Direction(phi_u + solved[orb.c_from].twist
                                + TWO_PI * slot / d_from)
            arc = arc_from_tangent(positions[u], tangent, positions[v])
            edges.append(DrawnEdge(u, v, arc.bulge, f"orbit{i}"))
    labels = [str(i) for i in range(spec.num_circles * n)]
    return Drawing(positions, edges, frames, labels)


def _arc_through_vertex(d: Drawing):
    scale = max(p.norm() for p in d.positions)
    for e in d.edges:
        arc = d.arc_of(e)
        for v in range(d.n):
            if v in (e.u, e.v):
                continue
            from .geometry import arc_clearance
            if arc_clearance(arc, d.positions[v]) < 1e-6 * max(1.0, scale):
                return e.key(), v
    return None
