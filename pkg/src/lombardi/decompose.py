"""Edge decompositions of regular graphs into 1- and 2-regular factors.

The dispatcher `circular_plan` implements the case analysis behind the
circular layout: degree 0 mod 4 needs only a 2-factorization, odd degree
needs a perfect matching first, and degree 2 mod 4 needs a Hamiltonian
cycle or a spanning even-cycle 2-factor, both searched exactly under a
node budget since no polynomial method is known for that case.

Tie-breaking is by lowest vertex id throughout, so results are
deterministic.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .errors import (
    NoHamiltonianOrEvenFactor,
    NoPerfectMatching,
    NotEvenRegular,
    NotRegularBipartite,
    OddDegree,
    SearchBudgetExceeded,
)
from .graphs import RotationGraph, classify, connected_components, two_coloring

Edge = tuple[int, int]

DEFAULT_BUDGET = 10_000_000


def _norm(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Factor:
    edges: frozenset[Edge]
    kind: str  # "one-regular" | "two-regular"
    tag: str = "plain"


@dataclass
class DecompositionPlan:
    factors: list[Factor]
    case: str  # "div4" | "odd" | "two-mod-4-hamiltonian" | "two-mod-4-bipartite"
    notes: list[str] = field(default_factory=list)


# ------------------------------------------------------------------ euler tours


def euler_tour(n: int, edges: list[Edge]) -> list[list[tuple[int, int]]]:
    """Directed traversal of each component's Euler tour (Hierholzer).

    Every vertex must have even degree. Each returned component tour lists
    its edges in traversal order and orientation.
    """
    adj: list[list[int]] = [[] for _ in range(n)]
    for idx, (u, v) in enumerate(edges):
        adj[u].append(idx)
        adj[v].append(idx)
    for v in range(n):
        if len(adj[v]) % 2:
            raise OddDegree(f"vertex {v} has odd degree")
    for v in range(n):
        adj[v].sort(key=lambda i: edges[i])
    used = [False] * len(edges)
    ptr = [0] * n
    tours = []
    for start in range(n):
        if ptr[start] >= len(adj[start]) or all(used[i] for i in adj[start]):
            continue
        stack = [(start, -1)]
        path: list[tuple[int, int]] = []
        while stack:
            v, via = stack[-1]
            while ptr[v] < len(adj[v]) and used[adj[v][ptr[v]]]:
                ptr[v] += 1
            if ptr[v] == len(adj[v]):
                stack.pop()
                if via >= 0:
                    u, w = edges[via]
                    prev = stack[-1][0]
                    path.append((prev, w if prev == u else u))
            else:
                idx = adj[v][ptr[v]]
                used[idx] = True
                u, w = edges[idx]
                stack.append((w if v == u else u, idx))
        if path:
            tours.append(path[::-1])
    return tours


def euler_halving(g: RotationGraph) -> tuple[list[Edge], list[Edge]]:
    """Split an even-degree graph into two halves of degree deg/2 each,
    by alternating the edges of an Euler tour."""
    half_a: list[Edge] = []
    half_b: list[Edge] = []
    for tour in euler_tour(g.n, g.edges()):
        if len(tour) % 2:
            raise OddDegree(
                "component has an odd number of edges; alternation cannot halve it")
        for i, (u, v) in enumerate(tour):
            (half_a if i % 2 == 0 else half_b).append(_norm(u, v))
    return sorted(half_a), sorted(half_b)


# ------------------------------------------------------------------ bipartite matching


def _kuhn_matching(left: list[int], adj: dict[int, list[int]]) -> dict[int, int]:
    """Maximum bipartite matching (augmenting paths); returns left->right."""
    match_l: dict[int, int] = {}
    match_r: dict[int, int] = {}

    def try_augment(u: int, seen: set[int]) -> bool:
        for w in adj[u]:
            if w in seen:
                continue
            seen.add(w)
            if w not in match_r or try_augment(match_r[w], seen):
                match_l[u] = w
                match_r[w] = u
                return True
        return False

    for u in sorted(left):
        if u not in match_l:
            try_augment(u, set())
    return match_l


def bipartite_edge_coloring(g: RotationGraph) -> list[list[Edge]]:
    """Partition a d-regular bipartite graph's edges into d perfect matchings."""
    coloring = two_coloring(g)
    prof_degrees = {g.degree(v) for v in range(g.n)}
    if coloring is None or len(prof_degrees) != 1:
        raise NotRegularBipartite("graph must be regular and bipartite")
    d = prof_degrees.pop()
    left = [v for v in range(g.n) if coloring[v] == 0]
    remaining: dict[int, list[int]] = {u: sorted(g.adjacency[u]) for u in left}
    matchings: list[list[Edge]] = []
    for _ in range(d):
        m = _kuhn_matching(left, remaining)
        if len(m) != len(left):
            raise NotRegularBipartite("regular bipartite graph failed to decompose")
        matchings.append(sorted(_norm(u, w) for u, w in m.items()))
        for u, w in m.items():
            remaining[u].remove(w)
    return matchings


# ------------------------------------------------------------------ 2-factorization


def two_factorize(g: RotationGraph) -> list[list[Edge]]:
    """Split a 2k-regular graph into k spanning 2-regular subgraphs.

    Orient each component along an Euler tour, then edge-color the
    resulting k-in/k-out bipartite incidence graph.
    """
    degrees = {g.degree(v) for v in range(g.n)}
    if len(degrees) != 1:
        raise NotEvenRegular("graph is not regular")
    d = degrees.pop()
    if d % 2:
        raise NotEvenRegular("degree must be even")
    if d == 0:
        return []
    k = d // 2
    factors: list[list[Edge]] = [[] for _ in range(k)]
    for tour in euler_tour(g.n, g.edges()):
        left = sorted({u for u, _ in tour})
        out_adj: dict[int, list[int]] = {u: [] for u in left}
        for u, v in tour:
            out_adj[u].append(v)
        for u in left:
            out_adj[u].sort()
        for i in range(k):
            m = _kuhn_matching(left, out_adj)
            if len(m) != len(left):
                raise NotEvenRegular("euler orientation failed to edge-color")
            for u, w in m.items():
                factors[i].append(_norm(u, w))
                out_adj[u].remove(w)
    return [sorted(f) for f in factors]


# ------------------------------------------------------------------ general matching


def max_matching(g: RotationGraph) -> list[Edge]:
    """Maximum cardinality matching via blossom contraction (O(n^3) class)."""
    n = g.n
    match = [-1] * n
    parent = [-1] * n
    base = list(range(n))
    queue: deque[int] = deque()
    in_queue = [False] * n
    in_blossom = [False] * n

    adj = [sorted(g.adjacency[v]) for v in range(n)]

    def lca(a: int, b: int) -> int:
        used = [False] * n
        while True:
            a = base[a]
            used[a] = True
            if match[a] == -1:
                break
            a = parent[match[a]]
        while True:
            b = base[b]
            if used[b]:
                return b
            b = parent[match[b]]

    def mark_path(v: int, b: int, child: int) -> None:
        while base[v] != b:
            in_blossom[base[v]] = True
            in_blossom[base[match[v]]] = True
            parent[v] = child
            child = match[v]
            v = parent[match[v]]

    def find_path(root: int) -> int:
        for i in range(n):
            parent[i] = -1
            base[i] = i
            in_queue[i] = False
        queue.clear()
        queue.append(root)
        in_queue[root] = True
        while queue:
            v = queue.popleft()
            for to in adj[v]:
                if base[v] == base[to] or match[v] == to:
                    continue
                if to == root or (match[to] != -1 and parent[match[to]] != -1):
                    # odd cycle: contract the blossom
                    cur_base = lca(v, to)
                    for i in range(n):
                        in_blossom[i] = False
                    mark_path(v, cur_base, to)
                    mark_path(to, cur_base, v)
                    for i in range(n):
                        if in_blossom[base[i]]:
                            base[i] = cur_base
                            if not in_queue[i]:
                                in_queue[i] = True
                                queue.append(i)
                elif parent[to] == -1:
                    parent[to] = v
                    if match[to] == -1:
                        return to
                    if not in_queue[match[to]]:
                        queue.append(match[to])
                        in_queue[match[to]] = True
        return -1

    for v in range(n):
        if match[v] != -1:
            continue
        # cheap greedy step before the full search
        for to in adj[v]:
            if match[to] == -1:
                match[v] = to
                match[to] = v
                break
    for v in range(n):
        if match[v] != -1:
            continue
        finish = find_path(v)
        if finish == -1:
            continue
        while finish != -1:
            prev = parent[finish]
            nxt = match[prev]
            match[finish] = prev
            match[prev] = finish
            finish = nxt
    return sorted(_norm(v, match[v]) for v in range(n) if match[v] > v)


@dataclass
class MatchingCertificate:
    """Tutte-Berge witness that no perfect matching exists: a separator S
    with more odd components in G - S than |S|."""

    separator: list[int]
    odd_components: list[list[int]]


def _matching_size_without(g: RotationGraph, drop: int) -> int:
    from .graphs import build_graph

    keep = [v for v in range(g.n) if v != drop]
    edges = [(u, v) for u, v in g.edges() if drop not in (u, v)]
    sub = build_graph(keep, edges)
    return len(max_matching(sub))


def perfect_matching(g: RotationGraph) -> list[Edge] | MatchingCertificate:
    """A perfect matching, or a Tutte-Berge separator certifying its absence.

    The separator comes from the Gallai-Edmonds decomposition: D is the set
    of vertices missed by some maximum matching (found by deletion probes),
    and S = N(D) - D achieves the full deficiency.
    """
    best = max_matching(g)
    if 2 * len(best) == g.n:
        return best
    size = len(best)
    inessential = [v for v in range(g.n) if _matching_size_without(g, v) == size]
    d_set = set(inessential)
    separator = sorted({w for v in d_set for w in g.adjacency[v]} - d_set)
    odd = _odd_components_without(g, separator)
    if len(odd) <= len(separator):  # pragma: no cover - theory guarantees otherwise
        raise AssertionError("Gallai-Edmonds separator failed to certify")
    return MatchingCertificate(separator, odd)


def _odd_components_without(g: RotationGraph, removed: list[int]) -> list[list[int]]:
    gone = set(removed)
    seen = set(gone)
    odd = []
    for s in range(g.n):
        if s in seen:
            continue
        stack, comp = [s], []
        seen.add(s)
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in g.adjacency[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(comp) % 2:
            odd.append(sorted(comp))
    return odd


# ------------------------------------------------------------------ budgeted searches


class _Budget:
    __slots__ = ("left",)

    def __init__(self, nodes: int):
        self.left = nodes

    def spend(self) -> bool:
        self.left -= 1
        return self.left >= 0


def hamiltonian_cycle(g: RotationGraph, budget: int = DEFAULT_BUDGET):
    """Exact backtracking search for a spanning cycle.

    Returns ("found", cycle), ("absent", None) when the search space was
    exhausted, or ("unknown", None) when the node budget ran out first.
    """
    n = g.n
    if n < 3 or any(g.degree(v) < 2 for v in range(n)) or len(connected_components(g)) > 1:
        return ("absent", None)
    adj = [sorted(g.adjacency[v]) for v in range(n)]
    visited = [False] * n
    path = [0]
    visited[0] = True
    tracker = _Budget(budget)

    def extend() -> str:
        if not tracker.spend():
            return "unknown"
        v = path[-1]
        if len(path) == n:
            return "found" if 0 in g.adjacency[v] else "miss"
        for w in adj[v]:
            if visited[w]:
                continue
            visited[w] = True
            path.append(w)
            res = extend()
            if res in ("found", "unknown"):
                return res
            path.pop()
            visited[w] = False
        return "miss"

    res = extend()
    if res == "found":
        return ("found", list(path))
    return ("unknown", None) if res == "unknown" else ("absent", None)


class _ParityDSU:
    """Union-find tracking parity of the path to the root, with undo."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.parity = [0] * n
        self.size = [1] * n
        self.log: list[tuple[int, int]] = []

    def find(self, v: int) -> tuple[int, int]:
        par = 0
        while self.parent[v] != v:
            par ^= self.parity[v]
            v = self.parent[v]
        return v, par

    def union(self, u: int, v: int) -> bool:
        """Join with odd parity between u and v; False if it closes an odd cycle."""
        ru, pu = self.find(u)
        rv, pv = self.find(v)
        if ru == rv:
            return pu != pv
        if self.size[ru] < self.size[rv]:
            ru, rv = rv, ru
            pu, pv = pv, pu
        self.log.append((rv, ru))
        self.parent[rv] = ru
        self.parity[rv] = pu ^ pv ^ 1
        self.size[ru] += self.size[rv]
        return True

    def mark(self) -> int:
        return len(self.log)

    def rollback(self, mark: int) -> None:
        while len(self.log) > mark:
            rv, ru = self.log.pop()
            self.size[ru] -= self.size[rv]
            self.parent[rv] = rv
            self.parity[rv] = 0


def even_two_factor(g: RotationGraph, budget: int = DEFAULT_BUDGET):
    """Spanning 2-regular subgraph with all cycles even, searched exactly.

    Same result/budget convention as hamiltonian_cycle. Parity union-find
    prunes any branch that would close an odd cycle, so a completed
    assignment is automatically a union of even cycles.
    """
    n = g.n
    if n == 0:
        return ("absent", None)
    if any(g.degree(v) < 2 for v in range(n)):
        return ("absent", None)
    edges = g.edges()
    m = len(edges)
    incident: list[list[int]] = [[] for _ in range(n)]
    for i, (u, v) in enumerate(edges):
        incident[u].append(i)
        incident[v].append(i)
    chosen_deg = [0] * n
    undecided = [len(incident[v]) for v in range(n)]
    take = [False] * m
    dsu = _ParityDSU(n)
    tracker = _Budget(budget)

    def feasible(v: int) -> bool:
        return chosen_deg[v] <= 2 and chosen_deg[v] + undecided[v] >= 2

    def solve(i: int) -> str:
        if not tracker.spend():
            return "unknown"
        if i == m:
            return "found" if all(d == 2 for d in chosen_deg) else "miss"
        u, v = edges[i]
        undecided[u] -= 1
        undecided[v] -= 1
        try:
            if chosen_deg[u] < 2 and chosen_deg[v] < 2:
                mark = dsu.mark()
                if dsu.union(u, v):
                    chosen_deg[u] += 1
                    chosen_deg[v] += 1
                    take[i] = True
                    if feasible(u) and feasible(v):
                        res = solve(i + 1)
                        if res in ("found", "unknown"):
                            return res
                    take[i] = False
                    chosen_deg[u] -= 1
                    chosen_deg[v] -= 1
                dsu.rollback(mark)
            if feasible(u) and feasible(v):
                res = solve(i + 1)
                if res in ("found", "unknown"):
                    return res
            return "miss"
        finally:
            undecided[u] += 1
            undecided[v] += 1

    res = solve(0)
    if res == "found":
        return ("found", sorted(e for i, e in enumerate(edges) if take[i]))
    return ("unknown", None) if res == "unknown" else ("absent", None)


# ------------------------------------------------------------------ plan dispatcher


def _cycles_of_two_regular(edges: list[Edge]) -> list[list[int]]:
    adj: dict[int, list[int]] = {}
    for u, v in edges:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    seen: set[int] = set()
    cycles = []
    for s in sorted(adj):
        if s in seen:
            continue
        cyc = [s]
        seen.add(s)
        prev, cur = -1, s
        while True:
            options = [w for w in sorted(adj[cur]) if w != prev]
            nxt = options[0] if options else prev
            if nxt == s:
                break
            cyc.append(nxt)
            seen.add(nxt)
            prev, cur = cur, nxt
        cycles.append(cyc)
    return cycles


def _without_edges(g: RotationGraph, drop) -> RotationGraph:
    from .graphs import build_graph

    gone = set(drop)
    edges = [e for e in g.edges() if e not in gone]
    return build_graph(list(range(g.n)), edges)


def circular_plan(g: RotationGraph, budget: int = DEFAULT_BUDGET) -> DecompositionPlan:
    """Decompose a regular graph for the circular layout, or reject.

    Raises NoPerfectMatching / NoHamiltonianOrEvenFactor when the graph
    provably has no circular drawing of this kind, and
    SearchBudgetExceeded when the degree-2-mod-4 searches ran out undecided.
    """
    prof = classify(g)
    if prof.regular_degree is None:
        raise NotEvenRegular("circular layout requires a regular graph")
    d = prof.regular_degree
    if d == 0:
        return DecompositionPlan([], "div4", ["isolated vertices only"])

    if d % 2 == 1:
        pm = perfect_matching(g)
        if isinstance(pm, MatchingCertificate):
            raise NoPerfectMatching(
                f"odd-degree regular graph has no perfect matching (separator "
                f"{pm.separator} leaves {len(pm.odd_components)} odd components)")
        factors = [Factor(frozenset(pm), "one-regular", "perpendicular-matching")]
        rest = _without_edges(g, pm)
        factors += [Factor(frozenset(f), "two-regular") for f in two_factorize(rest)]
        return DecompositionPlan(factors, "odd")

    if d % 4 == 0:
        factors = [Factor(frozenset(f), "two-regular") for f in two_factorize(g)]
        return DecompositionPlan(factors, "div4")

    # d = 2 (mod 4)
    if d == 2:
        cycles = _cycles_of_two_regular(g.edges())
        if len(cycles) == 1:
            whole = Factor(frozenset(g.edges()), "two-regular", "on-circle-hamiltonian")
            plan = DecompositionPlan([whole], "two-mod-4-hamiltonian")
            plan.notes.append(f"hamiltonian order {cycles[0]}")
            return plan
        if all(len(c) % 2 == 0 for c in cycles):
            factor = Factor(frozenset(g.edges()), "two-regular", "perpendicular-bipartite")
            return DecompositionPlan([factor], "two-mod-4-bipartite")
        raise NoHamiltonianOrEvenFactor("disconnected 2-regular graph with an odd cycle")

    if prof.bipartite:
        parts = two_factorize(g)
        factors = [Factor(frozenset(parts[0]), "two-regular", "perpendicular-bipartite")]
        factors += [Factor(frozenset(f), "two-regular") for f in parts[1:]]
        return DecompositionPlan(factors, "two-mod-4-bipartite",
                                 ["bipartite shortcut: every 2-factor is even"])

    ham_status, cycle = hamiltonian_cycle(g, budget)
    if ham_status == "found":
        cyc_edges = sorted(_norm(cycle[i], cycle[(i + 1) % len(cycle)])
                           for i in range(len(cycle)))
        factors = [Factor(frozenset(cyc_edges), "two-regular", "on-circle-hamiltonian")]
        rest = _without_edges(g, cyc_edges)
        factors += [Factor(frozenset(f), "two-regular") for f in two_factorize(rest)]
        plan = DecompositionPlan(factors, "two-mod-4-hamiltonian")
        plan.notes.append(f"hamiltonian order {cycle}")
        return plan

    even_status, factor_edges = even_two_factor(g, budget)
    if even_status == "found":
        factors = [Factor(frozenset(factor_edges), "two-regular", "perpendicular-bipartite")]
        rest = _without_edges(g, factor_edges)
        factors += [Factor(frozenset(f), "two-regular") for f in two_factorize(rest)]
        return DecompositionPlan(factors, "two-mod-4-bipartite")

    if "unknown" in (ham_status, even_status):
        raise SearchBudgetExceeded(
            "budget exhausted before deciding hamiltonicity / even 2-factor")
    raise NoHamiltonianOrEvenFactor(
        "no hamiltonian cycle and no spanning even-cycle 2-factor")
