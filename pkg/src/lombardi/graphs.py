"""Graph data model: rotation systems, degeneracy, structural profile.

Vertices are dense integers internally; document ids (ints or strings) are
kept in a name map for reporting. The rotation at a vertex is the ccw
cyclic order of its neighbors; when a document omits it, adjacency order
is used and the graph is flagged so layout engines can warn.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import InvalidRotation, MultiEdge, ParseError


@dataclass
class RotationGraph:
    n: int
    adjacency: list[set[int]]
    rotation: list[list[int]]
    labels: list[str]
    rotation_specified: bool = True
    name: str = ""

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in sorted(self.adjacency[u]) if u < v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def rotation_index(self, v: int, neighbor: int) -> int:
        return self.rotation[v].index(neighbor)

    def validate(self) -> None:
        for v in range(self.n):
            if v in self.adjacency[v]:
                raise MultiEdge(f"loop at vertex {self.labels[v]}")
            if sorted(self.rotation[v]) != sorted(self.adjacency[v]):
                raise InvalidRotation(
                    f"rotation at {self.labels[v]} is not a permutation of its neighbors")
            if len(set(self.rotation[v])) != len(self.rotation[v]):
                raise InvalidRotation(f"repeated neighbor in rotation at {self.labels[v]}")
        for u in range(self.n):
            for v in self.adjacency[u]:
                if u not in self.adjacency[v]:
                    raise ParseError("asymmetric adjacency")


def build_graph(vertices: list, edges: list[tuple], rotation: dict | None = None,
                name: str = "") -> RotationGraph:
    """Assemble and validate a RotationGraph from id-level data."""
    labels = [str(v) for v in vertices]
    if len(set(labels)) != len(labels):
        raise ParseError("duplicate vertex ids")
    index = {lab: i for i, lab in enumerate(labels)}
    n = len(labels)
    adjacency: list[set[int]] = [set() for _ in range(n)]
    for e in edges:
        if len(e) != 2:
            raise ParseError(f"edge must have two endpoints: {e!r}")
        su, sv = str(e[0]), str(e[1])
        if su not in index or sv not in index:
            raise ParseError(f"edge references unknown vertex: {e!r}")
        u, v = index[su], index[sv]
        if u == v:
            raise MultiEdge(f"loop at vertex {su}")
        if v in adjacency[u]:
            raise MultiEdge(f"repeated edge {su}-{sv}")
        adjacency[u].add(v)
        adjacency[v].add(u)
    rot: list[list[int]] = []
    if rotation:
        for lab in rotation:
            if str(lab) not in index:
                raise InvalidRotation(f"rotation given for unknown vertex {lab!r}")
        for i, lab in enumerate(labels):
            order = rotation.get(lab, rotation.get(vertices[i]))
            if order is None:
                rot.append(sorted(adjacency[i]))
                continue
            ids = []
            for nb in order:
                if str(nb) not in index:
                    raise InvalidRotation(f"rotation at {lab} lists non-vertex {nb!r}")
                ids.append(index[str(nb)])
            rot.append(ids)
        specified = True
    else:
        rot = [sorted(a) for a in adjacency]
        specified = False
    g = RotationGraph(n, adjacency, rot, labels, specified, name)
    g.validate()
    return g


def load_graph(text_or_obj) -> RotationGraph:
    """Parse a graph document (JSON text or already-decoded object)."""
    if isinstance(text_or_obj, str):
        try:
            obj = json.loads(text_or_obj)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: line {exc.lineno}: {exc.msg}") from exc
    else:
        obj = text_or_obj
    if not isinstance(obj, dict):
        raise ParseError("graph document must be an object")
    try:
        vertices = obj["vertices"]
        edges = obj["edges"]
    except KeyError as exc:
        raise ParseError(f"graph document missing field {exc}") from exc
    rotation = obj.get("rotation")
    return build_graph(vertices, edges, rotation, name=obj.get("name", ""))


def graph_to_document(g: RotationGraph) -> dict:
    doc = {
        "name": g.name,
        "vertices": list(g.labels),
        "edges": [[g.labels[u], g.labels[v]] for u, v in g.edges()],
    }
    if g.rotation_specified:
        doc["rotation"] = {g.labels[v]: [g.labels[w] for w in g.rotation[v]]
                          for v in range(g.n)}
    return doc


def degeneracy_order(g: RotationGraph) -> tuple[list[int], int]:
    """Greedy min-degree elimination order and the graph's degeneracy.

    Ties break toward the lowest vertex id, so the order is deterministic.
    """
    deg = [g.degree(v) for v in range(g.n)]
    removed = [False] * g.n
    order: list[int] = []
    d = 0
    for _ in range(g.n):
        v = min((x for x in range(g.n) if not removed[x]), key=lambda x: (deg[x], x))
        d = max(d, deg[v])
        removed[v] = True
        order.append(v)
        for w in g.adjacency[v]:
            if not removed[w]:
                deg[w] -= 1
    return order, d


def connected_components(g: RotationGraph) -> list[list[int]]:
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        stack, comp = [s], []
        seen[s] = True
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in g.adjacency[v]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def two_coloring(g: RotationGraph) -> list[int] | None:
    """A 2-coloring if the graph is bipartite, else None."""
    color = [-1] * g.n
    for s in range(g.n):
        if color[s] != -1:
            continue
        color[s] = 0
        stack = [s]
        while stack:
            v = stack.pop()
            for w in g.adjacency[v]:
                if color[w] == -1:
                    color[w] = 1 - color[v]
                    stack.append(w)
                elif color[w] == color[v]:
                    return None
    return color


def bridges(g: RotationGraph) -> list[tuple[int, int]]:
    """All bridges, via iterative DFS lowlinks."""
    disc = [-1] * g.n
    low = [0] * g.n
    parent_edge = [-1] * g.n
    out: list[tuple[int, int]] = []
    timer = 0
    for s in range(g.n):
        if disc[s] != -1:
            continue
        stack = [(s, iter(sorted(g.adjacency[s])))]
        disc[s] = low[s] = timer
        timer += 1
        while stack:
            v, it = stack[-1]
            advanced = False
            for w in it:
                if disc[w] == -1:
                    disc[w] = low[w] = timer
                    timer += 1
                    parent_edge[w] = v
                    stack.append((w, iter(sorted(g.adjacency[w]))))
                    advanced = True
                    break
                elif w != parent_edge[v]:
                    low[v] = min(low[v], disc[w])
            if not advanced:
                stack.pop()
                if stack:
                    u = stack[-1][0]
                    low[u] = min(low[u], low[v])
                    if low[v] > disc[u]:
                        out.append((min(u, v), max(u, v)))
    return sorted(out)


@dataclass
class GraphProfile:
    n: int
    m: int
    regular_degree: int | None
    bipartite: bool
    coloring: list[int] | None
    components: list[list[int]]
    bridgeless: bool
    degeneracy: int
    elimination_order: list[int] = field(default_factory=list)


def classify(g: RotationGraph) -> GraphProfile:
    degrees = {g.degree(v) for v in range(g.n)}
    regular = degrees.pop() if len(degrees) == 1 else None
    coloring = two_coloring(g)
    order, d = degeneracy_order(g)
    return GraphProfile(
        n=g.n,
        m=g.m,
        regular_degree=regular,
        bipartite=coloring is not None,
        coloring=coloring,
        components=connected_components(g),
        bridgeless=not bridges(g),
        degeneracy=d,
        elimination_order=order,
    )
