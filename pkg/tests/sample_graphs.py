"""Small standard graphs used across the test suite."""

from __future__ import annotations

import json
import os
import random

from lombardi.graphs import RotationGraph, build_graph, load_graph

CORPUS = os.path.join(os.path.dirname(__file__), "..", "corpus")


def corpus_path(name: str) -> str:
    return os.path.join(CORPUS, name + ".json")


def corpus_graph(name: str) -> RotationGraph:
    with open(corpus_path(name)) as f:
        return load_graph(f.read())


def cycle(n: int) -> RotationGraph:
    return build_graph(list(range(n)), [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> RotationGraph:
    return build_graph(list(range(n)),
                       [(i, j) for i in range(n) for j in range(i + 1, n)])


def complete_bipartite(a: int, b: int) -> RotationGraph:
    return build_graph(list(range(a + b)), [(i, a + j) for i in range(a) for j in range(b)])


def octahedron() -> RotationGraph:
    # K_{2,2,2}: pairs (0,1), (2,3), (4,5) are the non-edges
    edges = [(i, j) for i in range(6) for j in range(i + 1, 6)
             if {i, j} not in ({0, 1}, {2, 3}, {4, 5})]
    return build_graph(list(range(6)), edges)


def cube() -> RotationGraph:
    edges = []
    for v in range(8):
        for bit in range(3):
            w = v ^ (1 << bit)
            if v < w:
                edges.append((v, w))
    return build_graph(list(range(8)), edges)


def heawood() -> RotationGraph:
    # bipartite 3-regular: standard construction on 14 vertices
    edges = [(i, (i + 1) % 14) for i in range(14)]
    chords = {0: 5, 2: 7, 4: 9, 6: 11, 8: 13, 10: 1, 12: 3}
    edges += [(u, v) for u, v in chords.items()]
    return build_graph(list(range(14)), edges)


def maximal_outerplanar_fan(n: int) -> RotationGraph:
    # triangulated polygon: path 1..n-1 fanned from 0
    edges = [(0, i) for i in range(1, n)] + [(i, i + 1) for i in range(1, n - 1)]
    return build_graph(list(range(n)), edges)


def circulant(n: int, steps: list[int]) -> RotationGraph:
    edges = sorted({(min(i, (i + s) % n), max(i, (i + s) % n))
                    for i in range(n) for s in steps})
    return build_graph(list(range(n)), edges)


def random_graph(n: int, p: float, rng: random.Random) -> RotationGraph:
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return build_graph(list(range(n)), edges)


def random_regular(n: int, d: int, rng: random.Random) -> RotationGraph:
    """Random d-regular graph: circulant start, randomized by edge swaps."""
    if n * d % 2 or d >= n:
        raise ValueError("need n*d even and d < n")
    steps = list(range(1, d // 2 + 1))
    if d % 2:
        steps.append(n // 2)  # requires n even, guaranteed by parity above
    edges = {(min(i, (i + s) % n), max(i, (i + s) % n))
             for i in range(n) for s in steps}
    edges = sorted(edges)
    for _ in range(8 * len(edges)):
        (a, b), (c, e) = rng.sample(edges, 2)
        if len({a, b, c, e}) != 4:
            continue
        new1 = (min(a, c), max(a, c))
        new2 = (min(b, e), max(b, e))
        if new1 in edges or new2 in edges or new1 == new2:
            continue
        edges.remove((a, b))
        edges.remove((c, e))
        edges.extend([new1, new2])
        edges.sort()
    return build_graph(list(range(n)), edges)


def random_2degenerate(n: int, rng: random.Random) -> RotationGraph:
    """Grow a graph by attaching each new vertex to at most two earlier ones."""
    edges = []
    for v in range(1, n):
        k = rng.choice([1, 1, 2, 2, 2]) if v >= 2 else 1
        nbrs = rng.sample(range(v), min(k, v))
        edges += [(w, v) for w in nbrs]
    g = build_graph(list(range(n)), edges)
    # random but valid rotations
    rot = {}
    for v in range(g.n):
        order = list(g.adjacency[v])
        rng.shuffle(order)
        rot[str(v)] = order
    return build_graph(list(range(n)), edges, rot)
