"""The drawing artifact: vertex positions, tangent frames, one arc per edge.

Edges store only their bulge; the arc endpoints are always the current
vertex positions, so endpoint incidence is true by construction. The
document form serializes every number with 17 significant digits, which
round-trips IEEE doubles bit-exactly and re-serializes byte-identically.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from .errors import ParseError
from .geometry import Arc, Direction, Point

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class VertexFrame:
    """Evenly spaced tangent slots: slot k points at base + 2*pi*k/degree."""

    base: float
    degree: int

    def slot(self, k: int) -> Direction:
        return Direction(self.base + TWO_PI * k / self.degree)

    def slots(self) -> list[Direction]:
        return [self.slot(k) for k in range(self.degree)]


@dataclass
class DrawnEdge:
    u: int
    v: int
    bulge: float
    group: str | None = None

    def key(self) -> tuple[int, int]:
        return (self.u, self.v) if self.u < self.v else (self.v, self.u)


@dataclass
class Drawing:
    positions: list[Point]
    edges: list[DrawnEdge]
    frames: dict[int, VertexFrame] = field(default_factory=dict)
    labels: list[str] | None = None

    @property
    def n(self) -> int:
        return len(self.positions)

    def arc_of(self, e: DrawnEdge) -> Arc:
        return Arc(self.positions[e.u], self.positions[e.v], e.bulge)

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in (e.u, e.v))

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels else str(v)

    def incident_tangent(self, e: DrawnEdge, v: int) -> Direction:
        """Tangent at vertex v into edge e, recomputed from the arc alone."""
        arc = self.arc_of(e)
        if v == e.u:
            return arc.travel_at_p()
        if v == e.v:
            return arc.travel_at_q().reversed()
        raise ValueError(f"vertex {v} is not an endpoint of edge {e.key()}")


def _fmt(x: float) -> str:
    if not math.isfinite(x):
        raise ValueError("drawing coordinates must be finite")
    return format(float(x), ".17g")


def dumps_drawing(d: Drawing) -> str:
    """Serialize to a deterministic document (17 significant digits)."""
    lines = ['{', '"kind": "lombardi-drawing",']
    labels = d.labels if d.labels else [str(i) for i in range(d.n)]
    lines.append('"labels": ' + json.dumps(labels) + ',')
    vparts = [f'[{_fmt(p.x)}, {_fmt(p.y)}]' for p in d.positions]
    lines.append('"vertices": [' + ', '.join(vparts) + '],')
    fparts = []
    for v in sorted(d.frames):
        fr = d.frames[v]
        fparts.append(f'[{v}, {_fmt(fr.base)}, {fr.degree}]')
    lines.append('"frames": [' + ', '.join(fparts) + '],')
    eparts = []
    for e in d.edges:
        grp = json.dumps(e.group) if e.group is not None else "null"
        eparts.append(f'[{e.u}, {e.v}, {_fmt(e.bulge)}, {grp}]')
    lines.append('"edges": [' + ',\n '.join(eparts) + ']')
    lines.append('}')
    return '\n'.join(lines) + '\n'


def loads_drawing(text: str) -> Drawing:
    """Parse a drawing document."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: line {exc.lineno}: {exc.msg}") from exc
    if not isinstance(obj, dict) or obj.get("kind") != "lombardi-drawing":
        raise ParseError("not a lombardi-drawing document")
    try:
        positions = [Point(float(x), float(y)) for x, y in obj["vertices"]]
        labels = [str(s) for s in obj["labels"]] if "labels" in obj else None
        frames = {int(v): VertexFrame(float(base), int(deg))
                  for v, base, deg in obj.get("frames", [])}
        edges = [DrawnEdge(int(u), int(v), float(b), g)
                 for u, v, b, g in obj["edges"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed drawing document: {exc}") from exc
    n = len(positions)
    for e in edges:
        if not (0 <= e.u < n and 0 <= e.v < n):
            raise ParseError(f"edge references unknown vertex: {e.key()}")
    return Drawing(positions, edges, frames, labels)
