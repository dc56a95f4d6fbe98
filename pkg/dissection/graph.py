import logging
from collections import deque
from dataclasses import dataclass
from typing import Optional

from dissection.environment import Environment
from dissection.triangulate import triangulate
from errors import (
    InvalidEnvironment,
    NotAdjacent,
    PointInObstacle,
    PointOutsideBoundary,
    UnknownCell,
)
from geom import (
    EPS_COL,
    Location,
    Point,
    Segment,
    SimplePolygon,
    dist,
    distance_to_segment,
    normalized_orient,
    point_in_polygon,
)

logger = logging.getLogger(__name__)

CellId = int
CutlineId = int


@dataclass(frozen=True)
class ConvexCell:
    id: CellId
    # Counterclockwise, convex up to EPS_COL
    polygon: SimplePolygon
    cutline_ids: tuple[CutlineId, ...]


@dataclass(frozen=True)
class Cutline:
    id: CutlineId
    # Endpoint with the smaller vertex id first
    segment: Segment
    # Incident cells, smaller id first
    cells: tuple[CellId, CellId]


def _convex_ccw(points: list[Point]) -> bool:
    n = len(points)
    return all(
        normalized_orient(points[i - 1], points[i], points[(i + 1) % n]) >= -EPS_COL
        for i in range(n)
    )


# Joins piece p and piece q across the diagonal {u, v}, keeping CCW order
def _merge(p: list[int], q: list[int], u: int, v: int) -> Optional[list[int]]:
    def directed(poly: list[int], a: int, b: int) -> Optional[int]:
        for i in range(len(poly)):
            if poly[i] == a and poly[(i + 1) % len(poly)] == b:
                return i
        return None

    x, y = u, v
    i = directed(p, x, y)
    if i is None:
        x, y = v, u
        i = directed(p, x, y)
    j = directed(q, y, x)
    if i is None or j is None:
        return None
    p_rot = p[i + 1 :] + p[: i + 1]
    q_rot = q[j + 1 :] + q[: j + 1]
    return p_rot + q_rot[1:-1]


class DissectionGraph:
    env: Environment
    cells: tuple[ConvexCell, ...]
    cutlines: tuple[Cutline, ...]
    vertices: list[Point]

    def __init__(
        self,
        env: Environment,
        cells: tuple[ConvexCell, ...],
        cutlines: tuple[Cutline, ...],
        vertices: list[Point],
    ):
        self.env = env
        self.cells = cells
        self.cutlines = cutlines
        self.vertices = vertices
        # cell -> neighbor -> cutline id
        self._adjacency: dict[CellId, dict[CellId, CutlineId]] = {
            c.id: {} for c in cells
        }
        for l in cutlines:
            a, b = l.cells
            self._adjacency[a][b] = l.id
            self._adjacency[b][a] = l.id
        self._diameter = env.diameter()

    def __len__(self) -> int:
        return len(self.cells)

    def diameter(self) -> float:
        return self._diameter

    def cell(self, c: CellId) -> ConvexCell:
        if not isinstance(c, int) or c < 0 or c >= len(self.cells):
            raise UnknownCell("no cell with id {}".format(c))
        return self.cells[c]

    def neighbors(self, c: CellId) -> list[CellId]:
        self.cell(c)
        return sorted(self._adjacency[c])

    def adjacent(self, a: CellId, b: CellId) -> bool:
        return b in self._adjacency.get(a, {})

    def cutline_between(self, a: CellId, b: CellId) -> Cutline:
        self.cell(a)
        self.cell(b)
        if b not in self._adjacency[a]:
            raise NotAdjacent("cells {} and {} share no cutline".format(a, b))
        return self.cutlines[self._adjacency[a][b]]

    def contains(self, c: CellId, q: Point) -> bool:
        return point_in_polygon(q, self.cells[c].polygon) != Location.OUTSIDE

    # All cells whose closed polygon holds q, by id
    def cells_at(self, q: Point) -> list[CellId]:
        return [c.id for c in self.cells if self.contains(c.id, q)]

    def locate(self, q: Point) -> CellId:
        if point_in_polygon(q, self.env.boundary) == Location.OUTSIDE:
            raise PointOutsideBoundary("{} is outside the map boundary".format(q))
        for i, o in enumerate(self.env.obstacles):
            if point_in_polygon(q, o) == Location.INSIDE:
                raise PointInObstacle("{} is inside obstacle {}".format(q, i))
        for c in self.cells:
            if self.contains(c.id, q):
                return c.id
        # rounding gap between cells: fall back to the nearest one
        best = min(
            self.cells,
            key=lambda c: min(distance_to_segment(q, e) for e in c.polygon.edges()),
        )
        logger.debug("%s fell between cells, snapped to cell %d", q, best.id)
        return best.id

    def to_json(self) -> dict:
        return {
            "name": self.env.name,
            "cells": [
                {
                    "id": c.id,
                    "vertices": [[p.x, p.y] for p in c.polygon.vertices],
                    "cutlines": list(c.cutline_ids),
                }
                for c in self.cells
            ],
            "cutlines": [
                {
                    "id": l.id,
                    "endpoints": [
                        [l.segment.a.x, l.segment.a.y],
                        [l.segment.b.x, l.segment.b.y],
                    ],
                    "cells": list(l.cells),
                }
                for l in self.cutlines
            ],
        }


def _join_collinear(
    vertices: list[Point], edges: list[tuple[int, int]]
) -> tuple[int, int]:
    if len(edges) == 1:
        return edges[0]
    degree: dict[int, int] = {}
    for a, b in edges:
        degree[a] = degree.get(a, 0) + 1
        degree[b] = degree.get(b, 0) + 1
    ends = sorted(v for v, d in degree.items() if d == 1)
    assert len(ends) == 2, "cells share a broken boundary: {}".format(edges)
    a, b = ends
    for v in degree:
        assert distance_to_segment(vertices[v], Segment(vertices[a], vertices[b])) < 1e-6
    return a, b


def dissect(env: Environment) -> DissectionGraph:
    vertices, triangles = triangulate(env)
    if not triangles:
        raise InvalidEnvironment("free space of {} has no area".format(env.name))

    edge_tris: dict[tuple[int, int], list[int]] = {}
    for t, tri in enumerate(triangles):
        for k in range(3):
            a, b = tri[k], tri[(k + 1) % 3]
            edge_tris.setdefault((min(a, b), max(a, b)), []).append(t)
    diagonals = [e for e, ts in edge_tris.items() if len(ts) == 2]
    assert all(len(ts) <= 2 for ts in edge_tris.values())

    # Hertel-Mehlhorn: drop diagonals whose removal keeps the piece convex,
    # longest first
    diagonals.sort(
        key=lambda e: (-round(dist(vertices[e[0]], vertices[e[1]]), 9), e)
    )
    piece_of = list(range(len(triangles)))
    pieces: dict[int, list[int]] = {t: list(tri) for t, tri in enumerate(triangles)}
    members: dict[int, list[int]] = {t: [t] for t in range(len(triangles))}
    kept = []
    for u, v in diagonals:
        t1, t2 = edge_tris[(u, v)]
        k1, k2 = piece_of[t1], piece_of[t2]
        assert k1 != k2
        merged = _merge(pieces[k1], pieces[k2], u, v)
        if merged is None or not _convex_ccw([vertices[i] for i in merged]):
            kept.append((u, v))
            continue
        keep, drop = min(k1, k2), max(k1, k2)
        pieces[keep] = merged
        del pieces[drop]
        for t in members.pop(drop):
            piece_of[t] = keep
            members[keep].append(t)

    cell_of_piece = {k: i for i, k in enumerate(sorted(pieces))}

    by_pair: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for u, v in kept:
        t1, t2 = edge_tris[(u, v)]
        a = cell_of_piece[piece_of[t1]]
        b = cell_of_piece[piece_of[t2]]
        by_pair.setdefault((min(a, b), max(a, b)), []).append((u, v))

    cutlines = []
    incident: dict[int, list[int]] = {i: [] for i in range(len(pieces))}
    for pair in sorted(by_pair):
        a, b = _join_collinear(vertices, by_pair[pair])
        cid = len(cutlines)
        cutlines.append(Cutline(cid, Segment(vertices[a], vertices[b]), pair))
        incident[pair[0]].append(cid)
        incident[pair[1]].append(cid)

    cells = []
    for k in sorted(pieces):
        i = cell_of_piece[k]
        ids = tuple(pieces[k])
        cells.append(
            ConvexCell(
                i,
                SimplePolygon(tuple(vertices[v] for v in ids)),
                tuple(incident[i]),
            )
        )

    g = DissectionGraph(env, tuple(cells), tuple(cutlines), vertices)
    seen = {0}
    queue = deque([0])
    while queue:
        c = queue.popleft()
        for n in g.neighbors(c):
            if n not in seen:
                seen.add(n)
                queue.append(n)
    if len(seen) != len(cells):
        raise InvalidEnvironment("free space of {} is disconnected".format(env.name))
    logger.info(
        "dissected %s: %d triangles, %d cells, %d cutlines",
        env.name,
        len(triangles),
        len(cells),
        len(cutlines),
    )
    return g


# Module-level spellings of the graph queries
def locate(g: DissectionGraph, q: Point) -> CellId:
    return g.locate(q)


def cutline_between(g: DissectionGraph, a: CellId, b: CellId) -> Cutline:
    return g.cutline_between(a, b)


def neighbors(g: DissectionGraph, a: CellId) -> list[CellId]:
    return g.neighbors(a)
