"""
Ear-clipping triangulation of a polygon with holes.

Holes are first linked into the outer ring by bridge edges, giving one
weakly simple counterclockwise ring of vertex ids in which the two ends of
each bridge appear twice. Ears are then clipped greedily, always taking the
ear with the largest minimum angle, which keeps slivers out of the later
convex merge.
"""

import logging
import math

from dissection.environment import Environment
from errors import InvalidEnvironment
from geom import (
    EPS_COL,
    EPS_PT,
    Point,
    Segment,
    dist,
    normalized_orient,
    orient,
    segments_intersect,
)

logger = logging.getLogger(__name__)

Triangle = tuple[int, int, int]


# Boundary vertices get ids 0..n-1 in order, then each obstacle in turn
def vertex_table(env: Environment) -> tuple[list[Point], list[list[int]]]:
    vertices = list(env.boundary.vertices)
    holes = []
    for o in env.obstacles:
        start = len(vertices)
        vertices.extend(o.vertices)
        holes.append(list(range(start, len(vertices))))
    return vertices, holes


# Is direction v -> m inside the ring's interior angle at v (prev p, next n)?
def locally_inside(p: Point, v: Point, n: Point, m: Point) -> bool:
    if orient(p, v, n) >= 0:
        return orient(v, n, m) > 0 and orient(v, m, p) > 0
    return orient(v, n, m) > 0 or orient(v, m, p) > 0


def _ring_edges(ring: list[int]) -> list[tuple[int, int]]:
    return [(ring[i], ring[(i + 1) % len(ring)]) for i in range(len(ring))]


def bridge_holes(vertices: list[Point], outer: list[int], holes: list[list[int]]):
    ring = list(outer)

    # rightmost vertex of a hole: max x, then min y
    def rightmost(hole: list[int]) -> int:
        return max(hole, key=lambda i: (vertices[i].x, -vertices[i].y))

    order = sorted(
        range(len(holes)),
        key=lambda h: (-vertices[rightmost(holes[h])].x, vertices[rightmost(holes[h])].y, h),
    )
    pending = set(range(len(holes)))
    for h in order:
        hole = holes[h]
        m = rightmost(hole)
        pending.discard(h)
        blockers = _ring_edges(ring) + _ring_edges(hole)
        for other in sorted(pending):
            blockers += _ring_edges(holes[other])

        M = vertices[m]
        candidates = sorted(
            range(len(ring)), key=lambda i: (dist(vertices[ring[i]], M), ring[i], i)
        )
        for pos in candidates:
            v = ring[pos]
            V = vertices[v]
            prev = vertices[ring[pos - 1]]
            nxt = vertices[ring[(pos + 1) % len(ring)]]
            if not locally_inside(prev, V, nxt, M):
                continue
            bridge = Segment(M, V)
            if any(
                segments_intersect(bridge, Segment(vertices[a], vertices[b]))
                for a, b in blockers
                if a not in (m, v) and b not in (m, v)
            ):
                continue
            k = hole.index(m)
            ring = ring[: pos + 1] + hole[k:] + hole[:k] + [m, v] + ring[pos + 1 :]
            break
        else:
            raise InvalidEnvironment("cannot bridge obstacle {} to the boundary".format(h))
    return ring


def _min_angle(a: Point, b: Point, c: Point) -> float:
    def angle(p: Point, q: Point, r: Point) -> float:
        ux, uy = p.x - q.x, p.y - q.y
        vx, vy = r.x - q.x, r.y - q.y
        nu = math.hypot(ux, uy)
        nv = math.hypot(vx, vy)
        if nu <= EPS_PT or nv <= EPS_PT:
            return 0.0
        return math.acos(max(-1.0, min(1.0, (ux * vx + uy * vy) / (nu * nv))))

    return min(angle(c, a, b), angle(a, b, c), angle(b, c, a))


# Closed triangle test, counterclockwise (a, b, c)
def _in_triangle(q: Point, a: Point, b: Point, c: Point) -> bool:
    for p1, p2 in ((a, b), (b, c), (c, a)):
        length = dist(p1, p2)
        if length > 0 and orient(p1, p2, q) / length < -EPS_PT:
            return False
    return True


def clip_ears(vertices: list[Point], ring: list[int]) -> list[Triangle]:
    ring = list(ring)
    triangles: list[Triangle] = []
    while len(ring) > 3:
        n = len(ring)
        turns = [
            normalized_orient(
                vertices[ring[i - 1]], vertices[ring[i]], vertices[ring[(i + 1) % n]]
            )
            for i in range(n)
        ]
        # only non-convex ring vertices can sit inside an ear
        blockers = [ring[i] for i in range(n) if turns[i] <= EPS_COL]
        best = None
        best_score = -1.0
        for i in range(n):
            if turns[i] <= EPS_COL:
                continue
            p, c, nx = ring[i - 1], ring[i], ring[(i + 1) % n]
            P, C, N = vertices[p], vertices[c], vertices[nx]
            if any(
                _in_triangle(vertices[q], P, C, N)
                for q in blockers
                if q not in (p, c, nx)
            ):
                continue
            score = _min_angle(P, C, N)
            if best is None or score > best_score + 1e-9:
                best = i
                best_score = score
        if best is None:
            best = max(range(n), key=lambda i: (turns[i], -i))
            logger.warning(
                "no valid ear among %d ring vertices, clipping degenerate ear at %s",
                n,
                vertices[ring[best]],
            )
        p, c, nx = ring[best - 1], ring[best], ring[(best + 1) % n]
        if turns[best] > EPS_COL:
            triangles.append((p, c, nx))
        del ring[best]
    if normalized_orient(*(vertices[i] for i in ring)) > EPS_COL:
        triangles.append((ring[0], ring[1], ring[2]))
    else:
        logger.warning("dropping flat final triangle %s", ring)
    return triangles


def triangulate(env: Environment) -> tuple[list[Point], list[Triangle]]:
    vertices, holes = vertex_table(env)
    outer = list(range(len(env.boundary)))
    ring = bridge_holes(vertices, outer, holes)
    triangles = clip_ears(vertices, ring)
    logger.debug(
        "triangulated %s: %d vertices, ring of %d, %d triangles",
        env.name,
        len(vertices),
        len(ring),
        len(triangles),
    )
    return vertices, triangles
