"""
Independent ground truth for the planners.

Nothing here shares code with the coordinate-descent solver or the
encoding tables: shortest homotopic paths come from the funnel algorithm,
global shortest paths from a visibility graph, and tethered classes from a
grid search keyed by ray-crossing words.
"""

import heapq
import itertools
import logging
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
import shapely

from dissection import DissectionGraph, Environment
from encoding import (
    Encoding,
    SolverStats,
    check_encoding,
    gamma_star,
    optimal_homotopic_path,
    rbf,
    seq_inverse,
    seq_product,
    theta,
)
from errors import NoPath, ResolutionTooCoarse
from geom import Point, Polyline, close, concat, cost, dist, orient, reverse
from planners import PlanResult, TIE_EPS, start_sequence, tour_configs
from tcs import TcsIndex, get_all_foc

logger = logging.getLogger(__name__)

# Free-space slack for visibility tests, relative to the map diameter
VISIBILITY_BUFFER = 1e-7
# Default grid pitch as a fraction of the map diameter
GRID_FRACTION = 1 / 200
GRID_SLACK = 0.1
# Shift applied to a ray that would pass through a map vertex
RAY_NUDGE = 1e-7


def triarea2(a: Point, b: Point, c: Point) -> float:
    return -orient(a, b, c)


def funnel_shortest(g: DissectionGraph, e: Encoding) -> Polyline:
    check_encoding(g, e)
    # (right, left) portal endpoints as seen walking along the sequence
    portals = [(e.start, e.start)]
    for a, b in zip(e.seq, e.seq[1:]):
        seg = g.cutline_between(a, b).segment
        c = g.cell(a).polygon.centroid()
        if orient(c, seg.a, seg.b) > 0:
            portals.append((seg.a, seg.b))
        else:
            portals.append((seg.b, seg.a))
    portals.append((e.end, e.end))

    pts = [e.start]
    apex = left = right = e.start
    apex_index = left_index = right_index = 0
    index = 1
    while index < len(portals):
        r, l = portals[index]

        # Update right vertex.
        if triarea2(apex, right, r) <= 0.0:
            if close(apex, right) or triarea2(apex, left, r) > 0.0:
                # Tighten the funnel.
                right = r
                right_index = index
            else:
                # Right over left: left becomes the apex, restart from it.
                pts.append(left)
                apex = left
                apex_index = left_index
                right = left = apex
                right_index = left_index = apex_index
                index = apex_index + 1
                continue

        # Update left vertex.
        if triarea2(apex, left, l) >= 0.0:
            if close(apex, left) or triarea2(apex, right, l) < 0.0:
                left = l
                left_index = index
            else:
                pts.append(right)
                apex = right
                apex_index = right_index
                right = left = apex
                right_index = left_index = apex_index
                index = apex_index + 1
                continue

        index += 1

    pts.append(e.end)
    return Polyline(tuple(pts))


def visibility_shortest(env: Environment, a: Point, b: Point) -> Polyline:
    free = env.free_space().buffer(VISIBILITY_BUFFER * env.diameter())
    shapely.prepare(free)
    for q in (a, b):
        if not free.covers(shapely.Point(q)):
            raise NoPath("{} is not in free space".format(q))
    if close(a, b):
        return Polyline((a,))

    nodes = [a, b] + list(env.boundary.vertices)
    for o in env.obstacles:
        nodes.extend(o.vertices)
    n = len(nodes)
    ii, jj = np.triu_indices(n, k=1)
    coords = np.array(nodes)
    lines = shapely.linestrings(np.stack([coords[ii], coords[jj]], axis=1))
    visible = shapely.covers(free, lines)

    adjacency: list[list[tuple[int, float]]] = [[] for _ in range(n)]
    for i, j, ok in zip(ii, jj, visible):
        if ok:
            d = dist(nodes[i], nodes[j])
            adjacency[i].append((j, d))
            adjacency[j].append((i, d))

    best = {0: 0.0}
    prev: dict[int, int] = {}
    queue = [(0.0, 0)]
    while queue:
        d, u = heapq.heappop(queue)
        if u == 1:
            break
        if d > best[u]:
            continue
        for v, w in adjacency[u]:
            nd = d + w
            if nd < best.get(v, math.inf):
                best[v] = nd
                prev[v] = u
                heapq.heappush(queue, (nd, v))
    if 1 not in best:
        raise NoPath("{} and {} are not connected".format(a, b))
    walk = [1]
    while walk[-1] != 0:
        walk.append(prev[walk[-1]])
    return Polyline(tuple(nodes[i] for i in reversed(walk)))


# (obstacle index, +1 for a crossing towards +x or -1)
Letter = tuple[int, int]


@dataclass(frozen=True)
class HSignature:
    word: tuple[Letter, ...] = ()

    def __str__(self) -> str:
        return "".join(
            "{}{}".format(i, "+" if s > 0 else "-") for i, s in self.word
        ) or "e"

    def extend(self, letters: list[Letter]) -> "HSignature":
        word = list(self.word)
        for i, s in letters:
            if word and word[-1] == (i, -s):
                word.pop()
            else:
                word.append((i, s))
        return HSignature(tuple(word))


# One downward vertical ray per obstacle, from a point inside it
def obstacle_rays(env: Environment) -> list[Point]:
    xs = [v.x for v in env.boundary.vertices]
    for o in env.obstacles:
        xs.extend(v.x for v in o.vertices)
    rays = []
    for o in env.obstacles:
        r = shapely.Polygon(o.vertices).representative_point()
        x, y = r.x, r.y
        while any(abs(x - v) <= 1e-12 for v in xs) or any(
            abs(x - p.x) <= 1e-12 for p in rays
        ):
            x += RAY_NUDGE
        rays.append(Point(x, y))
    return rays


def crossings(rays: list[Point], a: Point, b: Point) -> list[Letter]:
    hits = []
    for i, r in enumerate(rays):
        # half-open: an endpoint exactly on the ray line counts on the right
        if (a.x < r.x) != (b.x < r.x):
            y = a.y + (r.x - a.x) * (b.y - a.y) / (b.x - a.x)
            if y < r.y:
                s = (r.x - a.x) / (b.x - a.x)
                hits.append((s, (i, 1 if b.x > a.x else -1)))
    hits.sort()
    return [letter for _, letter in hits]


def h_signature(env: Environment, p: Polyline) -> HSignature:
    rays = obstacle_rays(env)
    h = HSignature()
    for a, b in zip(p.waypoints, p.waypoints[1:]):
        h = h.extend(crossings(rays, a, b))
    return h


GridNode = tuple[int, int]
GridState = tuple[GridNode, HSignature]


@dataclass
class GridHag:
    resolution: float
    # settled cost per (grid node, signature)
    nodes: dict[GridState, float] = field(default_factory=dict)
    obstacle_rays: list[Point] = field(default_factory=list)
    origin: Point = Point(0.0, 0.0)
    anchor: Point = Point(0.0, 0.0)
    pred: dict[GridState, Optional[GridState]] = field(default_factory=dict)
    free_nodes: set[GridNode] = field(default_factory=set)
    free: Optional[shapely.Polygon] = None

    def position(self, n: GridNode) -> Point:
        return Point(
            self.origin.x + n[0] * self.resolution,
            self.origin.y + n[1] * self.resolution,
        )

    def visible(self, a: Point, b: Point) -> bool:
        return bool(self.free.covers(shapely.LineString([a, b])))

    # Free grid nodes around q that see q, nearest first
    def snap(self, q: Point) -> list[GridNode]:
        i = int(math.floor((q.x - self.origin.x) / self.resolution))
        j = int(math.floor((q.y - self.origin.y) / self.resolution))
        around = [
            (i + di, j + dj)
            for di in (-1, 0, 1, 2)
            for dj in (-1, 0, 1, 2)
            if (i + di, j + dj) in self.free_nodes
        ]
        around.sort(key=lambda n: (dist(self.position(n), q), n))
        return [n for n in around if self.visible(q, self.position(n))]

    def representative(self, state: GridState, goal: Point) -> Polyline:
        walk = []
        s: Optional[GridState] = state
        while s is not None:
            walk.append(self.position(s[0]))
            s = self.pred[s]
        return Polyline(tuple([self.anchor] + list(reversed(walk)) + [goal]))


def _build_grid(env: Environment, resolution: float) -> GridHag:
    x0, y0, x1, y1 = env.bbox()
    nx = int(math.ceil((x1 - x0) / resolution)) + 1
    ny = int(math.ceil((y1 - y0) / resolution)) + 1
    free = env.free_space()
    shapely.prepare(free)
    gi, gj = np.meshgrid(np.arange(nx), np.arange(ny), indexing="ij")
    xs = x0 + gi.ravel() * resolution
    ys = y0 + gj.ravel() * resolution
    inside = shapely.covers(free, shapely.points(xs, ys))
    free_nodes = {
        (int(i), int(j)) for i, j, ok in zip(gi.ravel(), gj.ravel(), inside) if ok
    }
    return GridHag(
        resolution,
        obstacle_rays=obstacle_rays(env),
        origin=Point(x0, y0),
        free_nodes=free_nodes,
        free=free,
    )


def _grid_edges(hag: GridHag) -> dict[GridNode, list[tuple[GridNode, float]]]:
    steps = [(1, 0), (0, 1), (1, 1), (1, -1)]
    nodes = sorted(hag.free_nodes)
    pairs = [
        (n, (n[0] + di, n[1] + dj))
        for n in nodes
        for di, dj in steps
        if (n[0] + di, n[1] + dj) in hag.free_nodes
    ]
    edges: dict[GridNode, list[tuple[GridNode, float]]] = {n: [] for n in nodes}
    if not pairs:
        return edges
    coords = np.array(
        [[hag.position(a), hag.position(b)] for a, b in pairs], dtype=float
    )
    ok = shapely.covers(hag.free, shapely.linestrings(coords))
    for (a, b), keep in zip(pairs, ok):
        if keep:
            w = hag.resolution * (math.sqrt(2) if a[0] != b[0] and a[1] != b[1] else 1)
            edges[a].append((b, w))
            edges[b].append((a, w))
    return edges


def grid_hag_configs(
    env: Environment,
    anchor: Point,
    zeta: float,
    goal: Point,
    resolution: Optional[float] = None,
    slack: float = GRID_SLACK,
) -> list[tuple[HSignature, float, Polyline]]:
    """
    Tethered classes at `goal` found by Dijkstra over (grid node, signature)
    states grown from the anchor. Costs are grid lengths, so callers tighten
    representatives through theta before comparing them with the tether.
    """
    if resolution is None:
        resolution = env.diameter() * GRID_FRACTION
    hag = _build_grid(env, resolution)
    hag.anchor = anchor
    starts = hag.snap(anchor)
    ends = hag.snap(goal)
    if not starts or not ends:
        raise ResolutionTooCoarse(
            "resolution {} leaves the anchor or the goal without a free grid node".format(
                resolution
            )
        )
    edges = _grid_edges(hag)
    bound = zeta * (1 + slack)
    letters: dict[tuple[GridNode, GridNode], list[Letter]] = {}

    def step_letters(a: GridNode, b: GridNode) -> list[Letter]:
        if (a, b) not in letters:
            letters[(a, b)] = crossings(
                hag.obstacle_rays, hag.position(a), hag.position(b)
            )
        return letters[(a, b)]

    counter = itertools.count()
    queue: list = []
    s0 = starts[0]
    h0 = HSignature().extend(crossings(hag.obstacle_rays, anchor, hag.position(s0)))
    d0 = dist(anchor, hag.position(s0))
    hag.nodes[(s0, h0)] = d0
    hag.pred[(s0, h0)] = None
    heapq.heappush(queue, (d0, next(counter), (s0, h0)))
    settled = set()
    while queue:
        d, _, state = heapq.heappop(queue)
        if state in settled:
            continue
        settled.add(state)
        node, h = state
        for nxt, w in edges[node]:
            nd = d + w
            if nd > bound:
                continue
            hits = step_letters(node, nxt)
            ns = (nxt, h.extend(hits) if hits else h)
            if nd < hag.nodes.get(ns, math.inf):
                hag.nodes[ns] = nd
                hag.pred[ns] = state
                heapq.heappush(queue, (nd, next(counter), ns))

    best: dict[HSignature, tuple[float, GridState]] = {}
    for end in ends:
        tail = dist(hag.position(end), goal)
        for (node, h), d in hag.nodes.items():
            if node != end:
                continue
            hh = h.extend(crossings(hag.obstacle_rays, hag.position(end), goal))
            total = d + tail
            if total <= bound and total < best.get(hh, (math.inf, None))[0]:
                best[hh] = (total, (node, h))
    logger.debug(
        "grid hag: %d free nodes, %d states, %d classes at %s",
        len(hag.free_nodes),
        len(hag.nodes),
        len(best),
        goal,
    )
    return [
        (h, total, hag.representative(state, goal))
        for h, (total, state) in sorted(best.items(), key=lambda kv: (kv[1][0], str(kv[0])))
    ]


# Cell sequences of the grid classes that stay within the tether once taut
def grid_tethered_sequences(
    idx: TcsIndex,
    goal: Point,
    resolution: Optional[float] = None,
    slack: float = GRID_SLACK,
) -> set[tuple[int, ...]]:
    g = idx.graph
    found = set()
    for _, _, rep in grid_hag_configs(
        g.env, idx.anchor, idx.tether, goal, resolution, slack
    ):
        taut = theta(g, rep)
        if cost(taut) <= idx.limit():
            found.add(gamma_star(g, taut).seq)
    return found


def tpp_exhaustive(idx: TcsIndex, start_config: Polyline, goal: Point) -> float:
    configs = get_all_foc(idx, goal)
    best = math.inf
    for path, _ in configs.configs:
        best = min(best, cost(theta(idx.graph, concat(reverse(start_config), path))))
    return best


def tmv_exhaustive(
    idx: TcsIndex, start_config: Polyline, targets: list[Point]
) -> tuple[PlanResult, int]:
    """
    Tries every combination of goal configurations. Returns the best tour
    and the number of optimal-path solves spent on the start check and the
    legs.
    """
    stats = SolverStats()
    rho_s, _ = start_sequence(idx, start_config, stats)
    x_s = start_config.last
    sets = tour_configs(idx, list(targets))
    g = idx.graph
    best: Optional[PlanResult] = None
    for combo in itertools.product(*(s.seqs for s in sets)):
        loop = Polyline((x_s,))
        here, held = x_s, rho_s
        for conf, rho in zip(sets, combo):
            seq = rbf(seq_product(seq_inverse(held), rho))
            leg = optimal_homotopic_path(g, Encoding(here, seq, conf.goal), stats=stats)
            loop = concat(loop, leg)
            here, held = conf.goal, rho
        seq = rbf(seq_product(seq_inverse(held), rho_s))
        home = optimal_homotopic_path(g, Encoding(here, seq, x_s), stats=stats)
        loop = concat(loop, home)
        c = cost(loop)
        if best is None or c < best.cost - TIE_EPS:
            best = PlanResult(loop, c, gamma_star(g, concat(start_config, loop)).seq)
    assert best is not None
    return best, stats.calls
