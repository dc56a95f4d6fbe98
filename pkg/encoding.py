"""
CDT encodings: the homotopy-class keys of paths in a dissected free space.

An encoding <x0, rho, x1> pairs a path's endpoints with the rollback-free
sequence of cells it passes through. gamma_star maps a polyline to its
encoding; optimal_homotopic_path maps an encoding back to the shortest
polyline having it; theta composes the two (tightening a path in place).
"""

import logging
import math
from collections import deque
from dataclasses import dataclass
from typing import Optional, Sequence

from dissection import CellId, DissectionGraph
from errors import (
    EndpointMismatch,
    InvalidEncoding,
    JunctionMismatch,
    NotAdjacent,
    PathLeavesFreeSpace,
    UnknownCell,
)
from geom import (
    EPS_PT,
    Location,
    Point,
    Polyline,
    SegData,
    Segment,
    close,
    cross,
    dist,
    dot,
    lerp,
    point_at,
    point_in_polygon,
    seg_data,
    sub,
    via_param,
)

logger = logging.getLogger(__name__)

# Sweep-improvement threshold, scaled by the environment diameter
PATH_TOL_FACTOR = 1e-9
MAX_SWEEPS = 10_000
# Crossing slack when laying a straight segment across cutlines
LINE_SLACK = 1e-12

NodeSeq = tuple[CellId, ...]


@dataclass
class SolverStats:
    # optimal_homotopic_path invocations charged to this counter
    calls: int = 0
    # coordinate-descent sweeps over all of them
    sweeps: int = 0


@dataclass(frozen=True)
class Encoding:
    start: Point
    seq: NodeSeq
    end: Point

    def to_json(self) -> dict:
        return {
            "start": [self.start.x, self.start.y],
            "seq": list(self.seq),
            "end": [self.end.x, self.end.y],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Encoding":
        try:
            return cls(
                Point(float(data["start"][0]), float(data["start"][1])),
                tuple(int(c) for c in data["seq"]),
                Point(float(data["end"][0]), float(data["end"][1])),
            )
        except (KeyError, IndexError, TypeError, ValueError) as e:
            raise InvalidEncoding("malformed encoding JSON {}: {}".format(data, e))


# Free reduction: a cell equal to the one two steps back closes a rollback
def rbf(s: Sequence[CellId]) -> NodeSeq:
    stack: list[CellId] = []
    for c in s:
        if stack and stack[-1] == c:
            continue
        if len(stack) >= 2 and stack[-2] == c:
            stack.pop()
        else:
            stack.append(c)
    return tuple(stack)


def seq_inverse(s: NodeSeq) -> NodeSeq:
    return tuple(reversed(s))


def has_repeats(s: NodeSeq) -> bool:
    return len(set(s)) != len(s)


def seq_product(s1: NodeSeq, s2: NodeSeq) -> NodeSeq:
    if not s1 or not s2 or s1[-1] != s2[0]:
        raise JunctionMismatch(
            "sequences do not meet: {} * {}".format(list(s1), list(s2))
        )
    return tuple(s1) + tuple(s2[1:])


def encoding_product(
    e1: Encoding, e2: Encoding, g: Optional[DissectionGraph] = None
) -> Encoding:
    if not close(e1.end, e2.start):
        raise EndpointMismatch(
            "encodings do not meet: {} vs {}".format(e1.end, e2.start)
        )
    s1, s2 = e1.seq, e2.seq
    if s1[-1] != s2[0]:
        # the junction point sits on the cutline between the two cells
        if g is not None and not g.adjacent(s1[-1], s2[0]):
            raise JunctionMismatch(
                "junction cells {} and {} are not adjacent".format(s1[-1], s2[0])
            )
        s2 = (s1[-1],) + s2
    return Encoding(e1.start, rbf(seq_product(s1, s2)), e2.end)


def _segment_events(a: Point, b: Point, g: DissectionGraph) -> list[float]:
    d = sub(b, a)
    length = dist(a, b)
    tol = EPS_PT / length
    ts = [0.0, 1.0]
    for l in g.cutlines:
        c0, c1 = l.segment.a, l.segment.b
        e = sub(c1, c0)
        denom = cross(d, e)
        w = sub(c0, a)
        if abs(denom) > EPS_PT * length * l.segment.length():
            t = cross(w, e) / denom
            u = cross(w, d) / denom
            ut = EPS_PT / l.segment.length()
            if -tol <= t <= 1 + tol and -ut <= u <= 1 + ut:
                ts.append(min(1.0, max(0.0, t)))
        elif abs(cross(w, d)) <= EPS_PT * length:
            # collinear: the overlap's ends are events
            for p in (c0, c1):
                t = dot(sub(p, a), d) / (length * length)
                if 0.0 <= t <= 1.0:
                    ts.append(t)
    ts.sort()
    out = [ts[0]]
    for t in ts[1:]:
        if t - out[-1] > tol:
            out.append(t)
    if out[-1] != 1.0:
        out[-1] = 1.0
    return out


def _classify(
    g: DissectionGraph, q: Point, current: Optional[CellId]
) -> Optional[CellId]:
    boundary = []
    for c in g.cells:
        loc = point_in_polygon(q, c.polygon)
        if loc == Location.INSIDE:
            return c.id
        if loc == Location.BOUNDARY:
            boundary.append(c.id)
    if not boundary:
        return None
    if current in boundary:
        logger.debug("path runs along the boundary of cell %s at %s", current, q)
        return current
    return boundary[0]


# Shortest walk from a to b through the cells around point q
def _fan_bridge(g: DissectionGraph, a: CellId, b: CellId, q: Point) -> list[CellId]:
    fan = set(g.cells_at(q)) | {a, b}
    prev = {a: a}
    queue = deque([a])
    while queue:
        c = queue.popleft()
        if c == b:
            break
        for n in g.neighbors(c):
            if n in fan and n not in prev:
                prev[n] = c
                queue.append(n)
    if b not in prev:
        raise PathLeavesFreeSpace(
            "cannot connect cells {} and {} around {}".format(a, b, q)
        )
    walk = [b]
    while walk[-1] != a:
        walk.append(prev[walk[-1]])
    return list(reversed(walk))


def gamma(g: DissectionGraph, p: Polyline) -> tuple[Point, NodeSeq, Point]:
    seq: list[CellId] = []

    def push(c: CellId, at: Point):
        if not seq:
            seq.append(c)
        elif seq[-1] != c:
            if g.adjacent(seq[-1], c):
                seq.append(c)
            else:
                seq.extend(_fan_bridge(g, seq[-1], c, at)[1:])

    push(g.locate(p.first), p.first)
    for s in p.segments():
        ts = _segment_events(s.a, s.b, g)
        for t0, t1 in zip(ts, ts[1:]):
            q0, q1 = s.at(t0), s.at(t1)
            c = _classify(g, lerp(q0, q1, 0.5), seq[-1])
            if c is None or not (g.contains(c, q0) and g.contains(c, q1)):
                raise PathLeavesFreeSpace(
                    "segment {} -> {} leaves free space between {} and {}".format(
                        s.a, s.b, q0, q1
                    )
                )
            push(c, q0)
    push(g.locate(p.last), p.last)
    return p.first, tuple(seq), p.last


def gamma_star(g: DissectionGraph, p: Polyline) -> Encoding:
    start, seq, end = gamma(g, p)
    return Encoding(start, rbf(seq), end)


def cutline_segments(g: DissectionGraph, seq: NodeSeq) -> list[Segment]:
    try:
        return [g.cutline_between(a, b).segment for a, b in zip(seq, seq[1:])]
    except (NotAdjacent, UnknownCell) as e:
        raise InvalidEncoding("sequence {} is not a walk: {}".format(list(seq), e))


def _length(xs: list[float], ys: list[float]) -> float:
    return sum(
        math.hypot(xs[i + 1] - xs[i], ys[i + 1] - ys[i]) for i in range(len(xs) - 1)
    )


# (first, last, shared vertex, parameter of that vertex on each cutline)
Fan = tuple[int, int, Point, list[float]]


def _fans(segs: list[Segment]) -> list[Fan]:
    """Maximal runs of two or more consecutive cutlines sharing an endpoint."""
    runs = []
    n = len(segs)
    for i in range(n):
        for v in (segs[i].a, segs[i].b):
            if i > 0 and v in (segs[i - 1].a, segs[i - 1].b):
                continue
            j = i
            while j + 1 < n and v in (segs[j + 1].a, segs[j + 1].b):
                j += 1
            if j > i:
                params = [0.0 if segs[m].a == v else 1.0 for m in range(i, j + 1)]
                runs.append((i, j, v, params))
    return runs


def _line_params(
    px: float,
    py: float,
    qx: float,
    qy: float,
    data: list[SegData],
    lo: int,
    hi: int,
) -> Optional[list[float]]:
    # Parameters where the segment pq crosses cutlines lo..hi, or None unless
    # it crosses every one of them, in order.
    dx, dy = qx - px, qy - py
    us = []
    last = -LINE_SLACK
    for m in range(lo, hi + 1):
        ax, ay, _, _, ex, ey, _ = data[m]
        denom = dx * ey - dy * ex
        if denom == 0.0:
            return None
        wx, wy = ax - px, ay - py
        s = (wx * ey - wy * ex) / denom
        u = (wx * dy - wy * dx) / denom
        if s < last - LINE_SLACK or s > 1.0 + LINE_SLACK:
            return None
        if u < -LINE_SLACK or u > 1.0 + LINE_SLACK:
            return None
        last = s
        us.append(min(1.0, max(0.0, u)))
    return us


def _place(
    xs: list[float],
    ys: list[float],
    ts: list[float],
    data: list[SegData],
    lo: int,
    params: list[float],
):
    for m, t in zip(range(lo, lo + len(params)), params):
        ts[m] = t
        xs[m + 1], ys[m + 1] = point_at(data[m], t)


def _settle_fans(
    xs: list[float],
    ys: list[float],
    ts: list[float],
    data: list[SegData],
    fans: list[Fan],
):
    """
    Single-coordinate moves crawl when the waypoints of a fan crowd its
    shared vertex. Each fan is either snapped onto the vertex or laid on the
    straight segment between its neighbors, whichever is shorter.
    """
    for i, j, v, params in fans:
        # xs[i] and xs[j + 2] hold the waypoints just outside the fan
        before = _length(xs[i : j + 3], ys[i : j + 3])
        best = before * (1 - 1e-15)
        choice = None
        snapped = math.hypot(v.x - xs[i], v.y - ys[i]) + math.hypot(
            xs[j + 2] - v.x, ys[j + 2] - v.y
        )
        if snapped < best:
            best, choice = snapped, params
        straight = math.hypot(xs[j + 2] - xs[i], ys[j + 2] - ys[i])
        if straight < best:
            us = _line_params(xs[i], ys[i], xs[j + 2], ys[j + 2], data, i, j)
            if us is not None:
                choice = us
        if choice is not None:
            _place(xs, ys, ts, data, i, choice)


def _pull_taut(xs: list[float], ys: list[float], ts: list[float], data: list[SegData]):
    """
    Straightens the path between consecutive pinned points.

    The endpoints and every waypoint sitting on a cutline endpoint are pins.
    A stretch between two pins is replaced by the straight segment joining
    them whenever that segment crosses the cutlines in between, in order.
    """
    n = len(ts)
    pins = [0] + [k + 1 for k in range(n) if ts[k] == 0.0 or ts[k] == 1.0] + [n + 1]
    for p, q in zip(pins, pins[1:]):
        if q - p < 2:
            continue
        straight = math.hypot(xs[q] - xs[p], ys[q] - ys[p])
        if straight >= _length(xs[p : q + 1], ys[p : q + 1]):
            continue
        us = _line_params(xs[p], ys[p], xs[q], ys[q], data, p, q - 2)
        if us is not None:
            _place(xs, ys, ts, data, p, us)


def solve_cutlines(
    start: Point,
    end: Point,
    segs: list[Segment],
    tol: float,
    init: Optional[list[float]] = None,
    stats: Optional[SolverStats] = None,
) -> tuple[list[float], list[Point], float]:
    """
    Coordinate descent over one waypoint per cutline.

    Waypoints start at the cutline midpoints (or at `init`) and each sweep
    moves every waypoint, forward then backward, to the exact minimizer of
    its two adjacent legs, then settles fans and pulls pinned stretches
    taut. Stops once a sweep gains less than `tol`. Returns the cutline
    parameters, the waypoints and the path cost.
    """
    n = len(segs)
    data = [seg_data(s) for s in segs]
    ts = list(init) if init is not None and len(init) == n else [0.5] * n
    # index 0 is the start, k + 1 the waypoint on cutline k, n + 1 the end
    xs = [start.x] + [0.0] * n + [end.x]
    ys = [start.y] + [0.0] * n + [end.y]
    for k in range(n):
        xs[k + 1], ys[k + 1] = point_at(data[k], ts[k])
    sweeps = 0
    if n > 0:
        fans = _fans(segs)
        order = list(range(n)) + list(range(n - 1, -1, -1))
        best = _length(xs, ys)
        while True:
            sweeps += 1
            for k in order:
                t = via_param(xs[k], ys[k], xs[k + 2], ys[k + 2], data[k])
                ts[k] = t
                xs[k + 1], ys[k + 1] = point_at(data[k], t)
            _settle_fans(xs, ys, ts, data, fans)
            _pull_taut(xs, ys, ts, data)
            current = _length(xs, ys)
            if best - current < tol:
                break
            best = current
            if sweeps >= MAX_SWEEPS:
                logger.warning(
                    "coordinate descent hit %d sweeps over %d cutlines", sweeps, n
                )
                break
    if stats is not None:
        stats.sweeps += sweeps
    points = [Point(x, y) for x, y in zip(xs[1:-1], ys[1:-1])]
    return ts, points, _length(xs, ys)


def check_encoding(g: DissectionGraph, e: Encoding) -> list[Segment]:
    if not e.seq:
        raise InvalidEncoding("empty cell sequence")
    segs = cutline_segments(g, e.seq)
    if rbf(e.seq) != tuple(e.seq):
        raise InvalidEncoding("sequence {} has rollbacks".format(list(e.seq)))
    if not g.contains(e.seq[0], e.start):
        raise InvalidEncoding("{} is not in cell {}".format(e.start, e.seq[0]))
    if not g.contains(e.seq[-1], e.end):
        raise InvalidEncoding("{} is not in cell {}".format(e.end, e.seq[-1]))
    return segs


def optimal_homotopic_path(
    g: DissectionGraph,
    e: Encoding,
    init: Optional[list[float]] = None,
    stats: Optional[SolverStats] = None,
) -> Polyline:
    if stats is not None:
        stats.calls += 1
    segs = check_encoding(g, e)
    _, points, _ = solve_cutlines(
        e.start, e.end, segs, PATH_TOL_FACTOR * g.diameter(), init, stats
    )
    return Polyline(tuple([e.start] + points + [e.end]))


def theta(g: DissectionGraph, p: Polyline) -> Polyline:
    return optimal_homotopic_path(g, gamma_star(g, p))
