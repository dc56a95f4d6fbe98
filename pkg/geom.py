import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, NamedTuple, Sequence

from errors import EndpointMismatch

# Point coincidence tolerance in map units
EPS_PT = 1e-9
# Tolerance on normalized cross products (sine of the turn angle)
EPS_COL = 1e-9


class Point(NamedTuple):
    x: float
    y: float

    def __repr__(self) -> str:
        return "({}, {})".format(self.x, self.y)


def sub(a: Point, b: Point) -> Point:
    return Point(a.x - b.x, a.y - b.y)


def dot(u: Point, v: Point) -> float:
    return u.x * v.x + u.y * v.y


# z-component of u × v
def cross(u: Point, v: Point) -> float:
    return u.x * v.y - u.y * v.x


# (b - a) × (c - a); positive when a, b, c turn counterclockwise
def orient(a: Point, b: Point, c: Point) -> float:
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)


# orient() divided by the two edge lengths, so it reads as sin(turn angle)
def normalized_orient(a: Point, b: Point, c: Point) -> float:
    la = dist(a, b)
    lc = dist(b, c)
    if la <= EPS_PT or lc <= EPS_PT:
        return 0.0
    return orient(a, b, c) / (la * lc)


def dist(a: Point, b: Point) -> float:
    return math.hypot(a.x - b.x, a.y - b.y)


def close(a: Point, b: Point, eps: float = EPS_PT) -> bool:
    return dist(a, b) <= eps


def lerp(a: Point, b: Point, t: float) -> Point:
    return Point(a.x + (b.x - a.x) * t, a.y + (b.y - a.y) * t)


def is_finite(p: Point) -> bool:
    return math.isfinite(p.x) and math.isfinite(p.y)


@dataclass(frozen=True)
class Segment:
    a: Point
    b: Point

    # l(t) = a(1 - t) + bt
    def at(self, t: float) -> Point:
        return lerp(self.a, self.b, t)

    def length(self) -> float:
        return dist(self.a, self.b)

    def midpoint(self) -> Point:
        return self.at(0.5)


def distance_to_segment(q: Point, s: Segment) -> float:
    d = sub(s.b, s.a)
    l2 = dot(d, d)
    if l2 == 0.0:
        return dist(q, s.a)
    t = min(1.0, max(0.0, dot(sub(q, s.a), d) / l2))
    return dist(q, s.at(t))


class Location(Enum):
    INSIDE = 1
    BOUNDARY = 2
    OUTSIDE = 3


@dataclass(frozen=True)
class SimplePolygon:
    vertices: tuple[Point, ...]

    def __post_init__(self):
        assert len(self.vertices) >= 3, "polygon needs 3 vertices: {}".format(
            self.vertices
        )

    def __len__(self) -> int:
        return len(self.vertices)

    def edges(self) -> list[Segment]:
        n = len(self.vertices)
        return [Segment(self.vertices[i], self.vertices[(i + 1) % n]) for i in range(n)]

    # Shoelace formula; positive for counterclockwise rings
    def signed_area(self) -> float:
        total = 0.0
        for e in self.edges():
            total += cross(e.a, e.b)
        return total / 2

    def area(self) -> float:
        return abs(self.signed_area())

    def is_ccw(self) -> bool:
        return self.signed_area() > 0

    def oriented(self, ccw: bool) -> "SimplePolygon":
        if self.is_ccw() == ccw:
            return self
        return SimplePolygon(tuple(reversed(self.vertices)))

    def centroid(self) -> Point:
        a = self.signed_area()
        if abs(a) <= EPS_PT * EPS_PT:
            n = len(self.vertices)
            return Point(
                sum(v.x for v in self.vertices) / n, sum(v.y for v in self.vertices) / n
            )
        cx = cy = 0.0
        for e in self.edges():
            w = cross(e.a, e.b)
            cx += (e.a.x + e.b.x) * w
            cy += (e.a.y + e.b.y) * w
        return Point(cx / (6 * a), cy / (6 * a))

    def bbox(self) -> tuple[float, float, float, float]:
        xs = [v.x for v in self.vertices]
        ys = [v.y for v in self.vertices]
        return min(xs), min(ys), max(xs), max(ys)

    # Convex up to EPS_COL: every turn has the same sign or is flat
    def is_convex(self) -> bool:
        n = len(self.vertices)
        signs = set()
        for i in range(n):
            s = normalized_orient(
                self.vertices[i - 1], self.vertices[i], self.vertices[(i + 1) % n]
            )
            if s > EPS_COL:
                signs.add(1)
            elif s < -EPS_COL:
                signs.add(-1)
        return len(signs) <= 1


@dataclass(frozen=True)
class Polyline:
    waypoints: tuple[Point, ...]

    def __post_init__(self):
        assert len(self.waypoints) >= 1, "empty polyline"
        # Canonical form: consecutive duplicates merged, collinear points kept
        canon = [self.waypoints[0]]
        for p in self.waypoints[1:]:
            if not close(p, canon[-1]):
                canon.append(p)
        object.__setattr__(self, "waypoints", tuple(Point(*p) for p in canon))

    @classmethod
    def of(cls, points: Iterable[Sequence[float]]) -> "Polyline":
        return cls(tuple(Point(float(p[0]), float(p[1])) for p in points))

    @property
    def first(self) -> Point:
        return self.waypoints[0]

    @property
    def last(self) -> Point:
        return self.waypoints[-1]

    def __len__(self) -> int:
        return len(self.waypoints)

    def segments(self) -> list[Segment]:
        return [
            Segment(self.waypoints[i], self.waypoints[i + 1])
            for i in range(len(self.waypoints) - 1)
        ]

    def to_json(self) -> list[list[float]]:
        return [[p.x, p.y] for p in self.waypoints]

    @classmethod
    def from_json(cls, data) -> "Polyline":
        return cls.of(data)


def cost(p: Polyline) -> float:
    return sum(dist(a, b) for a, b in zip(p.waypoints, p.waypoints[1:]))


def concat(p1: Polyline, p2: Polyline) -> Polyline:
    if not close(p1.last, p2.first):
        raise EndpointMismatch(
            "polylines do not meet: {} vs {}".format(p1.last, p2.first)
        )
    return Polyline(p1.waypoints + p2.waypoints[1:])


def reverse(p: Polyline) -> Polyline:
    return Polyline(tuple(reversed(p.waypoints)))


# The part of p covering the first `fraction` of its arc length
def prefix(p: Polyline, fraction: float) -> Polyline:
    fraction = min(1.0, max(0.0, fraction))
    target = cost(p) * fraction
    out = [p.first]
    walked = 0.0
    for a, b in zip(p.waypoints, p.waypoints[1:]):
        d = dist(a, b)
        if walked + d >= target:
            out.append(lerp(a, b, (target - walked) / d))
            return Polyline(tuple(out))
        out.append(b)
        walked += d
    return Polyline(tuple(out))


# (ax, ay, bx, by, dx, dy, |d|^2) of a segment, d = b - a
SegData = tuple[float, float, float, float, float, float, float]


def seg_data(s: Segment) -> SegData:
    dx = s.b.x - s.a.x
    dy = s.b.y - s.a.y
    return (s.a.x, s.a.y, s.b.x, s.b.y, dx, dy, dx * dx + dy * dy)


def point_at(sd: SegData, t: float) -> tuple[float, float]:
    if t == 0.0:
        return sd[0], sd[1]
    if t == 1.0:
        return sd[2], sd[3]
    return sd[0] + sd[4] * t, sd[1] + sd[5] * t


def via_param(ax: float, ay: float, bx: float, by: float, sd: SegData) -> float:
    """
    Minimizes |a - x| + |x - b| over x = s(t), t in [0, 1], on raw
    coordinates.

    Reflecting a across the supporting line of s and intersecting a'b with
    that line gives the same parameter as the distance-weighted blend of the
    two projections, which also covers the case where a and b lie on
    opposite sides. The objective is convex in t, so clamping the
    unconstrained minimizer to [0, 1] is exact.
    """
    sx, sy, _, _, dx, dy, l2 = sd
    if l2 <= EPS_PT * EPS_PT:
        return 0.0
    length = math.sqrt(l2)
    rax, ray = ax - sx, ay - sy
    rbx, rby = bx - sx, by - sy
    # distances to the supporting line and projection parameters
    da = abs(dx * ray - dy * rax) / length
    db = abs(dx * rby - dy * rbx) / length
    ta = (rax * dx + ray * dy) / l2
    tb = (rbx * dx + rby * dy) / l2
    if da + db > EPS_PT:
        t = (db * ta + da * tb) / (da + db)
    else:
        # both on the line: any t between the projections is optimal
        t = (ta + tb) / 2
    return min(1.0, max(0.0, t))


def min_via_point(a: Point, b: Point, s: Segment) -> tuple[float, Point]:
    t = via_param(a.x, a.y, b.x, b.y, seg_data(s))
    if t == 0.0:
        return t, s.a
    if t == 1.0:
        return t, s.b
    return t, s.at(t)


def point_in_polygon(q: Point, poly: SimplePolygon) -> Location:
    for e in poly.edges():
        if distance_to_segment(q, e) <= EPS_PT:
            return Location.BOUNDARY
    # crossing number with a ray towards +x
    inside = False
    for e in poly.edges():
        a, b = e.a, e.b
        if (a.y > q.y) != (b.y > q.y):
            x = a.x + (q.y - a.y) * (b.x - a.x) / (b.y - a.y)
            if x > q.x:
                inside = not inside
    return Location.INSIDE if inside else Location.OUTSIDE


# Closed-segment intersection test with EPS_PT slack
def segments_intersect(p: Segment, q: Segment) -> bool:
    d1 = orient(q.a, q.b, p.a)
    d2 = orient(q.a, q.b, p.b)
    d3 = orient(p.a, p.b, q.a)
    d4 = orient(p.a, p.b, q.b)
    if ((d1 > 0 and d2 < 0) or (d1 < 0 and d2 > 0)) and (
        (d3 > 0 and d4 < 0) or (d3 < 0 and d4 > 0)
    ):
        return True
    return (
        distance_to_segment(p.a, q) <= EPS_PT
        or distance_to_segment(p.b, q) <= EPS_PT
        or distance_to_segment(q.a, p) <= EPS_PT
        or distance_to_segment(q.b, p) <= EPS_PT
    )
