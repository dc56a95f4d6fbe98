import logging
import math
import os
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Optional

from dissection import CellId, DissectionGraph, Environment, dissect
from encoding import (
    PATH_TOL_FACTOR,
    Encoding,
    NodeSeq,
    cutline_segments,
    optimal_homotopic_path,
    solve_cutlines,
)
from errors import (
    AnchorInObstacle,
    GoalInObstacle,
    InvalidTether,
    PointInObstacle,
    PointOutsideBoundary,
    TooManyEncodings,
)
from geom import Point, Polyline, cost, distance_to_segment

logger = logging.getLogger(__name__)

# Feasibility slack on the tether length, relative to it
EPS_ZETA_FACTOR = 1e-6
# Ternary search stops once the bracket spans less than this fraction of
# the tether length along the cutline
TERNARY_TOL_FACTOR = 1e-7
TERNARY_MAX_ITER = 200
# Upper bound on stored encodings; CDT_MAX_ENCODINGS overrides it
MAX_ENCODINGS = 1_000_000
MAX_ENCODINGS_ENV = "CDT_MAX_ENCODINGS"


def eps_zeta(zeta: float) -> float:
    return EPS_ZETA_FACTOR * zeta


def max_encodings_limit(override: Optional[int] = None) -> int:
    if override is not None:
        return override
    raw = os.environ.get(MAX_ENCODINGS_ENV)
    if raw:
        try:
            return int(raw)
        except ValueError:
            raise InvalidTether("{} is not an integer: {}".format(MAX_ENCODINGS_ENV, raw))
    return MAX_ENCODINGS


@dataclass
class TcsIndex:
    # x⋆, the tether anchor
    anchor: Point
    # ζ, the tether length
    tether: float
    graph: DissectionGraph
    # P*_ζ(x⋆, x): cell -> rollback-free sequences from the anchor cell
    table: dict[CellId, set[NodeSeq]] = field(default_factory=dict)

    def sequences(self, c: CellId) -> list[NodeSeq]:
        return sorted(self.table.get(c, ()))

    def encoding_count(self) -> int:
        return sum(len(s) for s in self.table.values())

    def limit(self) -> float:
        return self.tether + eps_zeta(self.tether)

    def to_json(self) -> dict:
        return {
            "anchor": [self.anchor.x, self.anchor.y],
            "tether": self.tether,
            "cellCount": len(self.graph.cells),
            "encodingCount": self.encoding_count(),
            "map": self.graph.env.to_json(),
            "table": {
                str(c): [list(s) for s in self.sequences(c)]
                for c in sorted(self.table)
            },
        }

    @classmethod
    def from_json(cls, data: dict, graph: Optional[DissectionGraph] = None):
        if graph is None:
            graph = dissect(Environment.from_json(data["map"]))
        assert len(graph.cells) == data["cellCount"]
        table = {
            int(c): {tuple(s) for s in seqs} for c, seqs in data["table"].items()
        }
        return cls(
            Point(float(data["anchor"][0]), float(data["anchor"][1])),
            float(data["tether"]),
            graph,
            table,
        )


@dataclass
class ConfigSet:
    goal: Point
    # (taut configuration, its cost), cheapest first
    configs: list[tuple[Polyline, float]]
    # cell sequence of each configuration, same order
    seqs: list[NodeSeq]

    def to_json(self) -> dict:
        return {
            "goal": [self.goal.x, self.goal.y],
            "configs": [
                {"path": p.to_json(), "cost": c, "seq": list(s)}
                for (p, c), s in zip(self.configs, self.seqs)
            ],
        }

    @classmethod
    def from_json(cls, data: dict):
        rows = data["configs"]
        return cls(
            Point(float(data["goal"][0]), float(data["goal"][1])),
            [(Polyline.from_json(r["path"]), float(r["cost"])) for r in rows],
            [tuple(int(c) for c in r["seq"]) for r in rows],
        )


# f(t): taut cost from the anchor through s to the point l_c(t) on the last
# cutline of s. The returned function warm-starts from its previous call.
def cutline_cost_fn(
    g: DissectionGraph, anchor: Point, s: NodeSeq
) -> tuple[Callable[[float], float], float]:
    assert len(s) >= 2
    segs = cutline_segments(g, s)
    last = segs[-1]
    inner = segs[:-1]
    tol = PATH_TOL_FACTOR * g.diameter()
    warm: list[Optional[list[float]]] = [None]

    def f(t: float) -> float:
        ts, _, c = solve_cutlines(anchor, last.at(t), inner, tol, warm[0])
        warm[0] = ts
        return c

    return f, last.length()


def cutline_cost(g: DissectionGraph, anchor: Point, s: NodeSeq, t: float) -> float:
    f, _ = cutline_cost_fn(g, anchor, s)
    return f(t)


# lowerC: f(1/2) - c(l_c)/2, a lower bound of f over the whole cutline
def lower_c(g: DissectionGraph, anchor: Point, s: NodeSeq) -> float:
    f, length = cutline_cost_fn(g, anchor, s)
    return f(0.5) - length / 2


def encoding_validity(g: DissectionGraph, anchor: Point, zeta: float, s: NodeSeq) -> bool:
    """
    Does some point of the last cutline of s admit a taut configuration of
    class s no longer than the tether?

    f is Lipschitz in t with constant c(l_c), which decides most sequences
    from f(1/2) alone; the rest are settled by ternary search, which is
    exact because f is convex.
    """
    limit = zeta + eps_zeta(zeta)
    if distance_to_segment(anchor, cutline_segments(g, s)[-1]) > limit:
        return False
    f, length = cutline_cost_fn(g, anchor, s)
    c_mid = f(0.5)
    if c_mid - length / 2 > limit:
        return False
    if c_mid <= limit:
        return True
    c0 = f(0.0)
    c1 = f(1.0)
    if c0 <= limit or c1 <= limit:
        return True
    # Monotone on [0, 1] means the minimum sits at an endpoint. Ordered
    # endpoint costs only locate the minimum to one half, so the slope at
    # that end is checked as well.
    h = 1e-6
    if c0 <= c_mid <= c1 and f(h) >= c0:
        return False
    if c1 <= c_mid <= c0 and f(1.0 - h) >= c1:
        return False
    lo, hi = 0.0, 1.0
    for _ in range(TERNARY_MAX_ITER):
        if (hi - lo) * length < TERNARY_TOL_FACTOR * zeta:
            break
        m1 = lo + (hi - lo) / 3
        m2 = hi - (hi - lo) / 3
        c_m1 = f(m1)
        c_m2 = f(m2)
        if c_m1 <= limit or c_m2 <= limit:
            return True
        # the minimum lies in [lo, hi], within the bracket width of both
        if max(c_m1, c_m2) - length * (hi - lo) > limit:
            return False
        if c_m1 <= c_m2:
            hi = m2
        else:
            lo = m1
    return f((lo + hi) / 2) <= limit


def anchor_cell(g: DissectionGraph, anchor: Point) -> CellId:
    try:
        return g.locate(anchor)
    except (PointInObstacle, PointOutsideBoundary) as e:
        raise AnchorInObstacle("anchor {} is not in free space: {}".format(anchor, e))


def tcs_preprocess(
    g: DissectionGraph,
    anchor: Point,
    zeta: float,
    max_encodings: Optional[int] = None,
) -> TcsIndex:
    if not zeta > 0 or not math.isfinite(zeta):
        raise InvalidTether("tether length must be positive: {}".format(zeta))
    limit = max_encodings_limit(max_encodings)
    home = anchor_cell(g, anchor)
    table: dict[CellId, set[NodeSeq]] = {c.id: set() for c in g.cells}
    table[home].add((home,))
    count = 1
    queue = deque([(home,)])
    while queue:
        rho = queue.popleft()
        for n in g.neighbors(rho[-1]):
            # no immediate rollback
            if len(rho) >= 2 and rho[-2] == n:
                continue
            new = rho + (n,)
            if not encoding_validity(g, anchor, zeta, new):
                continue
            assert new not in table[n]
            table[n].add(new)
            queue.append(new)
            count += 1
            if count > limit:
                raise TooManyEncodings(
                    "more than {} encodings at tether {}; raise --max-encodings".format(
                        limit, zeta
                    )
                )
    logger.info(
        "tcs: %d encodings over %d cells (anchor %s, tether %s)",
        count,
        len(g.cells),
        anchor,
        zeta,
    )
    return TcsIndex(anchor, zeta, g, table)


def goal_cell(g: DissectionGraph, goal: Point) -> CellId:
    try:
        return g.locate(goal)
    except (PointInObstacle, PointOutsideBoundary) as e:
        raise GoalInObstacle("goal {} is not in free space: {}".format(goal, e))


def get_all_foc(idx: TcsIndex, goal: Point) -> ConfigSet:
    c = goal_cell(idx.graph, goal)
    found = []
    for s in idx.sequences(c):
        path = optimal_homotopic_path(idx.graph, Encoding(idx.anchor, s, goal))
        k = cost(path)
        if k <= idx.limit():
            found.append((path, k, s))
    found.sort(key=lambda r: (round(r[1], 9), r[2]))
    return ConfigSet(goal, [(p, k) for p, k, _ in found], [s for _, _, s in found])
