import heapq
import itertools
import logging
from collections import deque
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from dissection import CellId, DissectionGraph, Environment, dissect
from encoding import (
    Encoding,
    NodeSeq,
    SolverStats,
    gamma_star,
    has_repeats,
    optimal_homotopic_path,
    rbf,
    seq_inverse,
    seq_product,
    theta,
)
from errors import (
    InfeasibleStartConfig,
    InputError,
    InvalidTether,
    NoFeasiblePath,
    NoFeasibleTour,
    NoPath,
)
from geom import Point, Polyline, close, concat, cost, dist, prefix
from tcs import (
    ConfigSet,
    TcsIndex,
    anchor_cell,
    get_all_foc,
    goal_cell,
    lower_c,
)

logger = logging.getLogger(__name__)

# Candidates closer than this in cost are ordered by sequence
TIE_EPS = 1e-9


@dataclass(frozen=True)
class TppQuery:
    # ς_s, the current tether configuration from the anchor to the robot
    start_config: Polyline
    # x_g
    goal: Point


@dataclass
class PlanResult:
    path: Polyline
    cost: float
    # cell sequence of the path's encoding
    seq: NodeSeq

    def to_json(self) -> dict:
        return {"path": self.path.to_json(), "cost": self.cost, "seq": list(self.seq)}

    @classmethod
    def from_json(cls, data: dict):
        return cls(
            Polyline.from_json(data["path"]),
            float(data["cost"]),
            tuple(int(c) for c in data["seq"]),
        )


def _pick(best: Optional[PlanResult], path: Polyline, seq: NodeSeq) -> PlanResult:
    c = cost(path)
    if best is None or c < best.cost - TIE_EPS:
        return PlanResult(path, c, seq)
    if abs(c - best.cost) <= TIE_EPS and seq < best.seq:
        return PlanResult(path, c, seq)
    return best


# ρ_s of a feasible start configuration, with the cost of its taut form
def start_sequence(
    idx: TcsIndex, start_config: Polyline, stats: Optional[SolverStats] = None
) -> tuple[NodeSeq, float]:
    if not close(start_config.first, idx.anchor):
        raise InfeasibleStartConfig(
            "start configuration begins at {}, not at the anchor {}".format(
                start_config.first, idx.anchor
            )
        )
    try:
        e = gamma_star(idx.graph, start_config)
    except InputError as err:
        raise InfeasibleStartConfig("start configuration: {}".format(err))
    taut = cost(optimal_homotopic_path(idx.graph, e, stats=stats))
    if taut > idx.limit():
        raise InfeasibleStartConfig(
            "start configuration is {:.6f} long when taut, tether is {}".format(
                taut, idx.tether
            )
        )
    return e.seq, taut


def tpp_plan_result(idx: TcsIndex, q: TppQuery) -> PlanResult:
    rho_s, _ = start_sequence(idx, q.start_config)
    x_s = q.start_config.last
    configs = get_all_foc(idx, q.goal)
    best = None
    back = seq_inverse(rho_s)
    for rho_g in configs.seqs:
        seq = rbf(seq_product(back, rho_g))
        path = optimal_homotopic_path(idx.graph, Encoding(x_s, seq, q.goal))
        best = _pick(best, path, seq)
    if best is None:
        raise NoFeasiblePath(
            "no configuration at {} fits tether {}".format(q.goal, idx.tether)
        )
    return best


def tpp_plan(idx: TcsIndex, q: TppQuery) -> Polyline:
    return tpp_plan_result(idx, q).path


# g(t) = cost(Θ(ς_s * prefix(σ, t))) at evenly spaced t in [0, 1]
def tether_profile(
    idx: TcsIndex, start_config: Polyline, path: Polyline, samples: int = 101
) -> np.ndarray:
    ts = np.linspace(0.0, 1.0, samples)
    out = np.empty(samples)
    for i, t in enumerate(ts):
        moved = concat(start_config, prefix(path, float(t)))
        out[i] = cost(theta(idx.graph, moved))
    return out


@dataclass(order=True)
class TmvNode:
    # Queue order: cheapest, then deepest, then oldest
    key: tuple[float, int, int] = field(init=False, repr=False)
    # k, targets reached so far
    visited: int = field(compare=False)
    # home -> x_1 -> ... -> x_k, by value; stops at x_{k-1} while the out
    # leg is unsolved
    fixed_subpath: Polyline = field(compare=False)
    # encoding of ς*_k, the configuration held at x_k
    last_seq: NodeSeq = field(compare=False)
    # cost(fixed_subpath) + cost(return_leg), with lower bounds standing in
    # for legs not solved yet
    total_cost: float = field(compare=False)
    # Θ(ς̄*_k * ς_s): x_k back home
    return_leg: Optional[Polyline] = field(compare=False)
    counter: int = field(compare=False, default=0)
    # 0: both legs bounded, 1: out leg solved, 2: both legs solved
    stage: int = field(compare=False, default=2)
    # index of last_seq among the configurations at x_k
    choice: int = field(compare=False, default=0)
    # ς*_{k-1}, held before the out leg
    prev_seq: NodeSeq = field(compare=False, default=())
    # lower bound on the return leg
    home_bound: float = field(compare=False, default=0.0)
    # total_cost of the node this one extends
    parent_cost: float = field(compare=False, default=0.0)

    def __post_init__(self):
        self.key = (self.total_cost, -self.visited, self.counter)


class _Legs:
    """Memoized optimal legs between goal configurations."""

    def __init__(self, g: DissectionGraph, stats: SolverStats):
        self.g = g
        self.stats = stats
        self.cache: dict[tuple[Point, NodeSeq, NodeSeq, Point], Polyline] = {}

    # Θ(ς̄_a * ς_b) from x_a to x_b, configurations given by their sequences
    def leg(self, x_a: Point, rho_a: NodeSeq, rho_b: NodeSeq, x_b: Point) -> Polyline:
        key = (x_a, rho_a, rho_b, x_b)
        if key not in self.cache:
            seq = rbf(seq_product(seq_inverse(rho_a), rho_b))
            self.cache[key] = optimal_homotopic_path(
                self.g, Encoding(x_a, seq, x_b), stats=self.stats
            )
        return self.cache[key]


# No leg between taut configurations of costs c_a and c_b is shorter than the
# straight distance, nor than the cost gap, since ς_a * leg is homotopic to ς_b
def leg_bound(x_a: Point, c_a: float, x_b: Point, c_b: float) -> float:
    return max(dist(x_a, x_b), abs(c_b - c_a))


def tour_configs(idx: TcsIndex, targets: list[Point]) -> list[ConfigSet]:
    sets = []
    for k, x in enumerate(targets):
        configs = get_all_foc(idx, x)
        if not configs.configs:
            raise NoFeasibleTour(
                "target {} at {} has no configuration within tether {}".format(
                    k + 1, x, idx.tether
                )
            )
        sets.append(configs)
    return sets


def tmv_plan_result(
    idx: TcsIndex,
    start_config: Polyline,
    targets: list[Point],
    trace: Optional[list[tuple[float, float]]] = None,
) -> tuple[PlanResult, int]:
    """
    Best-first search over partial tours.

    A node fixes the configurations chosen at the first k targets; its key
    adds the cheapest way home from there, which never decreases along an
    edge, so the first complete node popped is an optimal tour.

    Legs are solved lazily. A new node is queued on lower bounds for its
    out and return legs and solves each one only when it reaches the front
    of the queue, so most configuration pairs are never solved. Returns the
    tour and the number of optimal-path solves spent on the start check and
    the legs.
    """
    stats = SolverStats()
    rho_s, c_s = start_sequence(idx, start_config, stats)
    x_s = start_config.last
    sets = tour_configs(idx, list(targets))
    legs = _Legs(idx.graph, stats)
    counter = itertools.count()

    def position(k: int) -> Point:
        return x_s if k == 0 else sets[k - 1].goal

    def held_cost(k: int, i: int) -> float:
        return c_s if k == 0 else sets[k - 1].configs[i][1]

    root = TmvNode(0, Polyline((x_s,)), rho_s, 0.0, Polyline((x_s,)), next(counter))
    queue = [root]
    while queue:
        node = heapq.heappop(queue)
        k = node.visited
        if node.stage == 0:
            out = legs.leg(position(k - 1), node.prev_seq, node.last_seq, position(k))
            fixed = concat(node.fixed_subpath, out)
            heapq.heappush(
                queue,
                replace(
                    node,
                    fixed_subpath=fixed,
                    total_cost=max(cost(fixed) + node.home_bound, node.parent_cost),
                    counter=next(counter),
                    stage=1,
                ),
            )
            continue
        if node.stage == 1:
            home = legs.leg(position(k), node.last_seq, rho_s, x_s)
            total = cost(node.fixed_subpath) + cost(home)
            if trace is not None:
                trace.append((node.parent_cost, total))
            if total < node.parent_cost - 1e-9:
                logger.warning(
                    "tmv edge lowers the key: %.12f -> %.12f", node.parent_cost, total
                )
            heapq.heappush(
                queue,
                replace(
                    node,
                    total_cost=total,
                    return_leg=home,
                    counter=next(counter),
                    stage=2,
                ),
            )
            continue
        if k == len(sets):
            assert node.return_leg is not None
            loop = concat(node.fixed_subpath, node.return_leg)
            seq = gamma_star(idx.graph, concat(start_config, loop)).seq
            return PlanResult(loop, cost(loop), seq), stats.calls
        x_k, c_k = position(k), held_cost(k, node.choice)
        x_next = position(k + 1)
        done = cost(node.fixed_subpath)
        for j, rho in enumerate(sets[k].seqs):
            c_next = held_cost(k + 1, j)
            home_bound = leg_bound(x_next, c_next, x_s, c_s)
            bound = done + leg_bound(x_k, c_k, x_next, c_next) + home_bound
            child = TmvNode(
                k + 1,
                node.fixed_subpath,
                rho,
                max(bound, node.total_cost),
                None,
                next(counter),
                stage=0,
                choice=j,
                prev_seq=node.last_seq,
                home_bound=home_bound,
                parent_cost=node.total_cost,
            )
            heapq.heappush(queue, child)
    raise NoFeasibleTour("no tour through {} targets".format(len(sets)))


def tmv_plan(idx: TcsIndex, start_config: Polyline, targets: list[Point]) -> Polyline:
    return tmv_plan_result(idx, start_config, targets)[0].path


@dataclass
class UtppIndex:
    anchor: Point
    # ζ_eff, the relaxed length bound
    zeta_eff: float
    graph: DissectionGraph
    # P^⊛: cell -> repeat-free sequences from the anchor cell
    table: dict[CellId, set[NodeSeq]] = field(default_factory=dict)

    def sequences(self, c: CellId) -> list[NodeSeq]:
        return sorted(self.table.get(c, ()))

    def encoding_count(self) -> int:
        return sum(len(s) for s in self.table.values())

    def to_json(self) -> dict:
        return {
            "anchor": [self.anchor.x, self.anchor.y],
            "zetaEff": self.zeta_eff,
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
        table = {
            int(c): {tuple(s) for s in seqs} for c, seqs in data["table"].items()
        }
        return cls(
            Point(float(data["anchor"][0]), float(data["anchor"][1])),
            float(data["zetaEff"]),
            graph,
            table,
        )


def utpp_preprocess(
    g: DissectionGraph, anchor: Point, zeta_eff: Optional[float] = None
) -> UtppIndex:
    if zeta_eff is None:
        zeta_eff = 2 * g.diameter()
    if not zeta_eff > 0:
        raise InvalidTether("zeta_eff must be positive: {}".format(zeta_eff))
    home = anchor_cell(g, anchor)
    table: dict[CellId, set[NodeSeq]] = {c.id: set() for c in g.cells}
    table[home].add((home,))
    queue = deque([(home,)])
    while queue:
        rho = queue.popleft()
        for n in g.neighbors(rho[-1]):
            if n in rho:
                continue
            new = rho + (n,)
            if lower_c(g, anchor, new) <= zeta_eff:
                table[n].add(new)
                queue.append(new)
    logger.info(
        "utpp: %d encodings over %d cells (zeta_eff %s)",
        sum(len(s) for s in table.values()),
        len(g.cells),
        zeta_eff,
    )
    return UtppIndex(anchor, zeta_eff, g, table)


def utpp_plan_result(idx: UtppIndex, start: Point, goal: Point) -> PlanResult:
    g = idx.graph
    from_seqs = idx.sequences(goal_cell(g, start))
    to_seqs = idx.sequences(goal_cell(g, goal))
    candidates = set()
    for rho_s in from_seqs:
        back = seq_inverse(rho_s)
        for rho_g in to_seqs:
            seq = rbf(seq_product(back, rho_g))
            # optimal paths never revisit a cell
            if not has_repeats(seq):
                candidates.add(seq)
    best = None
    for seq in sorted(candidates):
        path = optimal_homotopic_path(g, Encoding(start, seq, goal))
        best = _pick(best, path, seq)
    if best is None:
        raise NoPath(
            "no path from {} to {}; zeta_eff {} may be too small".format(
                start, goal, idx.zeta_eff
            )
        )
    return best


def utpp_plan(idx: UtppIndex, start: Point, goal: Point) -> Polyline:
    return utpp_plan_result(idx, start, goal).path
