"""
Desk-scale benchmark harness: times preprocessing and queries of a task
suite on one map, repeating each stage and reporting median and mean.
"""

import logging
import time
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from dissection import DissectionGraph, Environment
from errors import InputError, InvalidTask
from geom import Point, Polyline
from planners import (
    TppQuery,
    tmv_plan_result,
    tpp_plan_result,
    utpp_plan_result,
    utpp_preprocess,
)
from tcs import get_all_foc, tcs_preprocess
from utils import interpret_json_point

logger = logging.getLogger(__name__)

DEFAULT_SEED = 42
DEFAULT_REPS = 20
KINDS = ("tcs", "foc", "tpp", "tmv", "utpp")


@dataclass
class TaskFile:
    kind: str
    anchor: Point
    # ζ; for utpp the relaxed bound ζ_eff, defaulted when absent
    tether: Optional[float] = None
    start_config: Optional[Polyline] = None
    goals: list[Point] = field(default_factory=list)
    # utpp only
    start: Optional[Point] = None
    # utpp only: random start/goal pairs drawn with the run's seed
    samples: int = 0

    @classmethod
    def from_json(cls, data: dict, env: Optional[Environment] = None) -> "TaskFile":
        if not isinstance(data, dict):
            raise InvalidTask("task must be an object: {}".format(data))
        kind = data.get("kind")
        if kind not in KINDS:
            raise InvalidTask("unknown task kind: {}".format(kind))
        if "anchor" not in data:
            raise InvalidTask("{} task without an anchor".format(kind))
        task = cls(kind, interpret_json_point(data["anchor"]))
        if data.get("tether") is not None:
            try:
                task.tether = float(data["tether"])
            except (TypeError, ValueError):
                raise InvalidTask("tether is not a number: {}".format(data["tether"]))
        if "startConfig" in data:
            task.start_config = Polyline(
                tuple(interpret_json_point(p) for p in data["startConfig"])
            )
        task.goals = [interpret_json_point(p) for p in data.get("goals", [])]
        if "start" in data:
            task.start = interpret_json_point(data["start"])
        task.samples = int(data.get("samples", 0))
        task.validate(env)
        return task

    def validate(self, env: Optional[Environment] = None):
        if self.kind != "utpp" and (self.tether is None or not self.tether > 0):
            raise InvalidTask("{} task needs a positive tether".format(self.kind))
        if self.kind in ("tpp", "tmv") and self.start_config is None:
            raise InvalidTask("{} task needs startConfig".format(self.kind))
        if self.kind in ("foc", "tpp", "tmv") and not self.goals:
            raise InvalidTask("{} task needs goals".format(self.kind))
        if self.kind == "tpp" and len(self.goals) != 1:
            raise InvalidTask("tpp task takes one goal, got {}".format(len(self.goals)))
        if self.kind == "utpp" and self.samples == 0:
            if self.start is None or len(self.goals) != 1:
                raise InvalidTask("utpp task needs start and one goal, or samples")
        if self.samples < 0:
            raise InvalidTask("samples must not be negative: {}".format(self.samples))
        if env is None:
            return
        x0, y0, x1, y1 = env.bbox()
        points = [self.anchor] + list(self.goals)
        if self.start is not None:
            points.append(self.start)
        if self.start_config is not None:
            points.extend(self.start_config.waypoints)
        for p in points:
            if not (x0 <= p.x <= x1 and y0 <= p.y <= y1):
                raise InvalidTask("{} lies outside the map bounds".format(p))

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind, "anchor": [self.anchor.x, self.anchor.y]}
        if self.tether is not None:
            out["tether"] = self.tether
        if self.start_config is not None:
            out["startConfig"] = self.start_config.to_json()
        if self.goals:
            out["goals"] = [[p.x, p.y] for p in self.goals]
        if self.start is not None:
            out["start"] = [self.start.x, self.start.y]
        if self.samples:
            out["samples"] = self.samples
        return out


def load_suite(data, env: Optional[Environment] = None) -> list[TaskFile]:
    if isinstance(data, dict):
        data = data.get("tasks")
    if not isinstance(data, list):
        raise InvalidTask("suite must be a list of tasks")
    return [TaskFile.from_json(t, env) for t in data]


@dataclass
class BenchReport:
    map_name: str
    reps: int
    seed: int
    rows: list[dict] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "map": self.map_name,
            "reps": self.reps,
            "seed": self.seed,
            "tasks": self.rows,
        }

    @classmethod
    def from_json(cls, data: dict):
        return cls(
            data["map"], int(data["reps"]), int(data["seed"]), list(data["tasks"])
        )

    def to_markdown(self) -> str:
        lines = [
            "| # | kind | encodings | preprocess ms (median / mean) "
            "| query us (median / mean) | cost |",
            "| --- | --- | --- | --- | --- | --- |",
        ]

        def cell(stat: Optional[dict]) -> str:
            if not stat:
                return "-"
            return "{:.3f} / {:.3f}".format(stat["median"], stat["mean"])

        for r in self.rows:
            c = r.get("cost")
            lines.append(
                "| {} | {} | {} | {} | {} | {} |".format(
                    r["task"],
                    r["kind"],
                    r["encodingCount"],
                    cell(r.get("preprocessMs")),
                    cell(r.get("queryUs")),
                    "-" if c is None else "{:.6f}".format(c),
                )
            )
        return "\n".join(lines)


def _timed(fn: Callable, reps: int, scale: float):
    times = []
    out = None
    for _ in range(reps):
        t0 = time.perf_counter()
        out = fn()
        times.append((time.perf_counter() - t0) * scale)
    arr = np.array(times)
    return out, {"median": float(np.median(arr)), "mean": float(np.mean(arr))}


def sample_free_points(
    g: DissectionGraph, n: int, rng: np.random.Generator
) -> list[Point]:
    x0, y0, x1, y1 = g.env.bbox()
    out: list[Point] = []
    while len(out) < n:
        p = Point(float(rng.uniform(x0, x1)), float(rng.uniform(y0, y1)))
        try:
            g.locate(p)
        except InputError:
            continue
        out.append(p)
    return out


def bench(
    g: DissectionGraph,
    tasks: list[TaskFile],
    reps: int = DEFAULT_REPS,
    seed: int = DEFAULT_SEED,
    timing: bool = True,
) -> BenchReport:
    if reps < 1:
        raise InvalidTask("reps must be at least 1: {}".format(reps))
    rng = np.random.default_rng(seed)
    report = BenchReport(g.env.name, reps, seed)
    for k, task in enumerate(tasks):
        row: dict = {"task": k, "kind": task.kind}
        if task.kind == "utpp":
            idx, pre = _timed(
                lambda: utpp_preprocess(g, task.anchor, task.tether), reps, 1e3
            )
        else:
            idx, pre = _timed(
                lambda: tcs_preprocess(g, task.anchor, task.tether), reps, 1e3
            )
        row["encodingCount"] = idx.encoding_count()
        row["preprocessMs"] = pre

        query: Optional[Callable] = None
        if task.kind == "foc":
            query = lambda: [len(get_all_foc(idx, x).configs) for x in task.goals]
        elif task.kind == "tpp":
            q = TppQuery(task.start_config, task.goals[0])
            query = lambda: tpp_plan_result(idx, q).cost
        elif task.kind == "tmv":
            query = lambda: tmv_plan_result(idx, task.start_config, task.goals)
        elif task.kind == "utpp":
            if task.samples:
                pts = sample_free_points(g, 2 * task.samples, rng)
                pairs = list(zip(pts[::2], pts[1::2]))
            else:
                pairs = [(task.start, task.goals[0])]
            query = lambda: float(
                np.mean([utpp_plan_result(idx, a, b).cost for a, b in pairs])
            )
        if query is not None:
            out, qt = _timed(query, reps, 1e6)
            row["queryUs"] = qt
            if task.kind == "foc":
                row["configCounts"] = out
            elif task.kind == "tmv":
                row["cost"] = out[0].cost
                row["calls"] = out[1]
            else:
                row["cost"] = out
        if not timing:
            row.pop("preprocessMs", None)
            row.pop("queryUs", None)
        logger.info("bench task %d: %s", k, row)
        report.rows.append(row)
    return report
