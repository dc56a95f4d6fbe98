import json
import math
from dataclasses import dataclass, field
from typing import Sequence

import shapely

from errors import InvalidEnvironment
from geom import EPS_PT, Point, SimplePolygon, close, is_finite


def _ring(points: Sequence[Sequence[float]], what: str) -> list[Point]:
    ring = []
    for p in points:
        if len(p) != 2:
            raise InvalidEnvironment("{}: bad coordinate {}".format(what, p))
        q = Point(float(p[0]), float(p[1]))
        if not is_finite(q):
            raise InvalidEnvironment("{}: non-finite coordinate {}".format(what, p))
        if ring and close(ring[-1], q):
            continue
        ring.append(q)
    while len(ring) > 1 and close(ring[0], ring[-1]):
        ring.pop()
    if len(ring) < 3:
        raise InvalidEnvironment("{} needs at least 3 distinct vertices".format(what))
    return ring


@dataclass(frozen=True)
class Environment:
    # Outer boundary, counterclockwise
    boundary: SimplePolygon
    # Obstacles (holes), clockwise, strictly inside the boundary
    obstacles: tuple[SimplePolygon, ...] = field(default_factory=tuple)
    name: str = "map"

    @classmethod
    def create(
        cls,
        boundary: Sequence[Sequence[float]],
        obstacles: Sequence[Sequence[Sequence[float]]] = (),
        name: str = "map",
    ) -> "Environment":
        b = SimplePolygon(tuple(_ring(boundary, "boundary"))).oriented(ccw=True)
        obs = tuple(
            SimplePolygon(tuple(_ring(o, "obstacle {}".format(i)))).oriented(ccw=False)
            for i, o in enumerate(obstacles)
        )
        env = cls(b, obs, name)
        env.validate()
        return env

    @classmethod
    def from_json(cls, data: dict) -> "Environment":
        if "boundary" not in data:
            raise InvalidEnvironment("map JSON has no boundary")
        return cls.create(
            data["boundary"], data.get("obstacles", []), data.get("name", "map")
        )

    @classmethod
    def from_file(cls, filename: str) -> "Environment":
        try:
            with open(filename) as f:
                data = json.load(f)
        except (OSError, ValueError) as e:
            raise InvalidEnvironment("cannot read map {}: {}".format(filename, e))
        return cls.from_json(data)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "boundary": [[p.x, p.y] for p in self.boundary.vertices],
            "obstacles": [[[p.x, p.y] for p in o.vertices] for o in self.obstacles],
        }

    def validate(self):
        outer = shapely.Polygon(self.boundary.vertices)
        if not outer.is_valid:
            raise InvalidEnvironment(
                "boundary is not simple: {}".format(shapely.is_valid_reason(outer))
            )
        holes = []
        for i, o in enumerate(self.obstacles):
            hole = shapely.Polygon(o.vertices)
            if not hole.is_valid:
                raise InvalidEnvironment(
                    "obstacle {} is not simple: {}".format(
                        i, shapely.is_valid_reason(hole)
                    )
                )
            if not outer.contains(hole) or hole.distance(outer.exterior) <= EPS_PT:
                raise InvalidEnvironment(
                    "obstacle {} is not strictly inside the boundary".format(i)
                )
            for j, other in enumerate(holes):
                if hole.distance(other) <= EPS_PT:
                    raise InvalidEnvironment(
                        "obstacles {} and {} touch or overlap".format(j, i)
                    )
            holes.append(hole)

    # Free space X_free as a shapely polygon with holes
    def free_space(self) -> shapely.Polygon:
        return shapely.Polygon(
            self.boundary.vertices, [o.vertices for o in self.obstacles]
        )

    def free_area(self) -> float:
        return self.boundary.area() - sum(o.area() for o in self.obstacles)

    def bbox(self) -> tuple[float, float, float, float]:
        return self.boundary.bbox()

    # Bounding-box diagonal
    def diameter(self) -> float:
        x0, y0, x1, y1 = self.bbox()
        return math.hypot(x1 - x0, y1 - y0)
