import json

from errors import InvalidTask
from geom import Point, Polyline, is_finite


# Reads "x,y" as given on the command line
def parse_point(text: str) -> Point:
    parts = text.split(",")
    if len(parts) != 2:
        raise InvalidTask("cannot interpret that point: {}".format(text))
    try:
        p = Point(float(parts[0]), float(parts[1]))
    except ValueError:
        raise InvalidTask("cannot interpret that point: {}".format(text))
    if not is_finite(p):
        raise InvalidTask("point is not finite: {}".format(text))
    return p


# Reads "x,y;x,y;..."
def parse_points(text: str) -> list[Point]:
    items = [t for t in text.split(";") if t.strip()]
    if not items:
        raise InvalidTask("cannot interpret that point list: {}".format(text))
    return [parse_point(t.strip()) for t in items]


def parse_polyline(text: str) -> Polyline:
    return Polyline(tuple(parse_points(text)))


# Extracts a point from JSON, either [x, y] or {"x": .., "y": ..}
def interpret_json_point(p) -> Point:
    try:
        if isinstance(p, dict):
            q = Point(float(p["x"]), float(p["y"]))
        elif len(p) == 2:
            q = Point(float(p[0]), float(p[1]))
        else:
            raise ValueError(p)
    except (KeyError, TypeError, ValueError):
        raise InvalidTask("cannot interpret that point: {}".format(p))
    if not is_finite(q):
        raise InvalidTask("point is not finite: {}".format(p))
    return q


def load_json(filename: str):
    try:
        with open(filename) as f:
            return json.load(f)
    except (OSError, ValueError) as e:
        raise InvalidTask("cannot read {}: {}".format(filename, e))


def dump_json(data) -> str:
    return json.dumps(data, indent=2, sort_keys=True)
