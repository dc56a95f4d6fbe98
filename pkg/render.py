"""
Debug SVG output for maps, dissections and paths.
"""

import math
from dataclasses import dataclass, field
from typing import Optional

from dissection import DissectionGraph
from geom import Point, Polyline

PALETTE = ["#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"]
CELL_FILL = "#eef3f8"
OBSTACLE_FILL = "#555555"
MARGIN_FRACTION = 0.03


@dataclass
class Layers:
    # boundary and obstacles
    outline: bool = False
    cells: bool = False
    cutlines: bool = False
    paths: list[Polyline] = field(default_factory=list)
    # taut configurations, one color per homotopy class
    configs: list[Polyline] = field(default_factory=list)
    anchor: Optional[Point] = None


def _pts(points) -> str:
    return " ".join(f"{p.x:.6g},{p.y:.6g}" for p in points)


def _star(c: Point, r: float) -> list[Point]:
    out = []
    for k in range(10):
        a = math.pi / 2 + k * math.pi / 5
        rr = r if k % 2 == 0 else r * 0.4
        out.append(Point(c.x + rr * math.cos(a), c.y + rr * math.sin(a)))
    return out


def render_svg(g: DissectionGraph, layers: Layers, width: int = 800) -> str:
    """
    The map is drawn in world coordinates under a y-flip so that +y points
    up. An empty layer set yields an empty canvas of the map's extent.
    """
    x0, y0, x1, y1 = g.env.bbox()
    d = g.diameter()
    m = MARGIN_FRACTION * d
    vw, vh = (x1 - x0) + 2 * m, (y1 - y0) + 2 * m
    height = int(round(width * vh / vw))
    stroke = d / 400

    body = []
    if layers.outline:
        body.append(
            f'<polygon points="{_pts(g.env.boundary.vertices)}" fill="white" '
            f'stroke="black" stroke-width="{2 * stroke:.6g}"/>'
        )
    if layers.cells:
        for c in g.cells:
            body.append(
                f'<polygon points="{_pts(c.polygon.vertices)}" fill="{CELL_FILL}" '
                f'stroke="#9aa" stroke-width="{stroke:.6g}"/>'
            )
            ctr = c.polygon.centroid()
            body.append(
                f'<text x="{ctr.x:.6g}" y="{-ctr.y:.6g}" font-size="{d / 40:.6g}" '
                f'transform="scale(1,-1)" text-anchor="middle">{c.id}</text>'
            )
    if layers.outline:
        for o in g.env.obstacles:
            body.append(
                f'<polygon points="{_pts(o.vertices)}" fill="{OBSTACLE_FILL}" '
                f'stroke="black" stroke-width="{stroke:.6g}"/>'
            )
    if layers.cutlines:
        for l in g.cutlines:
            a, b = l.segment.a, l.segment.b
            body.append(
                f'<line x1="{a.x:.6g}" y1="{a.y:.6g}" x2="{b.x:.6g}" y2="{b.y:.6g}" '
                f'stroke="#4a90d9" stroke-width="{stroke:.6g}" '
                f'stroke-dasharray="{4 * stroke:.6g},{3 * stroke:.6g}"/>'
            )
    for k, p in enumerate(layers.configs):
        body.append(
            f'<polyline points="{_pts(p.waypoints)}" fill="none" '
            f'stroke="{PALETTE[k % len(PALETTE)]}" stroke-width="{3 * stroke:.6g}" '
            f'stroke-opacity="0.8"/>'
        )
    for p in layers.paths:
        body.append(
            f'<polyline points="{_pts(p.waypoints)}" fill="none" '
            f'stroke="black" stroke-width="{2 * stroke:.6g}" '
            f'stroke-dasharray="{6 * stroke:.6g},{2 * stroke:.6g}"/>'
        )
    if layers.anchor is not None:
        body.append(
            f'<polygon points="{_pts(_star(layers.anchor, d / 50))}" '
            f'fill="#f5c518" stroke="black" stroke-width="{stroke / 2:.6g}"/>'
        )

    header = (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="{x0 - m:.6g} {-(y1 + m):.6g} {vw:.6g} {vh:.6g}">'
    )
    return "\n".join(
        [header, '<g transform="scale(1,-1)">'] + body + ["</g>", "</svg>"]
    )
