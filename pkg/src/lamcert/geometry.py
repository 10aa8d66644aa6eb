"""Convex polygon primitives for the piecewise-affine realization.

Polygons are tuples of (x, y) float pairs in counterclockwise order.  All
cells produced by the realization are intersections of halfplanes with the
convex domain, so Sutherland-Hodgman clipping against single halfplanes is
the only constructive operation needed.  Everything is plain float tuples:
the realization emits hundreds of thousands of small polygons and per-object
numpy overhead would dominate.
"""

from __future__ import annotations

import math
from typing import List, Sequence, Tuple

Point = Tuple[float, float]
Polygon = Tuple[Point, ...]


def polygon_area(poly: Sequence[Point]) -> float:
    """Signed shoelace area (positive for counterclockwise order)."""
    n = len(poly)
    if n < 3:
        return 0.0
    s = 0.0
    x0, y0 = poly[-1]
    for x1, y1 in poly:
        s += x0 * y1 - x1 * y0
        x0, y0 = x1, y1
    return 0.5 * s


def polygon_diameter(poly: Sequence[Point]) -> float:
    best = 0.0
    for i in range(len(poly)):
        xi, yi = poly[i]
        for xj, yj in poly[i + 1:]:
            d = math.hypot(xi - xj, yi - yj)
            if d > best:
                best = d
    return best


def polygon_edges(poly: Sequence[Point]) -> List[Tuple[Point, Point]]:
    return [(poly[i], poly[(i + 1) % len(poly)]) for i in range(len(poly))]


def clip_halfplane(poly: Sequence[Point], gx: float, gy: float, c: float) -> Polygon:
    """Intersect a convex polygon with {(x,y): gx*x + gy*y + c >= 0}."""
    n = len(poly)
    if n == 0:
        return ()
    out: List[Point] = []
    px, py = poly[-1]
    pv = gx * px + gy * py + c
    for qx, qy in poly:
        qv = gx * qx + gy * qy + c
        if qv >= 0.0:
            if pv < 0.0:
                t = pv / (pv - qv)
                out.append((px + t * (qx - px), py + t * (qy - py)))
            out.append((qx, qy))
        elif pv >= 0.0:
            t = pv / (pv - qv)
            out.append((px + t * (qx - px), py + t * (qy - py)))
        px, py, pv = qx, qy, qv
    return tuple(out)


def inward_edge_offsets(poly: Sequence[Point]) -> List[Tuple[float, float, float]]:
    """Per edge, the affine function d_e(x, y) = nx*x + ny*y + c that is the
    distance to the edge line, nonnegative inside (unit inward normal)."""
    funcs = []
    for (x0, y0), (x1, y1) in polygon_edges(poly):
        ex, ey = x1 - x0, y1 - y0
        length = math.hypot(ex, ey)
        if length == 0.0:
            continue
        # CCW polygon: inward normal is the left normal of the edge direction
        nx, ny = -ey / length, ex / length
        c = -(nx * x0 + ny * y0)
        funcs.append((nx, ny, c))
    return funcs


def convexity_defect(poly: Sequence[Point]) -> float:
    """Largest inward cross-product violation; <= 0 means convex CCW."""
    n = len(poly)
    worst = 0.0
    for i in range(n):
        x0, y0 = poly[i]
        x1, y1 = poly[(i + 1) % n]
        x2, y2 = poly[(i + 2) % n]
        cross = (x1 - x0) * (y2 - y1) - (y1 - y0) * (x2 - x1)
        worst = min(worst, cross)
    return -worst


def dedupe_vertices(poly: Sequence[Point], tol: float) -> Polygon:
    """Drop consecutive vertices closer than tol."""
    out: List[Point] = []
    for pt in poly:
        if out and math.hypot(pt[0] - out[-1][0], pt[1] - out[-1][1]) <= tol:
            continue
        out.append(pt)
    while len(out) > 1 and math.hypot(out[0][0] - out[-1][0],
                                      out[0][1] - out[-1][1]) <= tol:
        out.pop()
    return tuple(out)


def unit_square() -> Polygon:
    return ((0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0))


def disk_polygon(sides: int = 64) -> Polygon:
    """Regular polygon inscribed in the unit circle (vertices on the circle).

    Realizations on it extend by zero to the full disk: the boundary trace is
    zero, so the extension stays Lipschitz and adds nothing to any integral.
    """
    pts = []
    for k in range(sides):
        theta = 2.0 * math.pi * k / sides
        pts.append((math.cos(theta), math.sin(theta)))
    return tuple(pts)


def span_along(poly: Sequence[Point], nx: float, ny: float) -> Tuple[float, float]:
    """Min and max of the linear form nx*x + ny*y over the vertices."""
    vals = [nx * x + ny * y for x, y in poly]
    return min(vals), max(vals)
