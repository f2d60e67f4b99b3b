"""Independent oracles and generators shared by the unit and acceptance tests.

The brute-force helpers recompute everything from raw vertices so they stay
independent of the code paths they check.
"""

from __future__ import annotations

import math
import random

import numpy as np

from roadrules.geometry import Point, Polyline


def brute_force_min_distance(line: Polyline, p: Point, step: float = 0.001) -> float:
    """Minimum distance from p to the line, sampled every ``step`` meters."""
    xs = np.array([v.x for v in line.vertices])
    ys = np.array([v.y for v in line.vertices])
    seg = np.hypot(np.diff(xs), np.diff(ys))
    cum = np.concatenate(([0.0], np.cumsum(seg)))
    d = np.arange(0.0, cum[-1], step)
    d = np.append(d, cum[-1])
    sx = np.interp(d, cum, xs)
    sy = np.interp(d, cum, ys)
    sx -= p.x
    sx *= sx
    sy -= p.y
    sy *= sy
    sx += sy
    return math.sqrt(float(np.min(sx)))


def random_monotone_polyline(rng: random.Random) -> Polyline:
    """Random polyline, 2-10 vertices, strictly monotone in x (never self-overlapping).

    Segment slopes stay within +-45 degrees so closest-point queries are well
    conditioned; total length is bounded well under a kilometer.
    """
    count = rng.randint(2, 10)
    x = rng.uniform(-50.0, 50.0)
    y = rng.uniform(-50.0, 50.0)
    points = [(x, y)]
    for _ in range(count - 1):
        dx = rng.uniform(1.0, 30.0)
        dy = rng.uniform(-dx, dx)
        x += dx
        y += dy
        points.append((x, y))
    return Polyline(points)


def point_near_line(rng: random.Random, line: Polyline, spread: float = 20.0) -> Point:
    anchor = line.project(rng.uniform(0.0, line.length))
    return Point(anchor.x + rng.uniform(-spread, spread), anchor.y + rng.uniform(-spread, spread))


def one_way_target_street(bearings: list[float], azimuth: float) -> int:
    """Index of the street a right-mandating one-way sign singles out.

    Independent restatement of the scoring geometry: the street whose bearing
    deviates least from azimuth + 90.
    """
    target = azimuth + 90.0
    def deviation(bearing: float) -> float:
        d = math.fmod(target - bearing, 360.0)
        if d <= -180.0:
            d += 360.0
        elif d > 180.0:
            d -= 360.0
        return abs(d)
    return min(range(len(bearings)), key=lambda i: deviation(bearings[i]))
