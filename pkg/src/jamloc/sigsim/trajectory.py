"""Jammer trajectory generators: concentric circles, a 2x2 circle grid, and a
boustrophedon meander sweep, each repeated over a list of heights."""

from __future__ import annotations

import numpy as np

__all__ = ["gen_trajectory", "DEFAULT_HEIGHTS"]

DEFAULT_HEIGHTS = (3.9, 4.4, 4.9, 5.4)


def _circle(center, radius: float, n_points: int, phase: float) -> np.ndarray:
    if radius <= 0:
        raise ValueError(f"circle radius must be positive, got {radius}")
    ang = phase + 2 * np.pi * np.arange(n_points) / n_points
    return np.stack([center[0] + radius * np.cos(ang),
                     center[1] + radius * np.sin(ang)], axis=1)


def gen_trajectory(kind: str, params: dict, heights=DEFAULT_HEIGHTS) -> np.ndarray:
    """Return poses (P, 3) for one of the kinds {"circles", "grid_circles", "meander"}.

    circles:      center (x, y), radii (5 by default), points_per_circle, phase
    grid_circles: centers (4 x (x, y)), radii, points_per_circle, phase
    meander:      x_range, y_range, rows, points_per_row
    """
    heights = tuple(heights)
    if not heights:
        raise ValueError("heights must be nonempty")
    kind = kind.lower()
    if kind == "circles":
        centers = [tuple(params.get("center", (0.0, 16.0)))]
    elif kind == "grid_circles":
        centers = [tuple(c) for c in params["centers"]]
    elif kind == "meander":
        return _meander(params, heights)
    else:
        raise ValueError(f"unknown trajectory kind {kind!r}")

    radii = params.get("radii", (3.0, 4.5, 6.0, 7.5, 9.0))
    n_pts = int(params.get("points_per_circle", 100))
    phase = float(params.get("phase", 0.0))
    poses = []
    for z in heights:
        for center in centers:
            for r in radii:
                xy = _circle(center, r, n_pts, phase)
                poses.append(np.column_stack([xy, np.full(n_pts, z)]))
    return np.concatenate(poses, axis=0)


def _meander(params: dict, heights) -> np.ndarray:
    x0, x1 = params.get("x_range", (-6.0, 6.0))
    y0, y1 = params.get("y_range", (10.0, 20.0))
    rows = int(params.get("rows", 10))
    n_pts = int(params.get("points_per_row", 30))
    ys = np.linspace(y0, y1, rows)
    poses = []
    for z in heights:
        for i, y in enumerate(ys):
            xs = np.linspace(x0, x1, n_pts)
            if i % 2:           # alternate direction, monotone x within each row
                xs = xs[::-1]
            poses.append(np.column_stack([xs, np.full(n_pts, y), np.full(n_pts, z)]))
    return np.concatenate(poses, axis=0)
