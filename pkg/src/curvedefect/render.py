"""SVG drawings of curve maps using a barycentric (Tutte) layout.

Every edge is subdivided twice so loops and parallel edges get room; the
outer face boundary is pinned to a circle and all other points sit at the
average of their neighbours.  Coordinates are cosmetic only.
"""

from __future__ import annotations

from math import cos, pi, sin
from xml.sax.saxutils import escape

import numpy as np

from .curvemap import CurveMap, ValidationError, alexander_numbering

_SIZE = 400.0
_RADIUS = 180.0


def _layout(curve: CurveMap) -> tuple[np.ndarray, dict[int, tuple[int, int]]]:
    """Positions for crossings (ids 0..n-1) and two points per edge.

    Returns the coordinate array and, per edge representative dart d, the
    indices of the subdivision points (near d's vertex first).
    """
    n = curve.n
    alpha = curve.alpha
    sub: dict[int, tuple[int, int]] = {}
    count = n
    for d in range(len(alpha)):
        if d < alpha[d]:
            sub[d] = (count, count + 1)
            count += 2
    adj: list[list[int]] = [[] for _ in range(count)]
    for d, (p, q) in sub.items():
        u, v = d >> 2, alpha[d] >> 2
        for a, b in ((u, p), (p, q), (q, v)):
            adj[a].append(b)
            adj[b].append(a)

    def points_along(d: int) -> list[int]:
        """Points on the edge of d, ordered away from d's vertex."""
        if d in sub:
            p, q = sub[d]
            return [p, q]
        p, q = sub[alpha[d]]
        return [q, p]

    # outer boundary: walk the outer face, listing each point once
    ring: list[int] = []
    seen: set[int] = set()
    for d in curve.faces[curve.outer_face]:
        for pt in [d >> 2] + points_along(d):
            if pt not in seen:
                seen.add(pt)
                ring.append(pt)
    pos = np.zeros((count, 2))
    fixed = np.zeros(count, dtype=bool)
    # the face runs clockwise; reverse so the ring is drawn counterclockwise
    for i, pt in enumerate(reversed(ring)):
        t = 2 * pi * i / len(ring)
        pos[pt] = (_RADIUS * cos(t), _RADIUS * sin(t))
        fixed[pt] = True
    free = np.flatnonzero(~fixed)
    if len(free):
        index = {int(v): i for i, v in enumerate(free)}
        lap = np.zeros((len(free), len(free)))
        rhs = np.zeros((len(free), 2))
        for v in free:
            i = index[int(v)]
            for w in adj[v]:
                lap[i, i] += 1
                if fixed[w]:
                    rhs[i] += pos[w]
                else:
                    lap[i, index[w]] -= 1
        pos[free] = np.linalg.lstsq(lap, rhs, rcond=None)[0]
    return pos, sub


def render_svg(curve: CurveMap, labels: bool = True) -> str:
    """SVG 1.1 document drawing ``curve``; faces carry Alexander numbers."""
    c = _SIZE / 2
    head = (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{_SIZE:.0f}" height="{_SIZE:.0f}" '
        f'viewBox="0 0 {_SIZE:.0f} {_SIZE:.0f}">\n'
    )
    body: list[str] = []
    if curve.n == 0:
        for k in range(curve.loops):
            r = _RADIUS * (1 - 0.15 * k)
            body.append(f'<circle class="curve" cx="{c:.2f}" cy="{c:.2f}" r="{r:.2f}" fill="none" stroke="black"/>')
        if labels and curve.loops == 1:
            body.append(_text(c, c, "1"))
            body.append(_text(c, c - _RADIUS - 8, "0"))
        return head + "\n".join(body) + "\n</svg>\n"
    if not curve.is_connected():
        raise ValidationError("render needs a connected map")
    pos, sub = _layout(curve)
    pos = pos * np.array([1.0, -1.0]) + c
    alpha = curve.alpha
    for d, (p, q) in sorted(sub.items()):
        u, v = d >> 2, alpha[d] >> 2
        pts = " ".join(f"{x:.2f},{y:.2f}" for x, y in pos[[u, p, q, v]])
        body.append(f'<polyline class="edge" points="{pts}" fill="none" stroke="black" stroke-width="1.5"/>')
    for v in range(curve.n):
        x, y = pos[v]
        body.append(f'<circle class="crossing" cx="{x:.2f}" cy="{y:.2f}" r="2.5" fill="red"/>')
    if labels:
        numbering = alexander_numbering(curve)
        for f, orbit in enumerate(curve.faces):
            pts = []
            for d in orbit:
                pts.append(pos[d >> 2])
                pts.extend(pos[list(sub[d] if d in sub else sub[alpha[d]])])
            if f == curve.outer_face:
                x, y = 12.0, 16.0
            else:
                x, y = np.mean(pts, axis=0)
            body.append(_text(x, y, str(numbering.face_values[f])))
    return head + "\n".join(body) + "\n</svg>\n"


def _text(x: float, y: float, s: str) -> str:
    return f'<text class="face" x="{x:.2f}" y="{y:.2f}" font-size="11" text-anchor="middle">{escape(s)}</text>'


__all__ = ["render_svg"]
