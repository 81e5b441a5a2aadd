"""Constructors for flat torus knots, grids, random curves and connected sums."""

from __future__ import annotations

import random
from math import gcd

from .curvemap import CurveMap
from .planegraph import PlaneGraph

# slots of a braid crossing, counterclockwise in the (outward, forward) frame
_BACK_OUT, _FWD_OUT, _FWD_IN, _BACK_IN = 0, 1, 2, 3


def torus_knot(p: int, q: int) -> CurveMap:
    """Flat torus knot T(p, q) as the closure of (s_1 s_2 ... s_{p-1})^q.

    Braid levels grow outward; the braid runs counterclockwise around the
    annulus.  The result has (p - 1) * q crossings and is unicursal iff
    gcd(p, q) == 1.
    """
    if p < 1 or q < 1:
        raise ValueError("torus_knot needs p >= 1 and q >= 1")
    if p == 1:
        return CurveMap.circle()
    count = (p - 1) * q
    alpha = [-1] * (4 * count)
    open_end: list[int | None] = [None] * p
    first: list[int | None] = [None] * p

    def attach(level: int, back_dart: int) -> None:
        prev = open_end[level]
        if prev is None:
            first[level] = back_dart
        else:
            alpha[prev] = back_dart
            alpha[back_dart] = prev

    for c in range(count):
        k = c % (p - 1) + 1  # crossing between levels k-1 and k
        attach(k - 1, 4 * c + _BACK_IN)
        attach(k, 4 * c + _BACK_OUT)
        open_end[k - 1] = 4 * c + _FWD_IN
        open_end[k] = 4 * c + _FWD_OUT
    for level in range(p):
        a, b = open_end[level], first[level]
        alpha[a] = b
        alpha[b] = a
    # the last crossing touches the outermost level p-1
    top = 4 * (p - 2) + _FWD_OUT
    return CurveMap(alpha, basepoint=top, outer=top)


def cylindrical_grid(p: int, q: int) -> PlaneGraph:
    """p nested q-cycles joined by radial spokes; level 1 is innermost."""
    if p < 1 or q < 3:
        raise ValueError("cylindrical_grid needs p >= 1 and q >= 3")

    def vid(i: int, j: int) -> int:
        return (i - 1) * q + (j % q)

    nbrs: list[list[int]] = []
    for i in range(1, p + 1):
        for j in range(q):
            ring = []
            if i < p:
                ring.append(vid(i + 1, j))
            ring.append(vid(i, j + 1))
            if i > 1:
                ring.append(vid(i - 1, j))
            ring.append(vid(i, j - 1))
            nbrs.append(ring)
    g = PlaneGraph.from_neighbors(nbrs)
    # forward dart on the outermost cycle has the outer face on its right
    v = vid(p, 0)
    outer = g.dart_to(v, vid(p, 1))
    return g.with_outer(outer)


def rectangular_grid(p: int, q: int) -> PlaneGraph:
    """p rows by q columns of lattice points."""
    if p < 1 or q < 1:
        raise ValueError("rectangular_grid needs p >= 1 and q >= 1")

    def vid(r: int, c: int) -> int:
        return r * q + c

    nbrs = []
    for r in range(p):
        for c in range(q):
            ring = []
            if c + 1 < q:
                ring.append(vid(r, c + 1))
            if r + 1 < p:
                ring.append(vid(r + 1, c))
            if c > 0:
                ring.append(vid(r, c - 1))
            if r > 0:
                ring.append(vid(r - 1, c))
            nbrs.append(ring)
    g = PlaneGraph.from_neighbors(nbrs)
    if q >= 2:
        return g.with_outer(g.dart_to(vid(0, 0), vid(0, 1)))
    return g


def cycle_graph(q: int) -> PlaneGraph:
    """The q-cycle C_q (q >= 1; C_1 is a vertex with a loop)."""
    if q == 1:
        return PlaneGraph.from_darts([[0, 1]], [1, 0], outer=0)
    if q == 2:
        # two vertices, two parallel edges
        return PlaneGraph.from_darts([[0, 1], [2, 3]], [3, 2, 1, 0], outer=0)
    return cylindrical_grid(1, q)


def connected_sum(c1: CurveMap, c2: CurveMap) -> CurveMap:
    """Cut an outer-face edge of each curve and splice them side by side.

    The cuts are made on the outer-face representative darts, both of which
    have the outer face on their right, so the two bands do not cross.  No
    crossing of c1 interleaves a crossing of c2.
    """
    c1.require_unicursal()
    c2.require_unicursal()
    if c2.n == 0:
        return c1
    if c1.n == 0:
        return c2
    shift = 4 * c1.n
    a1 = c1.outer
    b1 = c1.alpha[a1]
    a2 = shift + c2.outer
    b2 = shift + c2.alpha[c2.outer]
    alpha = list(c1.alpha) + [shift + e for e in c2.alpha]
    alpha[a1], alpha[b2] = b2, a1
    alpha[a2], alpha[b1] = b1, a2
    return CurveMap(alpha, basepoint=a1, outer=a1)


def random_curve(n: int, seed: int) -> CurveMap:
    """Random curve with exactly n crossings, grown from the circle.

    Each step is, with probability 1/3, a random 3->3 flip (when a triangle
    exists); otherwise a uniformly chosen increasing move (0->1 or 0->2).
    """
    from .moves import apply_move, enumerate_moves

    if n < 0:
        raise ValueError("n must be non-negative")
    rng = random.Random(seed)
    curve = CurveMap.circle()
    while curve.n < n:
        if curve.n >= 3 and rng.random() < 1 / 3:
            flips = enumerate_moves(curve, {"3->3"})
            if flips:
                curve = apply_move(curve, rng.choice(flips))
                continue
        kind = "0->1"
        if n - curve.n >= 2 and curve.n >= 1 and rng.random() < 0.5:
            kind = "0->2"
        sites = enumerate_moves(curve, {kind})
        curve = apply_move(curve, rng.choice(sites))
    return curve


def small_curves(max_n: int) -> list[CurveMap]:
    """Distinct curves with at most ``max_n`` crossings reachable from the circle.

    Breadth-first closure under 0->1, 0->2 and 3->3 moves, deduplicated by
    canonical form.  Ordered by crossing count, then by discovery.
    """
    from .moves import apply_move, enumerate_moves

    start = CurveMap.circle()
    seen = {start.key()}
    out = [start]
    frontier = [start]
    while frontier:
        nxt = []
        for curve in frontier:
            for site in enumerate_moves(curve, {"0->1", "0->2", "3->3"}):
                if curve.n + (1 if site.kind == "0->1" else 2 if site.kind == "0->2" else 0) > max_n:
                    continue
                child = apply_move(curve, site)
                k = child.key()
                if k not in seen:
                    seen.add(k)
                    out.append(child)
                    nxt.append(child)
        frontier = nxt
    out.sort(key=lambda c: c.n)
    return out


__all__ = [
    "torus_knot",
    "cylindrical_grid",
    "rectangular_grid",
    "cycle_graph",
    "connected_sum",
    "random_curve",
    "small_curves",
    "is_unicursal_torus",
]


def is_unicursal_torus(p: int, q: int) -> bool:
    return gcd(p, q) == 1
