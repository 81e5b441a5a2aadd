"""Reduction strategies, exact minimum-move search and lower-bound reports."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from math import ceil

from .curvemap import CurveMap, ValidationError
from .defect import defect_polyak
from .moves import (
    HOMOTOPY_KINDS,
    MEDIAL_KINDS,
    MoveSite,
    MoveTrace,
    apply_move,
    enumerate_moves,
    record,
    smooth,
)
from .planegraph import (
    ElectricalMoveSite,
    PlaneGraph,
    apply_electrical,
    enumerate_electrical,
    medial,
)

FAMILIES = ("homotopy", "medial")
STRATEGIES = ("greedy",)


class BudgetExceeded(RuntimeError):
    pass


def _family_kinds(family: str) -> tuple[str, str]:
    """(bigon kind, description) for a move family."""
    if family == "homotopy":
        return "2->0", "homotopy"
    if family in ("medial", "medial-electrical"):
        return "2->1", "medial"
    raise ValueError(f"unknown move family {family!r}")


def default_budget(n: int) -> int:
    return max(5 * n * n, 10)


# ----------------------------------------------------------------------
# curves


def _flip_score(curve: CurveMap) -> int:
    """2 if the map has a monogon, 1 if it has a two-vertex bigon, else 0."""
    best = 0
    for face in curve.faces:
        if len(face) == 1:
            return 2
        if len(face) == 2 and (face[0] >> 2) != (face[1] >> 2):
            best = 1
    return best


def _decreasing_site(curve: CurveMap, bigon: str) -> MoveSite | None:
    sites = enumerate_moves(curve, {"1->0"})
    if sites:
        return sites[0]
    sites = enumerate_moves(curve, {bigon})
    return sites[0] if sites else None


def _flip_path(curve: CurveMap, bigon: str, visited: set, limit: int) -> list[MoveSite] | None:
    """Shortest sequence of 3->3 flips reaching a map with a decreasing move."""
    start = curve.key()
    parent: dict[bytes, tuple[bytes, MoveSite] | None] = {start: None}
    maps = {start: curve}
    queue = deque([start])
    while queue:
        k = queue.popleft()
        c = maps[k]
        for site in enumerate_moves(c, {"3->3"}):
            nxt = apply_move(c, site)
            nk = nxt.key()
            if nk in parent:
                continue
            parent[nk] = (k, site)
            maps[nk] = nxt
            if nk not in visited and _decreasing_site(nxt, bigon) is not None:
                path = []
                while parent[nk] is not None:
                    pk, s = parent[nk]
                    path.append(s)
                    nk = pk
                return path[::-1]
            if len(parent) > limit:
                return None
            queue.append(nk)
    return None


def reduce_curve(
    curve: CurveMap,
    family: str = "homotopy",
    strategy: str = "greedy",
    max_steps: int | None = None,
    fallback_states: int = 20000,
) -> MoveTrace:
    """Reduce a curve (or connected 4-regular map) to circles.

    Greedy: remove monogons, then bigons; otherwise flip the triangle whose
    result scores best (monogon > bigon > nothing, ties by canonical key),
    skipping maps seen before.  When every flip leads back to a seen map, a
    breadth-first search over flips looks for a map with a decreasing move.
    """
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}")
    bigon, fam = _family_kinds(family)
    if fam == "homotopy":
        curve.require_unicursal()
    elif not curve.is_connected():
        raise ValidationError("medial reduction needs a connected map")
    budget = default_budget(curve.n) if max_steps is None else max_steps
    trace = MoveTrace(initial=curve)
    visited = {curve.key()}
    cur = curve
    while cur.n > 0:
        if len(trace.steps) >= budget:
            trace.failed, trace.reason = True, "budget exceeded"
            break
        site = _decreasing_site(cur, bigon)
        if site is not None:
            nxt = apply_move(cur, site)
            record(trace, cur, site, nxt)
            cur = nxt
            visited.add(cur.key())
            continue
        options = []
        for site in enumerate_moves(cur, {"3->3"}):
            nxt = apply_move(cur, site)
            k = nxt.key()
            if k not in visited:
                options.append((-_flip_score(nxt), k, site, nxt))
        if options:
            options.sort(key=lambda t: (t[0], t[1]))
            _, k, site, nxt = options[0]
            record(trace, cur, site, nxt)
            cur = nxt
            visited.add(k)
            continue
        path = _flip_path(cur, bigon, visited, fallback_states)
        if not path:
            trace.failed, trace.reason = True, "no decreasing move reachable by flips"
            break
        for site in path:
            nxt = apply_move(cur, site)
            record(trace, cur, site, nxt)
            cur = nxt
            visited.add(cur.key())
    trace.final = cur
    return trace


# ----------------------------------------------------------------------
# plane graphs


@dataclass(frozen=True)
class ElectricalStep:
    site: ElectricalMoveSite
    edges_after: int
    vertices_after: int

    def to_json(self) -> dict:
        out = self.site.to_json()
        out["edges_after"] = self.edges_after
        out["vertices_after"] = self.vertices_after
        return out


@dataclass
class ElectricalTrace:
    initial: PlaneGraph
    steps: list[ElectricalStep] = field(default_factory=list)
    final: PlaneGraph | None = None
    failed: bool = False
    reason: str = ""

    @property
    def moves(self) -> int:
        return len(self.steps)

    def __len__(self) -> int:
        return len(self.steps)

    def to_json(self) -> list[dict]:
        return [s.to_json() for s in self.steps]

    def replay(self) -> PlaneGraph:
        g = self.initial
        for i, step in enumerate(self.steps):
            g = apply_electrical(g, step.site)
            if g.edge_count != step.edges_after or g.vertex_count != step.vertices_after:
                raise ValidationError(f"step {i}: size does not match")
        return g

    def check_replay(self) -> bool:
        g = self.replay()
        return self.final is not None and g.key() == self.final.key()


_PRIORITY = ("leaf", "loop", "series", "parallel")


def _graph_key(g: PlaneGraph) -> bytes:
    # medial key: cheap, and a reduction of g is a reduction of its dual
    return medial(g).key() if g.edge_count else b"point"


def _easy_site(g: PlaneGraph) -> ElectricalMoveSite | None:
    sites = enumerate_electrical(g, set(_PRIORITY))
    for kind in _PRIORITY:
        for s in sites:
            if s.kind == kind:
                return s
    return None


def _graph_score(g: PlaneGraph) -> int:
    best = 0
    for k in g.degrees:
        if k == 1:
            return 2
        if k == 2:
            best = 1
    for face in g.faces:
        if len(face) == 1:
            return 2
        if len(face) == 2:
            best = 1
    return best


def reduce_graph(
    g: PlaneGraph,
    strategy: str = "greedy",
    max_steps: int | None = None,
    fallback_states: int = 20000,
) -> ElectricalTrace:
    """Reduce a connected plane graph to a single vertex by facial electrical
    transformations (greedy priority leaf, loop, series, parallel, then the
    best-scoring Delta-Y move)."""
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}")
    if not g.is_connected():
        raise ValidationError("reduce_graph needs a connected plane graph")
    budget = default_budget(g.edge_count) if max_steps is None else max_steps
    trace = ElectricalTrace(initial=g)
    visited = {_graph_key(g)}
    cur = g

    def push(site: ElectricalMoveSite, nxt: PlaneGraph) -> None:
        trace.steps.append(ElectricalStep(site, nxt.edge_count, nxt.vertex_count))

    while cur.edge_count > 0:
        if len(trace.steps) >= budget:
            trace.failed, trace.reason = True, "budget exceeded"
            break
        site = _easy_site(cur)
        if site is not None:
            nxt = apply_electrical(cur, site)
            push(site, nxt)
            cur = nxt
            visited.add(_graph_key(cur))
            continue
        options = []
        for site in enumerate_electrical(cur, {"YtoDelta", "DeltaToY"}):
            nxt = apply_electrical(cur, site)
            k = _graph_key(nxt)
            if k not in visited:
                options.append((-_graph_score(nxt), k, site, nxt))
        if options:
            options.sort(key=lambda t: (t[0], t[1]))
            _, k, site, nxt = options[0]
            push(site, nxt)
            cur = nxt
            visited.add(k)
            continue
        path = _graph_flip_path(cur, visited, fallback_states)
        if not path:
            trace.failed, trace.reason = True, "no easy move reachable by Delta-Y"
            break
        for site in path:
            nxt = apply_electrical(cur, site)
            push(site, nxt)
            cur = nxt
            visited.add(_graph_key(cur))
    trace.final = cur
    return trace


def _graph_flip_path(g: PlaneGraph, visited: set, limit: int) -> list[ElectricalMoveSite] | None:
    start = _graph_key(g)
    parent: dict = {start: None}
    graphs = {start: g}
    queue = deque([start])
    while queue:
        k = queue.popleft()
        cur = graphs[k]
        for site in enumerate_electrical(cur, {"YtoDelta", "DeltaToY"}):
            nxt = apply_electrical(cur, site)
            nk = _graph_key(nxt)
            if nk in parent:
                continue
            parent[nk] = (k, site)
            graphs[nk] = nxt
            if nk not in visited and _easy_site(nxt) is not None:
                path = []
                while parent[nk] is not None:
                    pk, s = parent[nk]
                    path.append(s)
                    nk = pk
                return path[::-1]
            if len(parent) > limit:
                return None
            queue.append(nk)
    return None


# ----------------------------------------------------------------------
# exact search


@dataclass
class SearchResult:
    moves: int | None
    trace: MoveTrace | None
    exact: bool
    complete: bool
    states: int
    crossing_cap: int | None = None

    def to_json(self) -> dict:
        return {
            "moves": self.moves,
            "exact": self.exact,
            "complete": self.complete,
            "states": self.states,
            "crossing_cap": self.crossing_cap,
        }


def min_moves_search(
    curve: CurveMap,
    family: str = "medial",
    crossing_cap: int | None = None,
    depth_cap: int | None = None,
    state_cap: int = 200000,
) -> SearchResult:
    """Breadth-first search over canonical forms for a shortest reduction.

    medial: moves 1->0, 2->1, 3->3 (never increasing); the result is exact.
    homotopy: moves 1->0, 2->0, 3->3, 0->2, 0->1 on maps with at most
    ``crossing_cap`` crossings (default n).  ``complete`` says the answer is
    optimal among sequences that respect the cap; ``exact`` is set only when
    it also meets a proven lower bound (defect/2 or half the crossings).
    """
    bigon, fam = _family_kinds(family)
    if fam == "homotopy":
        curve.require_unicursal()
        kinds = set(HOMOTOPY_KINDS)
        cap = curve.n if crossing_cap is None else crossing_cap
        if cap < curve.n:
            raise ValueError("crossing cap below the crossing count")
    else:
        kinds = set(MEDIAL_KINDS)
        cap = None
    start = curve.key()
    parent: dict[bytes, tuple[bytes, MoveSite] | None] = {start: None}
    maps = {start: curve}
    frontier = [start]
    depth = 0
    goal = start if curve.n == 0 else None
    while goal is None and frontier:
        if depth_cap is not None and depth >= depth_cap:
            break
        depth += 1
        nxt_frontier = []
        for k in frontier:
            c = maps[k]
            for site in enumerate_moves(c, kinds):
                if site.kind in ("0->1", "0->2") and cap is not None:
                    grow = 1 if site.kind == "0->1" else 2
                    if c.n + grow > cap:
                        continue
                nxt = apply_move(c, site)
                nk = nxt.key()
                if nk in parent:
                    continue
                parent[nk] = (k, site)
                maps[nk] = nxt
                if nxt.n == 0:
                    goal = nk
                    break
                nxt_frontier.append(nk)
                if len(parent) > state_cap:
                    raise BudgetExceeded(f"state space larger than {state_cap}")
            if goal is not None:
                break
        frontier = sorted(nxt_frontier)
    if goal is None:
        return SearchResult(None, None, False, False, len(parent), cap)
    path = []
    k = goal
    while parent[k] is not None:
        pk, s = parent[k]
        path.append((pk, s))
        k = pk
    path.reverse()
    trace = MoveTrace(initial=curve)
    cur = curve
    for _, site in path:
        nxt = apply_move(cur, site)
        record(trace, cur, site, nxt)
        cur = nxt
    trace.final = cur
    moves = len(path)
    if fam == "medial":
        exact = True
    else:
        lower = max(ceil(abs(defect_polyak(curve)) / 2), ceil(curve.n / 2))
        exact = moves == lower
    return SearchResult(moves, trace, exact, True, len(parent), cap)


# ----------------------------------------------------------------------
# bounds


@dataclass(frozen=True)
class BoundsReport:
    n: int
    defect: int
    lower_bound: int
    achieved_moves: int | None
    exact: bool
    smoothed: bool = False
    failed: bool = False

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "defect": self.defect,
            "lowerBound": self.lower_bound,
            "achievedMoves": self.achieved_moves,
            "exact": self.exact,
            "smoothed": self.smoothed,
            "failed": self.failed,
        }


def unicursal_smoothing(curve: CurveMap) -> CurveMap:
    """Smooth crossings between different components until one curve is left.

    Smoothing a crossing of two distinct components always merges them, so
    the result is a connected unicursal smoothing.
    """
    cur = curve
    while cur.n > 0 and not cur.is_unicursal():
        orbits = cur.straight_orbits()
        comp_of = {}
        for i, orbit in enumerate(orbits):
            for d in orbit:
                # the strand through exit d also passes its opposite slot
                comp_of[d] = comp_of[d ^ 2] = i
        for x in range(cur.n):
            if comp_of[4 * x] != comp_of[4 * x + 1]:
                cands = [smooth(cur, x, ch)[0] for ch in (0, 1)]
                cands = [c for c in cands if c.is_connected()]
                cur = min(cands, key=lambda c: c.component_count())
                break
        else:  # pragma: no cover - connected maps always have such a crossing
            raise ValidationError("no crossing between distinct components")
    return cur


def bounds_report(obj, max_steps: int | None = None, exact_limit: int = 0) -> BoundsReport:
    """Defect lower bound plus the moves achieved by the greedy reducer.

    For a plane graph the defect is that of its medial curve, or of a
    unicursal smoothing when the medial map has several components.
    ``exact_limit``: run the exact search when n is at most this value.
    """
    if isinstance(obj, PlaneGraph):
        m = medial(obj)
        smoothed = False
        curve = m
        if not m.is_unicursal():
            curve = unicursal_smoothing(m)
            smoothed = True
        d = defect_polyak(curve)
        trace = reduce_graph(obj, max_steps=max_steps)
        achieved = None if trace.failed else trace.moves
        exact = False
        if m.n <= exact_limit:
            res = min_moves_search(m, "medial")
            achieved, exact = res.moves, res.exact
        return BoundsReport(m.n, d, ceil(abs(d) / 2), achieved, exact, smoothed, trace.failed)
    curve = obj
    curve.require_unicursal()
    d = defect_polyak(curve)
    trace = reduce_curve(curve, "homotopy", max_steps=max_steps)
    achieved = None if trace.failed else trace.moves
    lower = ceil(abs(d) / 2)
    exact = achieved is not None and achieved == max(lower, ceil(curve.n / 2))
    if curve.n <= exact_limit:
        res = min_moves_search(curve, "homotopy")
        if res.moves is not None and (achieved is None or res.moves <= achieved):
            achieved, exact = res.moves, res.exact
    return BoundsReport(curve.n, d, lower, achieved, exact, False, trace.failed)


__all__ = [
    "BudgetExceeded",
    "reduce_curve",
    "reduce_graph",
    "ElectricalStep",
    "ElectricalTrace",
    "SearchResult",
    "min_moves_search",
    "BoundsReport",
    "bounds_report",
    "unicursal_smoothing",
    "default_budget",
]

