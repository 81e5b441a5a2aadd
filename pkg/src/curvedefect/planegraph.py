"""Plane graphs of arbitrary degree, their duals and medial graphs, and the
six facial electrical transformations.

Darts of vertex ``v`` are ``offset[v] .. offset[v] + deg(v) - 1`` in
counterclockwise order; ``alpha`` pairs the two darts of each edge.  Loops
and parallel edges are allowed.  The face right of dart ``d`` is its orbit
under ``sigma(alpha(d))``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .curvemap import CmapParseError, CurveMap, ValidationError, parse_cmap


class PlaneGraph:
    __slots__ = ("degrees", "alpha", "outer", "_offset", "_vertex_of", "_faces", "_face_of")

    def __init__(self, degrees: Sequence[int], alpha: Sequence[int], outer: int | None = None, check: bool = True):
        self.degrees = tuple(degrees)
        self.alpha = tuple(alpha)
        offset = []
        vertex_of = []
        total = 0
        for v, k in enumerate(self.degrees):
            offset.append(total)
            vertex_of.extend([v] * k)
            total += k
        if total != len(self.alpha):
            raise ValidationError("degree sum does not match dart count")
        self._offset = tuple(offset)
        self._vertex_of = tuple(vertex_of)
        self.outer = outer if (outer is not None or not self.alpha) else 0
        self._faces = None
        self._face_of = None
        if check:
            self.validate()

    # ------------------------------------------------------------------
    # constructors

    @classmethod
    def from_darts(cls, rotations: Sequence[Sequence[int]], alpha: Sequence[int], outer: int | None = None) -> "PlaneGraph":
        """Build from per-vertex ccw dart lists using arbitrary dart ids."""
        index = {}
        for rot in rotations:
            for d in rot:
                index[d] = len(index)
        if isinstance(alpha, dict):
            pairs = alpha
        else:
            pairs = dict(enumerate(alpha))
        new_alpha = [0] * len(index)
        for d, i in index.items():
            new_alpha[i] = index[pairs[d]]
        return cls([len(r) for r in rotations], new_alpha, None if outer is None else index[outer])

    @classmethod
    def from_neighbors(cls, nbrs: Sequence[Sequence[int]]) -> "PlaneGraph":
        """Build a simple plane graph from ccw neighbour lists."""
        dart = {}
        rotations = []
        for v, ring in enumerate(nbrs):
            rot = []
            for w in ring:
                if (v, w) in dart:
                    raise ValidationError("from_neighbors needs a simple graph")
                dart[(v, w)] = len(dart)
                rot.append(dart[(v, w)])
            rotations.append(rot)
        alpha = {}
        for (v, w), d in dart.items():
            if (w, v) not in dart:
                raise ValidationError(f"edge {v}-{w} is not symmetric")
            alpha[d] = dart[(w, v)]
        return cls.from_darts(rotations, alpha)

    @classmethod
    def single_vertex(cls) -> "PlaneGraph":
        return cls([0], [])

    def with_outer(self, d: int) -> "PlaneGraph":
        return PlaneGraph(self.degrees, self.alpha, d, check=False)

    # ------------------------------------------------------------------
    # structure

    @property
    def vertex_count(self) -> int:
        return len(self.degrees)

    @property
    def edge_count(self) -> int:
        return len(self.alpha) // 2

    def vertex_of(self, d: int) -> int:
        return self._vertex_of[d]

    def darts_at(self, v: int) -> range:
        return range(self._offset[v], self._offset[v] + self.degrees[v])

    def sigma(self, d: int) -> int:
        v = self._vertex_of[d]
        o = self._offset[v]
        return o + (d - o + 1) % self.degrees[v]

    def sigma_inv(self, d: int) -> int:
        v = self._vertex_of[d]
        o = self._offset[v]
        return o + (d - o - 1) % self.degrees[v]

    def face_next(self, d: int) -> int:
        return self.sigma(self.alpha[d])

    def dart_to(self, v: int, w: int) -> int:
        for d in self.darts_at(v):
            if self._vertex_of[self.alpha[d]] == w:
                return d
        raise KeyError(f"no edge {v}-{w}")

    def edges(self) -> list[int]:
        """Representative (smaller) dart of each edge, in increasing order."""
        return [d for d in range(len(self.alpha)) if d < self.alpha[d]]

    def _compute_faces(self) -> None:
        face_of = [-1] * len(self.alpha)
        faces = []
        for d in range(len(self.alpha)):
            if face_of[d] >= 0:
                continue
            orbit = []
            e = d
            while face_of[e] < 0:
                face_of[e] = len(faces)
                orbit.append(e)
                e = self.face_next(e)
            faces.append(tuple(orbit))
        self._faces = tuple(faces)
        self._face_of = tuple(face_of)

    @property
    def faces(self) -> tuple[tuple[int, ...], ...]:
        if self._faces is None:
            self._compute_faces()
        return self._faces

    @property
    def face_of(self) -> tuple[int, ...]:
        if self._face_of is None:
            self._compute_faces()
        return self._face_of

    def face_count(self) -> int:
        # a graph without edges has one face per vertex component
        return len(self.faces) + sum(1 for k in self.degrees if k == 0)

    def components(self) -> list[list[int]]:
        n = self.vertex_count
        seen = [False] * n
        comps = []
        for s in range(n):
            if seen[s]:
                continue
            seen[s] = True
            stack, comp = [s], []
            while stack:
                v = stack.pop()
                comp.append(v)
                for d in self.darts_at(v):
                    w = self._vertex_of[self.alpha[d]]
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
            comps.append(comp)
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) == 1

    def validate(self) -> None:
        size = len(self.alpha)
        for d, e in enumerate(self.alpha):
            if not 0 <= e < size:
                raise ValidationError(f"alpha image of dart {d} out of range")
            if e == d:
                raise ValidationError("alpha not fixed-point-free")
            if self.alpha[e] != d:
                raise ValidationError("alpha not an involution")
        if self.outer is not None and not 0 <= self.outer < size:
            raise ValidationError("outer dart out of range")
        for comp in self.components():
            darts = [d for v in comp for d in self.darts_at(v)]
            if not darts:
                continue
            fs = {self.face_of[d] for d in darts}
            v, e, f = len(comp), len(darts) // 2, len(fs)
            if v - e + f != 2:
                raise ValidationError(f"Euler characteristic {v - e + f} != 2 (V={v}, E={e}, F={f})")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PlaneGraph):
            return NotImplemented
        return (self.degrees, self.alpha, self.outer) == (other.degrees, other.alpha, other.outer)

    def __hash__(self) -> int:
        return hash((self.degrees, self.alpha, self.outer))

    def __repr__(self) -> str:
        return f"<PlaneGraph V={self.vertex_count} E={self.edge_count} F={self.face_count()}>"

    def key(self, mirror: bool = True) -> bytes:
        """Isomorphism key, via the medial map of the graph plus its dual
        vertex/face two-colouring (the medial map alone identifies G with G*)."""
        return graph_canonical_form(self, mirror)


# ----------------------------------------------------------------------
# medial graph


def _own_slot(g: PlaneGraph, x: int) -> int:
    return 1 if x < g.alpha[x] else 3


def _prev_slot(g: PlaneGraph, y: int) -> int:
    return 2 if y < g.alpha[y] else 0


def medial_vertex_ids(g: PlaneGraph) -> dict[int, int]:
    """Medial vertex index of every dart (the index of its edge)."""
    ids = {}
    for i, d in enumerate(g.edges()):
        ids[d] = i
        ids[g.alpha[d]] = i
    return ids


def medial_dart_for_vertex(g: PlaneGraph, v: int) -> int:
    """A dart of medial(g) on the face that surrounds vertex v."""
    ids = medial_vertex_ids(g)
    x = next(iter(g.darts_at(v)))
    y = g.sigma(x)
    return 4 * ids[y] + _prev_slot(g, y)


def medial_dart_for_face(g: PlaneGraph, y: int) -> int:
    """A dart of medial(g) on the face corresponding to the face right of y."""
    ids = medial_vertex_ids(g)
    x = g.alpha[y]
    return 4 * ids[x] + _own_slot(g, x)


def medial(g: PlaneGraph) -> CurveMap:
    """Medial map: one 4-valent vertex per edge of g.

    For edge with smaller dart d, the medial slots are, counterclockwise,
    the corners after sigma^-1(alpha d), d, sigma^-1(d) and alpha d.
    """
    if not g.is_connected():
        raise ValidationError("medial graph needs a connected plane graph")
    if g.edge_count == 0:
        return CurveMap.circle()
    ids = medial_vertex_ids(g)
    alpha = [0] * (4 * g.edge_count)
    for x in range(len(g.alpha)):
        y = g.sigma(x)
        a = 4 * ids[x] + _own_slot(g, x)
        b = 4 * ids[y] + _prev_slot(g, y)
        alpha[a] = b
        alpha[b] = a
    outer = g.outer if g.outer is not None else 0
    out_dart = medial_dart_for_face(g, outer)
    return CurveMap(alpha, basepoint=out_dart, outer=out_dart)


def dual(g: PlaneGraph) -> PlaneGraph:
    """Dual graph; its vertex at a face lists that face's darts counterclockwise.

    The dual keeps orientation, so dual(dual(g)) is isomorphic to g via
    d -> alpha(d).
    """
    if not g.is_connected():
        raise ValidationError("dual needs a connected plane graph")
    if g.edge_count == 0:
        return PlaneGraph.single_vertex()
    rotations = []
    for orbit in g.faces:
        # the face orbit runs clockwise around the face
        rotations.append([orbit[0]] + list(reversed(orbit[1:])))
    outer = g.alpha[g.outer] if g.outer is not None else None
    return PlaneGraph.from_darts(rotations, list(g.alpha), outer=outer)


# ----------------------------------------------------------------------
# canonical form for plane graphs


def graph_canonical_form(g: PlaneGraph, mirror: bool = True) -> bytes:
    from array import array

    from .curvemap import canonical_form

    if g.edge_count == 0:
        return array("I", [0xFFFFFFFF, g.vertex_count]).tobytes()
    # subdivide each edge so vertices and faces of g are told apart
    return b"G" + canonical_form(_vertex_marked_medial(g), mirror)


def _vertex_marked_medial(g: PlaneGraph) -> CurveMap:
    """Medial map with a curl inserted on every vertex corner edge.

    The medial map alone cannot tell g from its dual; marking all corners
    of vertices (not faces) makes the key of this map determine g itself.
    """
    m = medial(g)
    ids = medial_vertex_ids(g)
    alpha = list(m.alpha)
    n = m.n
    for x in range(len(g.alpha)):
        y = g.sigma(x)
        d = 4 * ids[y] + _prev_slot(g, y)
        e = alpha[d]
        w = n
        n += 1
        # slots 0 and 1 form the curl, 2 faces d and 3 faces e
        alpha.extend([4 * w + 1, 4 * w, d, e])
        alpha[d] = 4 * w + 2
        alpha[e] = 4 * w + 3
    return CurveMap(alpha, check=False)


# ----------------------------------------------------------------------
# electrical transformations

ELECTRICAL_KINDS = ("leaf", "loop", "series", "parallel", "YtoDelta", "DeltaToY")
DUAL_KIND = {
    "leaf": "loop",
    "loop": "leaf",
    "series": "parallel",
    "parallel": "series",
    "YtoDelta": "DeltaToY",
    "DeltaToY": "YtoDelta",
}


@dataclass(frozen=True)
class ElectricalMoveSite:
    """``location`` is a vertex id for leaf/series/YtoDelta and a dart on
    the face (face right of that dart) for loop/parallel/DeltaToY."""

    kind: str
    location: int

    @property
    def is_facial(self) -> bool:
        return self.kind in ("loop", "parallel", "DeltaToY")

    def to_json(self) -> dict:
        return {"kind": self.kind, ("face" if self.is_facial else "vertex"): self.location}


def _distinct_edges(g: PlaneGraph, darts: Sequence[int]) -> bool:
    edges = {min(d, g.alpha[d]) for d in darts}
    return len(edges) == len(darts)


def enumerate_electrical(g: PlaneGraph, kinds: set[str] | None = None) -> list[ElectricalMoveSite]:
    kinds = set(ELECTRICAL_KINDS) if kinds is None else set(kinds)
    sites = []
    for v, k in enumerate(g.degrees):
        darts = list(g.darts_at(v))
        if k == 1 and "leaf" in kinds:
            sites.append(ElectricalMoveSite("leaf", v))
        elif k == 2 and "series" in kinds and _distinct_edges(g, darts):
            sites.append(ElectricalMoveSite("series", v))
        elif k == 3 and "YtoDelta" in kinds and _distinct_edges(g, darts):
            sites.append(ElectricalMoveSite("YtoDelta", v))
    for orbit in g.faces:
        k = len(orbit)
        rep = min(orbit)
        if k == 1 and "loop" in kinds:
            sites.append(ElectricalMoveSite("loop", rep))
        elif k == 2 and "parallel" in kinds and _distinct_edges(g, orbit):
            sites.append(ElectricalMoveSite("parallel", rep))
        elif k == 3 and "DeltaToY" in kinds and _distinct_edges(g, orbit):
            sites.append(ElectricalMoveSite("DeltaToY", rep))
    return sites


class InvalidSite(ValueError):
    def __init__(self, msg: str = "invalid site"):
        super().__init__(msg)


class _Editor:
    """Mutable rotation system used while applying a transformation."""

    def __init__(self, g: PlaneGraph):
        self.rot = {v: list(g.darts_at(v)) for v in range(g.vertex_count)}
        self.alpha = dict(enumerate(g.alpha))
        self.next_dart = len(g.alpha)
        self.next_vertex = g.vertex_count
        self.owner = {d: g.vertex_of(d) for d in range(len(g.alpha))}

    def new_dart(self) -> int:
        self.next_dart += 1
        return self.next_dart - 1

    def pair(self, a: int, b: int) -> None:
        self.alpha[a] = b
        self.alpha[b] = a

    def drop_edge(self, d: int) -> None:
        e = self.alpha.pop(d)
        self.alpha.pop(e)
        for x in (d, e):
            self.rot[self.owner[x]].remove(x)

    def replace(self, d: int, new: list[int]) -> None:
        v = self.owner[d]
        ring = self.rot[v]
        i = ring.index(d)
        ring[i : i + 1] = new
        for x in new:
            self.owner[x] = v
        self.alpha.pop(d, None)

    def remove_vertex(self, v: int) -> None:
        del self.rot[v]

    def build(self, old: PlaneGraph, hint: int | None = None) -> PlaneGraph:
        rotations = [self.rot[v] for v in sorted(self.rot)]
        alive = {d for ring in rotations for d in ring}
        outer = None
        for cand in (old.outer, hint):
            if cand is not None and cand in alive:
                outer = cand
                break
        if outer is None and old.outer is not None:
            for d in old.faces[old.face_of[old.outer]]:
                if d in alive:
                    outer = d
                    break
        if outer is None and alive:
            outer = min(alive)
        return PlaneGraph.from_darts(rotations, self.alpha, outer=outer)


def apply_electrical(g: PlaneGraph, site: ElectricalMoveSite) -> PlaneGraph:
    kind, loc = site.kind, site.location
    ed = _Editor(g)
    if kind in ("leaf", "series", "YtoDelta"):
        want = {"leaf": 1, "series": 2, "YtoDelta": 3}[kind]
        if not (0 <= loc < g.vertex_count) or g.degrees[loc] != want:
            raise InvalidSite()
        darts = list(g.darts_at(loc))
        if kind != "leaf" and not _distinct_edges(g, darts):
            raise InvalidSite()
        if kind == "leaf":
            (d,) = darts
            ed.remove_vertex(loc)
            ed.rot[g.vertex_of(g.alpha[d])].remove(g.alpha[d])
            ed.alpha.pop(d)
            ed.alpha.pop(g.alpha[d])
        elif kind == "series":
            d1, d2 = darts
            ed.remove_vertex(loc)
            a1, a2 = g.alpha[d1], g.alpha[d2]
            ed.alpha.pop(d1)
            ed.alpha.pop(d2)
            ed.pair(a1, a2)
        else:
            ed.remove_vertex(loc)
            outs = [g.alpha[d] for d in darts]
            plus = [ed.new_dart() for _ in range(3)]
            minus = [ed.new_dart() for _ in range(3)]
            for d in darts:
                ed.alpha.pop(d)
            for i, a in enumerate(outs):
                ed.replace(a, [plus[i], minus[i]])
            for i in range(3):
                ed.pair(plus[i], minus[(i + 1) % 3])
        return ed.build(g)
    # facial kinds
    if not 0 <= loc < len(g.alpha):
        raise InvalidSite()
    orbit = g.faces[g.face_of[loc]]
    want = {"loop": 1, "parallel": 2, "DeltaToY": 3}[kind]
    if len(orbit) != want or (kind != "loop" and not _distinct_edges(g, orbit)):
        raise InvalidSite()
    if kind in ("loop", "parallel"):
        ed.drop_edge(loc)
        return ed.build(g)
    # DeltaToY: start the orbit at loc
    i0 = orbit.index(loc)
    f = [orbit[(i0 + k) % 3] for k in range(3)]
    q = [ed.new_dart() for _ in range(3)]
    r = [ed.new_dart() for _ in range(3)]
    for i in range(3):
        prev = g.alpha[f[(i - 1) % 3]]
        cur = f[i]
        v = g.vertex_of(cur)
        ring = ed.rot[v]
        j = ring.index(prev)
        if ring[(j + 1) % len(ring)] != cur:  # pragma: no cover - face orbit guarantees this
            raise InvalidSite("corner darts not consecutive")
        if j + 1 < len(ring):
            ring[j : j + 2] = [q[i]]
        else:
            ring[j:] = [q[i]]
            ring.pop(0)
        ed.owner[q[i]] = v
    for d in f:
        ed.alpha.pop(d, None)
        ed.alpha.pop(g.alpha[d], None)
    nv = ed.next_vertex
    ed.next_vertex += 1
    ed.rot[nv] = [r[0], r[2], r[1]]
    for i in range(3):
        ed.owner[r[i]] = nv
        ed.pair(r[i], q[i])
    return ed.build(g)


def medial_site(g: PlaneGraph, site: ElectricalMoveSite):
    """The medial move on medial(g) that mirrors an electrical site."""
    from .moves import MoveSite

    if site.is_facial:
        d = medial_dart_for_face(g, site.location)
    else:
        d = medial_dart_for_vertex(g, site.location)
    kind = {"leaf": "1->0", "loop": "1->0", "series": "2->1", "parallel": "2->1", "YtoDelta": "3->3", "DeltaToY": "3->3"}[
        site.kind
    ]
    m = medial(g)
    face = m.faces[m.face_of[d]]
    return MoveSite(kind, (min(face),))


def dual_site(g: PlaneGraph, site: ElectricalMoveSite) -> ElectricalMoveSite:
    """The same transformation seen in dual(g) (kinds swap pairwise)."""
    dg_rot = []
    for orbit in g.faces:
        dg_rot.append([orbit[0]] + list(reversed(orbit[1:])))
    index = {}
    for ring in dg_rot:
        for d in ring:
            index[d] = len(index)
    kind = DUAL_KIND[site.kind]
    if site.is_facial:
        # face of g -> vertex of dual(g)
        return ElectricalMoveSite(kind, g.face_of[site.location])
    # vertex v of g -> face of dual(g): dual face containing d is vertex of alpha(d)
    x = next(iter(g.darts_at(site.location)))
    return ElectricalMoveSite(kind, index[g.alpha[x]])


# ----------------------------------------------------------------------
# minors (for the smoothing correspondence)


def delete_edge(g: PlaneGraph, d: int) -> PlaneGraph:
    ed = _Editor(g)
    ed.drop_edge(d)
    return ed.build(g)


def contract_edge(g: PlaneGraph, d: int) -> PlaneGraph:
    """Contract a non-loop edge, merging rotations at the two endpoints."""
    e = g.alpha[d]
    u, w = g.vertex_of(d), g.vertex_of(e)
    if u == w:
        raise ValueError("cannot contract a loop")
    ed = _Editor(g)
    ru = ed.rot[u]
    rw = ed.rot[w]
    i, j = ru.index(d), rw.index(e)
    merged = ru[i + 1 :] + ru[:i] + rw[j + 1 :] + rw[:j]
    ed.alpha.pop(d)
    ed.alpha.pop(e)
    ed.rot[u] = merged
    for x in merged:
        ed.owner[x] = u
    ed.remove_vertex(w)
    return ed.build(g)


# ----------------------------------------------------------------------
# CMAP container with degree-tagged vertex lines


def load_plane_graph(text: str) -> PlaneGraph:
    rec = parse_cmap(text)
    n = rec["n"]
    if n == 0:
        raise CmapParseError("a plane graph needs at least one vertex")
    degrees = [len(rec["vertices"][v]) for v in range(n)]
    offset = [0]
    for k in degrees:
        offset.append(offset[-1] + k)
    alpha = [0] * offset[-1]
    for v in range(n):
        for s, (w, t) in enumerate(rec["vertices"][v]):
            if not (0 <= w < n and 0 <= t < degrees[w]):
                raise ValidationError(f"dart {w}.{t} does not exist")
            alpha[offset[v] + s] = offset[w] + t
    outer = None
    if rec["outer"] is not None:
        w, t = rec["outer"]
        if not (0 <= w < n and 0 <= t < degrees[w]):
            raise ValidationError(f"dart {w}.{t} does not exist")
        outer = offset[w] + t
    return PlaneGraph(degrees, alpha, outer)


def dump_plane_graph(g: PlaneGraph) -> str:
    def ref(d: int) -> str:
        v = g.vertex_of(d)
        return f"{v}.{d - g._offset[v]}"

    lines = ["cmap 1", f"vertices {g.vertex_count}"]
    for v in range(g.vertex_count):
        refs = " ".join(ref(g.alpha[d]) for d in g.darts_at(v))
        lines.append(f"v {v} {g.degrees[v]} {refs}".rstrip())
    if g.outer is not None:
        lines.append(f"outer {ref(g.outer)}")
    return "\n".join(lines) + "\n"


def face_adjacency_bfs(g: PlaneGraph, start: int) -> list[int]:  # pragma: no cover - helper for tooling
    dist = [-1] * len(g.faces)
    dist[start] = 0
    queue = deque([start])
    while queue:
        f = queue.popleft()
        for d in g.faces[f]:
            h = g.face_of[g.alpha[d]]
            if dist[h] < 0:
                dist[h] = dist[f] + 1
                queue.append(h)
    return dist
