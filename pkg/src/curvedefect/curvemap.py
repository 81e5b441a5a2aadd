"""Generic closed curves (and general 4-regular plane graphs) as dart maps.

A vertex ``v`` owns four darts ``4*v + slot`` with ``slot`` in
counterclockwise order, so the rotation is implicit and only the edge
involution ``alpha`` is stored.  Going straight through a vertex maps a dart
to its opposite ``d ^ 2``.  The face to the right of a dart ``d`` is its orbit
under ``rotate(alpha(d))``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, NamedTuple, Sequence

from . import kernels


class CurveError(ValueError):
    """Base class for invalid curve input."""


class CmapParseError(CurveError):
    pass


class ValidationError(CurveError):
    pass


class NotUnicursalError(CurveError):
    def __init__(self, msg: str = "not unicursal"):
        super().__init__(msg)


class DartRef(NamedTuple):
    vertex: int
    slot: int

    @property
    def index(self) -> int:
        return 4 * self.vertex + self.slot

    @classmethod
    def of(cls, d: int) -> "DartRef":
        return cls(d >> 2, d & 3)

    def __str__(self) -> str:
        return f"{self.vertex}.{self.slot}"


def rotate(d: int) -> int:
    return (d & ~3) | ((d + 1) & 3)


def unrotate(d: int) -> int:
    return (d & ~3) | ((d - 1) & 3)


def opposite(d: int) -> int:
    return d ^ 2


class CurveMap:
    """Immutable 4-regular combinatorial map with basepoint and outer face.

    ``loops`` counts vertexless circle components; the simple closed curve is
    ``CurveMap.circle()`` (no darts, one loop).
    """

    __slots__ = ("alpha", "basepoint", "outer", "loops", "_faces", "_face_of", "_hash")

    def __init__(
        self,
        alpha: Sequence[int],
        basepoint: int | None = None,
        outer: int | None = None,
        loops: int = 0,
        check: bool = True,
    ):
        alpha = tuple(alpha)
        if len(alpha) % 4:
            raise ValidationError("dart count is not a multiple of 4")
        if alpha and basepoint is None:
            basepoint = 0
        if alpha and outer is None:
            outer = 0
        if not alpha:
            basepoint = outer = None
        self.alpha = alpha
        self.basepoint = basepoint
        self.outer = outer
        self.loops = loops
        self._faces = None
        self._face_of = None
        self._hash = None
        if check:
            self.validate()

    @classmethod
    def circle(cls) -> "CurveMap":
        return cls((), loops=1)

    # ------------------------------------------------------------------
    # basic structure

    @property
    def n(self) -> int:
        return len(self.alpha) // 4

    vertex_count = n

    @property
    def is_circle(self) -> bool:
        return not self.alpha and self.loops == 1

    def darts(self) -> range:
        return range(len(self.alpha))

    def succ(self, d: int) -> int:
        """Exit dart following exit dart ``d`` along the curve."""
        return self.alpha[d] ^ 2

    def face_next(self, d: int) -> int:
        return rotate(self.alpha[d])

    def _compute_faces(self) -> None:
        face_of = [-1] * len(self.alpha)
        faces = []
        alpha = self.alpha
        for d in range(len(alpha)):
            if face_of[d] >= 0:
                continue
            orbit = []
            e = d
            while face_of[e] < 0:
                face_of[e] = len(faces)
                orbit.append(e)
                e = rotate(alpha[e])
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
        if self.n == 0:
            return self.loops + 1
        return len(self.faces) + self.loops

    @property
    def outer_face(self) -> int | None:
        if self.outer is None:
            return None
        return self.face_of[self.outer]

    def vertex_components(self) -> list[list[int]]:
        """Connected components of the darted part, as vertex lists."""
        n = self.n
        seen = [False] * n
        comps = []
        for s in range(n):
            if seen[s]:
                continue
            seen[s] = True
            stack = [s]
            comp = []
            while stack:
                v = stack.pop()
                comp.append(v)
                for k in range(4):
                    w = self.alpha[4 * v + k] >> 2
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        if self.n == 0:
            return self.loops <= 1
        return self.loops == 0 and len(self.vertex_components()) == 1

    def straight_orbits(self) -> list[list[int]]:
        """Curve components of the darted part, each as a list of exit darts.

        Each strand is listed once, in one direction: an orbit of ``succ`` and
        the orbit of its reversal cover the same edges.
        """
        used = [False] * len(self.alpha)
        orbits = []
        start_order = list(self.darts())
        if self.basepoint is not None:
            start_order.remove(self.basepoint)
            start_order.insert(0, self.basepoint)
        for d in start_order:
            if used[d]:
                continue
            orbit = []
            e = d
            while not used[e]:
                used[e] = True
                # the reverse traversal uses the partner darts of this edge
                used[self.alpha[e]] = True
                orbit.append(e)
                e = self.succ(e)
            orbits.append(orbit)
        return orbits

    def component_count(self) -> int:
        """Number of closed curves (straight-ahead components), loops included."""
        return len(self.straight_orbits()) + self.loops

    def is_unicursal(self) -> bool:
        if self.n == 0:
            return self.loops == 1
        if self.loops:
            return False
        d = self.basepoint
        length = 1
        e = self.succ(d)
        while e != d:
            e = self.succ(e)
            length += 1
        return length == 2 * self.n

    def require_unicursal(self) -> None:
        if not self.is_unicursal():
            raise NotUnicursalError()

    def validate(self) -> None:
        alpha = self.alpha
        size = len(alpha)
        for d, e in enumerate(alpha):
            if not 0 <= e < size:
                raise ValidationError(f"alpha image {e} of dart {d} out of range")
            if e == d:
                raise ValidationError("alpha not fixed-point-free")
            if alpha[e] != d:
                raise ValidationError("alpha not an involution")
        if size == 0:
            if self.loops < 1:
                raise ValidationError("empty map needs at least one circle")
            return
        for ref in (self.basepoint, self.outer):
            if not 0 <= ref < size:
                raise ValidationError("basepoint/outer dart out of range")
        comps = self.vertex_components()
        face_of = self.face_of
        for comp in comps:
            fs = {face_of[4 * v + k] for v in comp for k in range(4)}
            if len(fs) != len(comp) + 2:
                raise ValidationError(
                    f"wrong face count: {len(fs)} faces for {len(comp)} vertices (expected n + 2)"
                )

    # ------------------------------------------------------------------
    # derived constructions

    def with_basepoint(self, d: int) -> "CurveMap":
        return CurveMap(self.alpha, d, self.outer, self.loops, check=False)

    def with_outer(self, d: int) -> "CurveMap":
        return CurveMap(self.alpha, self.basepoint, d, self.loops, check=False)

    def reversed(self) -> "CurveMap":
        """Same curve traversed backwards (basepoint stays on the same edge)."""
        if self.n == 0:
            return self
        return self.with_basepoint(self.alpha[self.basepoint])

    def mirror(self) -> "CurveMap":
        """Reflection: all rotations reversed (slot s becomes slot -s)."""
        if self.n == 0:
            return self

        def m(d: int) -> int:
            return (d & ~3) | ((-d) & 3)

        alpha = [0] * len(self.alpha)
        for d, e in enumerate(self.alpha):
            alpha[m(d)] = m(e)
        # the face right of d becomes the face left of d; use the partner dart
        return CurveMap(alpha, m(self.basepoint), m(self.alpha[self.outer]), self.loops, check=False)

    def relabel(self, perm: Sequence[int], slot_shift: Sequence[int] | None = None) -> "CurveMap":
        """Rename vertex v to perm[v], optionally rotating its slots."""
        shift = slot_shift or [0] * self.n

        def f(d: int) -> int:
            v = d >> 2
            return 4 * perm[v] + ((d + shift[v]) & 3)

        alpha = [0] * len(self.alpha)
        for d, e in enumerate(self.alpha):
            alpha[f(d)] = f(e)
        return CurveMap(alpha, f(self.basepoint), f(self.outer), self.loops, check=False)

    def outer_basepoint(self) -> tuple["CurveMap", bool]:
        """Curve with the basepoint moved onto an outer-face edge.

        Returns the curve and whether the basepoint was relocated.  The
        traversal direction is kept.
        """
        if self.n == 0:
            return self, False
        outer = self.outer_face
        face_of = self.face_of
        b = self.basepoint

        def on_outer(d: int) -> bool:
            return face_of[d] == outer or face_of[self.alpha[d]] == outer

        if on_outer(b):
            return self, False
        e = self.succ(b)
        while e != b:
            if on_outer(e):
                return self.with_basepoint(e), True
            e = self.succ(e)
        # not unicursal: pick an outer dart in any direction
        for d in self.faces[outer]:
            return self.with_basepoint(d), True
        raise ValidationError("outer face has no darts")  # pragma: no cover

    def basepoint_on_outer(self) -> bool:
        if self.n == 0:
            return True
        outer = self.outer_face
        b = self.basepoint
        return self.face_of[b] == outer or self.face_of[self.alpha[b]] == outer

    def to_plane_graph(self):
        from .planegraph import PlaneGraph

        n = self.n
        rotations = [[4 * v + k for k in range(4)] for v in range(n)]
        return PlaneGraph.from_darts(rotations, self.alpha, outer=self.outer)

    # ------------------------------------------------------------------
    # equality / hashing by canonical key

    def key(self, mirror: bool = True) -> bytes:
        return canonical_form(self, mirror)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CurveMap):
            return NotImplemented
        return (
            self.alpha == other.alpha
            and self.basepoint == other.basepoint
            and self.outer == other.outer
            and self.loops == other.loops
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.alpha, self.basepoint, self.outer, self.loops))
        return self._hash

    def __repr__(self) -> str:
        if self.n == 0:
            return f"CurveMap.circle() x{self.loops}" if self.loops != 1 else "CurveMap.circle()"
        return f"<CurveMap n={self.n} faces={len(self.faces)} loops={self.loops}>"


# ----------------------------------------------------------------------
# local surgery


def rewire(
    curve: CurveMap,
    removed: Iterable[int],
    new_vertices: int,
    links: dict[int, int],
    extra_pairs: Iterable[tuple[int, int]] = (),
    outer_hint: int | None = None,
) -> CurveMap:
    """Replace a neighbourhood of a map.

    ``removed`` lists old vertices that disappear.  New vertices are appended
    after the surviving old ones; their darts are addressed here as
    ``("new", 4*i + slot)`` encoded as ``-1 - (4*i + slot)``.  ``links`` is a
    symmetric pairing among removed old darts and new darts that says how the
    strand pieces inside the neighbourhood connect.  Removed darts without a
    link must only be alpha-paired with other dead darts.  ``extra_pairs``
    re-pairs surviving/new darts directly.
    """
    alpha = curve.alpha
    removed = set(removed)
    old_n = curve.n
    keep = [v for v in range(old_n) if v not in removed]
    newid = {v: i for i, v in enumerate(keep)}
    base_new = len(keep)
    size = 4 * (len(keep) + new_vertices)

    def is_removed(d: int) -> bool:
        return d >= 0 and (d >> 2) in removed

    def translate(d: int) -> int:
        if d < 0:
            return 4 * base_new + (-1 - d)
        return 4 * newid[d >> 2] + (d & 3)

    new_alpha = [-1] * size
    visited: set[int] = set()

    def hop(y: int) -> int:
        if y not in links:
            raise ValidationError("surgery reached a dead dart")
        z = links[y]
        visited.add(y)
        visited.add(z)
        return z

    def through(z: int) -> int:
        """Endpoint reached from removed dart ``z`` entered through a link."""
        start = z
        while True:
            w = alpha[z]
            if not is_removed(w):
                return w
            z = hop(w)
            if z < 0 or not is_removed(z):
                return z
            if z == start:  # pragma: no cover - open strands always end
                raise ValidationError("surgery produced a closed strand")

    pairs: list[tuple[int, int]] = list(extra_pairs)
    paired_src = {x for p in pairs for x in p}
    for v in keep:
        for k in range(4):
            d = 4 * v + k
            if d in paired_src:
                continue
            e = alpha[d]
            if is_removed(e):
                e = hop(e)
                if e >= 0 and is_removed(e):
                    e = through(e)
            pairs.append((d, e))
    for i in range(4 * new_vertices):
        d = -1 - i
        if d in paired_src:
            continue
        e = hop(d)
        if e >= 0 and is_removed(e):
            e = through(e)
        pairs.append((d, e))

    for a, b in pairs:
        ta, tb = translate(a), translate(b)
        if new_alpha[ta] not in (-1, tb) or new_alpha[tb] not in (-1, ta):
            raise ValidationError("surgery produced inconsistent pairing")
        new_alpha[ta] = tb
        new_alpha[tb] = ta

    # cycles made only of removed darts become free circles
    loops = curve.loops
    for y in links:
        if y >= 0 and y not in visited:
            loops += 1
            z = y
            while True:
                z = hop(z)
                z = alpha[z]
                if z == y:
                    break

    if size == 0:
        return CurveMap((), loops=max(loops, 1))

    def survive(d: int | None) -> int | None:
        if d is None:
            return None
        if not is_removed(d):
            return translate(d)
        return None

    # basepoint: first surviving dart along the old traversal
    bp = survive(curve.basepoint)
    if bp is None and curve.basepoint is not None:
        e = curve.succ(curve.basepoint)
        while e != curve.basepoint:
            if not is_removed(e):
                bp = translate(e)
                break
            e = curve.succ(e)
    if bp is None:
        bp = 0
    outer = None
    if outer_hint is not None:
        outer = translate(outer_hint)
    if outer is None and curve.outer is not None:
        # nearest face (in the dual) that keeps a surviving dart
        faces, face_of = curve.faces, curve.face_of
        start = face_of[curve.outer]
        seen = {start}
        queue = deque([start])
        while queue and outer is None:
            f = queue.popleft()
            for d in faces[f]:
                if not is_removed(d):
                    outer = translate(d)
                    break
                g = face_of[alpha[d]]
                if g not in seen:
                    seen.add(g)
                    queue.append(g)
    if outer is None:
        outer = 0
    return CurveMap(new_alpha, bp, outer, loops)


# ----------------------------------------------------------------------
# CMAP v1 text format


def _parse_dart(tok: str, lineno: int) -> int:
    try:
        v, s = tok.split(".")
        v, s = int(v), int(s)
    except ValueError:
        raise CmapParseError(f"line {lineno}: bad dart reference {tok!r}") from None
    if s < 0:
        raise CmapParseError(f"line {lineno}: negative slot in {tok!r}")
    return v, s


def _content_lines(text: str) -> Iterator[tuple[int, list[str]]]:
    for i, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield i, line.split()


def parse_cmap(text: str) -> dict:
    """Parse CMAP v1 text into a raw record (no validation)."""
    lines = list(_content_lines(text))
    if not lines or lines[0][1] != ["cmap", "1"]:
        raise CmapParseError("line 1: expected 'cmap 1'")
    if len(lines) < 2 or len(lines[1][1]) != 2 or lines[1][1][0] != "vertices":
        raise CmapParseError("line 2: expected 'vertices <n>'")
    try:
        n = int(lines[1][1][1])
    except ValueError:
        raise CmapParseError(f"line {lines[1][0]}: bad vertex count") from None
    if n < 0:
        raise CmapParseError(f"line {lines[1][0]}: negative vertex count")
    rest = lines[2:]
    if n == 0:
        circles = 0
        for lineno, toks in rest:
            if toks == ["circle"]:
                circles += 1
            else:
                raise CmapParseError(f"line {lineno}: expected 'circle'")
        if circles == 0:
            raise CmapParseError("empty map must be marked 'circle'")
        return {"n": 0, "vertices": {}, "base": None, "outer": None, "circles": circles, "tagged": False}
    vertices: dict[int, list[tuple[int, int]]] = {}
    base = outer = None
    circles = 0
    tagged = False
    for lineno, toks in rest:
        head = toks[0]
        if head == "v":
            if len(toks) < 3:
                raise CmapParseError(f"line {lineno}: short vertex line")
            try:
                vid = int(toks[1])
            except ValueError:
                raise CmapParseError(f"line {lineno}: bad vertex id") from None
            refs = toks[2:]
            # degree-tagged form: v <id> <d> <nbr>*d
            if "." not in refs[0]:
                try:
                    deg = int(refs[0])
                except ValueError:
                    raise CmapParseError(f"line {lineno}: bad degree") from None
                refs = refs[1:]
                tagged = True
                if len(refs) != deg:
                    raise CmapParseError(f"line {lineno}: degree {deg} but {len(refs)} darts")
            if vid in vertices:
                raise CmapParseError(f"line {lineno}: duplicate vertex {vid}")
            vertices[vid] = [_parse_dart(t, lineno) for t in refs]
        elif head in ("base", "outer"):
            if len(toks) != 2:
                raise CmapParseError(f"line {lineno}: expected '{head} <v.s>'")
            ref = _parse_dart(toks[1], lineno)
            if head == "base":
                base = ref
            else:
                outer = ref
        elif head == "circle":
            circles += 1
        else:
            raise CmapParseError(f"line {lineno}: unknown record {head!r}")
    if sorted(vertices) != list(range(n)):
        raise CmapParseError(f"vertex ids must be exactly 0..{n - 1}")
    return {"n": n, "vertices": vertices, "base": base, "outer": outer, "circles": circles, "tagged": tagged}


def load_cmap(text: str, require_unicursal: bool = False) -> CurveMap:
    rec = parse_cmap(text)
    if rec["n"] == 0:
        curve = CurveMap((), loops=rec["circles"])
        return curve
    n = rec["n"]
    alpha = [0] * (4 * n)
    for v, refs in rec["vertices"].items():
        if len(refs) != 4:
            raise ValidationError(f"vertex {v} has degree {len(refs)}, expected 4")
        for s, (w, t) in enumerate(refs):
            if not (0 <= w < n and 0 <= t < 4):
                raise ValidationError(f"dart {w}.{t} does not exist")
            alpha[4 * v + s] = 4 * w + t
    base = rec["base"] or (0, 0)
    outer = rec["outer"] or base
    for w, t in (base, outer):
        if not (0 <= w < n and 0 <= t < 4):
            raise ValidationError(f"dart {w}.{t} does not exist")
    curve = CurveMap(alpha, 4 * base[0] + base[1], 4 * outer[0] + outer[1], rec["circles"])
    if require_unicursal:
        curve.require_unicursal()
    return curve


def dump_cmap(curve: CurveMap) -> str:
    lines = ["cmap 1", f"vertices {curve.n}"]
    if curve.n == 0:
        lines.extend(["circle"] * max(curve.loops, 1))
        return "\n".join(lines) + "\n"
    for v in range(curve.n):
        refs = " ".join(str(DartRef.of(curve.alpha[4 * v + k])) for k in range(4))
        lines.append(f"v {v} {refs}")
    lines.append(f"base {DartRef.of(curve.basepoint)}")
    lines.append(f"outer {DartRef.of(curve.outer)}")
    lines.extend(["circle"] * curve.loops)
    return "\n".join(lines) + "\n"


# ----------------------------------------------------------------------
# Gauss codes


@dataclass(frozen=True)
class SignedGaussCode:
    """Crossings in traversal order from the basepoint, with Gauss signs.

    ``sequence`` holds crossing ids (each twice); ``signs[x]`` is +1 or -1.
    """

    sequence: tuple[int, ...]
    signs: dict

    @property
    def n(self) -> int:
        return len(self.sequence) // 2

    @property
    def word(self) -> tuple[tuple[int, int], ...]:
        seen: set[int] = set()
        out = []
        for x in self.sequence:
            out.append((x, 2 if x in seen else 1))
            seen.add(x)
        return tuple(out)

    def positions(self) -> dict:
        pos: dict = {}
        for i, x in enumerate(self.sequence):
            pos.setdefault(x, []).append(i)
        return pos

    def crossings(self) -> list:
        """Crossing ids in order of first occurrence."""
        seen = []
        marks = set()
        for x in self.sequence:
            if x not in marks:
                marks.add(x)
                seen.append(x)
        return seen

    def interleave_matrix(self) -> tuple[list, list[list[int]]]:
        """(crossings in first-occurrence order, 0/1 interleaving matrix)."""
        order = self.crossings()
        pos = self.positions()
        first = [pos[x][0] for x in order]
        second = [pos[x][1] for x in order]
        return order, kernels.interleave_matrix(first, second)

    def to_text(self) -> str:
        labels = {x: _label(i) for i, x in enumerate(self.crossings())}
        return " ".join(f"{labels[x]}{'+' if self.signs[x] > 0 else '-'}" for x in self.sequence)

    @classmethod
    def from_text(cls, text: str) -> "SignedGaussCode":
        seq = []
        signs: dict = {}
        for tok in text.split():
            if len(tok) < 2 or tok[-1] not in "+-":
                raise CmapParseError(f"bad Gauss token {tok!r}")
            label, s = tok[:-1], (1 if tok[-1] == "+" else -1)
            if label in signs and signs[label] != s:
                raise ValidationError(f"crossing {label} has inconsistent signs")
            signs[label] = s
            seq.append(label)
        counts: dict = {}
        for x in seq:
            counts[x] = counts.get(x, 0) + 1
        if any(c != 2 for c in counts.values()):
            raise ValidationError("every crossing must occur exactly twice")
        return cls(tuple(seq), signs)

    def flipped(self) -> "SignedGaussCode":
        return SignedGaussCode(self.sequence, {x: -s for x, s in self.signs.items()})


def _label(i: int) -> str:
    letters = ""
    i += 1
    while i:
        i, r = divmod(i - 1, 26)
        letters = chr(ord("a") + r) + letters
    return letters


def traversal(curve: CurveMap) -> list[int]:
    """Exit darts e_0 = basepoint, e_1, ..., e_{2n-1} along the curve."""
    curve.require_unicursal()
    if curve.n == 0:
        return []
    out = [curve.basepoint]
    e = curve.succ(curve.basepoint)
    while e != curve.basepoint:
        out.append(e)
        e = curve.succ(e)
    return out


def passages(curve: CurveMap) -> list[tuple[int, int, int]]:
    """(vertex, entry dart, exit dart) for each passage, in order."""
    exits = traversal(curve)
    m = len(exits)
    return [(curve.alpha[exits[k]] >> 2, curve.alpha[exits[k]], exits[(k + 1) % m]) for k in range(m)]


def gauss_code(curve: CurveMap) -> SignedGaussCode:
    """Signed Gauss code read from the basepoint.

    sgn(x) = +1 iff the entry dart of the second passage is the
    counterclockwise successor of the exit dart of the first passage.
    """
    seq = []
    first_exit: dict[int, int] = {}
    signs: dict[int, int] = {}
    for v, entry, exit_ in passages(curve):
        seq.append(v)
        if v not in first_exit:
            first_exit[v] = exit_
        else:
            signs[v] = 1 if entry == rotate(first_exit[v]) else -1
    return SignedGaussCode(tuple(seq), signs)


def interleaved(code: SignedGaussCode, x, y) -> bool:
    if x == y:
        raise ValueError("invalid arguments: x and y must differ")
    pos = code.positions()
    a, b = pos[x]
    c, d = pos[y]
    return (a < c < b) != (a < d < b)


# ----------------------------------------------------------------------
# winding numbers


def _label_faces(curve: CurveMap, forward: Iterable[int]) -> list[int]:
    """Face labels with the outer face at 0, where crossing an edge traversed
    along dart d (from right to left of d) adds 1.  Edges not listed in
    ``forward`` (as one of their darts) contribute 0."""
    faces = curve.faces
    face_of = curve.face_of
    alpha = curve.alpha
    step = [0] * len(alpha)
    for d in forward:
        step[d] = 1  # right(d) -> left(d)
        step[alpha[d]] = -1
    labels = [None] * len(faces)
    start = curve.outer_face
    labels[start] = 0
    queue = deque([start])
    while queue:
        f = queue.popleft()
        for d in faces[f]:
            g = face_of[alpha[d]]
            val = labels[f] + step[d]
            if labels[g] is None:
                labels[g] = val
                queue.append(g)
            elif labels[g] != val:
                raise ValidationError("inconsistent winding labels (map not planar?)")
    return labels


@dataclass(frozen=True)
class AlexanderNumbering:
    face_values: dict
    vertex_values: dict
    edge_values: dict  # keyed by the smaller dart of each edge

    def face_value_of_dart(self, curve: CurveMap, d: int) -> int:
        return self.face_values[curve.face_of[d]]


def alexander_numbering(curve: CurveMap) -> AlexanderNumbering:
    """Winding number of every face, vertex and edge.

    Each straight-ahead component is oriented along its own traversal
    (for a unicursal curve: from the basepoint).
    """
    if curve.n == 0:
        if not curve.is_connected():
            raise ValidationError("alexander numbering needs a connected map")
        return AlexanderNumbering({0: 0, 1: 1}, {}, {})
    if not curve.is_connected():
        raise ValidationError("alexander numbering needs a connected map")
    forward = [d for orbit in curve.straight_orbits() for d in orbit]
    labels = _label_faces(curve, forward)
    face_values = dict(enumerate(labels))
    face_of = curve.face_of
    vertex_values = {}
    for v in range(curve.n):
        total = sum(labels[face_of[4 * v + k]] for k in range(4))
        vertex_values[v] = Fraction(total, 4)
    edge_values = {}
    for d in curve.darts():
        e = curve.alpha[d]
        if d < e:
            edge_values[d] = Fraction(labels[face_of[d]] + labels[face_of[e]], 2)
    return AlexanderNumbering(face_values, vertex_values, edge_values)


def edge_value(curve: CurveMap, numbering: AlexanderNumbering, d: int) -> Fraction:
    return numbering.edge_values[min(d, curve.alpha[d])]


def _require_outer_base(curve: CurveMap) -> None:
    curve.require_unicursal()
    if not curve.basepoint_on_outer():
        raise ValidationError("basepoint not on outer face")


def subloop_windings(curve: CurveMap) -> dict[int, Fraction]:
    """wind(gamma_x, x) for every crossing x (basepoint on the outer face)."""
    _require_outer_base(curve)
    exits = traversal(curve)
    m = len(exits)
    alpha = curve.alpha
    face_of = curve.face_of
    first: dict[int, int] = {}
    result: dict[int, Fraction] = {}
    for k in range(m):
        v = alpha[exits[k]] >> 2
        if v not in first:
            first[v] = k
            continue
        k1, k2 = first[v], k
        # gamma_x leaves x along exits[k1+1] and returns along exits[k2]
        labels = _label_faces(curve, exits[k1 + 1 : k2 + 1])
        x1 = exits[k1 + 1]
        e2 = alpha[exits[k2]]
        if e2 == rotate(x1):
            tip = face_of[e2]
        else:
            tip = face_of[x1]
        other = next(face_of[4 * v + j] for j in range(4) if face_of[4 * v + j] != tip)
        result[v] = Fraction(labels[tip] + labels[other], 2)
    return result


def subloop_winding(curve: CurveMap, x: int) -> Fraction:
    if curve.n == 0 or not 0 <= x < curve.n:
        raise ValueError(f"no crossing {x}")
    return subloop_windings(curve)[x]


def dual_diameter(curve: CurveMap) -> int:
    """Diameter of the face adjacency graph."""
    if curve.n == 0:
        if not curve.is_connected():
            raise ValidationError("dual diameter needs a connected map")
        return 1
    if not curve.is_connected():
        raise ValidationError("dual diameter needs a connected map")
    faces = curve.faces
    face_of = curve.face_of
    adj = [set() for _ in faces]
    for f, orbit in enumerate(faces):
        for d in orbit:
            g = face_of[curve.alpha[d]]
            if g != f:
                adj[f].add(g)
    best = 0
    for s in range(len(faces)):
        dist = [-1] * len(faces)
        dist[s] = 0
        queue = deque([s])
        while queue:
            f = queue.popleft()
            for g in adj[f]:
                if dist[g] < 0:
                    dist[g] = dist[f] + 1
                    queue.append(g)
        best = max(best, max(dist))
    return best


# ----------------------------------------------------------------------
# canonical form


def _component_maps(curve: CurveMap) -> list[tuple[list[int], int]]:
    comps = curve.vertex_components()
    out = []
    for comp in comps:
        index = {v: i for i, v in enumerate(comp)}
        alpha = []
        for v in comp:
            for k in range(4):
                e = curve.alpha[4 * v + k]
                alpha.append(4 * index[e >> 2] + (e & 3))
        out.append((alpha, len(comp)))
    return out


def canonical_form(curve: CurveMap, include_mirror: bool = True) -> bytes:
    """Byte key equal for maps isomorphic as rotation systems.

    Basepoint and outer face are ignored.  With ``include_mirror`` a map and
    its reflection share the key.
    """
    from array import array

    parts = []
    for alpha, n in _component_maps(curve):
        code = kernels.canonical_code(alpha, n, include_mirror)
        parts.append((n, code))
    parts.sort()
    buf = array("I", [curve.loops, len(parts)])
    for n, code in parts:
        buf.append(n)
        buf.extend(code)
    return buf.tobytes()
