"""Local moves on 4-regular maps: homotopy moves, medial electrical moves
and smoothings.

Decreasing moves and 3->3 flips are located by a face (any dart whose right
face is the site; stored as the smallest such dart).  Increasing moves carry
their placement in ``darts`` and ``choice``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .curvemap import CurveMap, DartRef, ValidationError, gauss_code, rewire

KINDS = ("1->0", "0->1", "2->0", "0->2", "3->3", "2->1", "1->2")
HOMOTOPY_KINDS = frozenset({"1->0", "0->1", "2->0", "0->2", "3->3"})
DECREASING_HOMOTOPY = frozenset({"1->0", "2->0", "3->3"})
MEDIAL_KINDS = frozenset({"1->0", "2->1", "3->3"})
FACE_KINDS = frozenset({"1->0", "2->0", "2->1", "3->3"})
INVERSE_KIND = {"1->0": "0->1", "0->1": "1->0", "2->0": "0->2", "0->2": "2->0", "3->3": "3->3", "2->1": "1->2", "1->2": "2->1"}
_DELTA_N = {"1->0": -1, "0->1": 1, "2->0": -2, "0->2": 2, "3->3": 0, "2->1": -1, "1->2": 1}


class InvalidSite(ValueError):
    def __init__(self, msg: str = "invalid site"):
        super().__init__(msg)


@dataclass(frozen=True, order=True)
class MoveSite:
    kind: str
    darts: tuple[int, ...] = ()
    choice: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown move kind {self.kind!r}")

    @property
    def face(self) -> int | None:
        return self.darts[0] if self.darts else None

    def to_json(self) -> dict:
        out = {"kind": self.kind, "face": str(DartRef.of(self.darts[0])) if self.darts else None}
        if self.kind not in FACE_KINDS:
            out["darts"] = [str(DartRef.of(d)) for d in self.darts]
            out["choice"] = self.choice
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "MoveSite":
        def parse(ref: str) -> int:
            v, s = ref.split(".")
            return 4 * int(v) + int(s)

        if obj["kind"] in FACE_KINDS:
            return cls(obj["kind"], (parse(obj["face"]),))
        return cls(obj["kind"], tuple(parse(r) for r in obj.get("darts", ())), int(obj.get("choice", 0)))


# ----------------------------------------------------------------------
# enumeration


def _distinct_vertices(face: Sequence[int]) -> bool:
    return len({d >> 2 for d in face}) == len(face)


def enumerate_moves(curve: CurveMap, kinds: Iterable[str] = DECREASING_HOMOTOPY) -> list[MoveSite]:
    """All sites of the requested kinds, in a deterministic order."""
    kinds = set(kinds)
    unknown = kinds - set(KINDS)
    if unknown:
        raise ValueError(f"unknown move kinds {sorted(unknown)}")
    sites: list[MoveSite] = []
    if curve.n == 0:
        if "0->1" in kinds and curve.loops == 1:
            sites += [MoveSite("0->1", (), 0), MoveSite("0->1", (), 1)]
        if "0->2" in kinds and curve.loops == 1:
            sites.append(MoveSite("0->2", ()))
        return sites
    alpha = curve.alpha
    faces = curve.faces
    for face in faces:
        k = len(face)
        rep = (min(face),)
        if k == 1 and "1->0" in kinds:
            sites.append(MoveSite("1->0", rep))
        elif k == 2 and _distinct_vertices(face):
            for kind in ("2->0", "2->1"):
                if kind in kinds:
                    sites.append(MoveSite(kind, rep))
        elif k == 3 and "3->3" in kinds and _distinct_vertices(face):
            sites.append(MoveSite("3->3", rep))
    if "0->1" in kinds:
        for d in range(len(alpha)):
            if d < alpha[d]:
                sites += [MoveSite("0->1", (d,), 0), MoveSite("0->1", (d,), 1)]
    if "0->2" in kinds:
        for face in faces:
            for d1 in face:
                for d2 in face:
                    if d1 == d2:
                        sites.append(MoveSite("0->2", (d1, d1)))
                    elif d2 != alpha[d1]:
                        sites.append(MoveSite("0->2", (d1, d2)))
    if "1->2" in kinds:
        for w in range(curve.n):
            sites += [MoveSite("1->2", (4 * w,), 0), MoveSite("1->2", (4 * w,), 1)]
    return sites


def enumerate_medial_moves(curve: CurveMap) -> list[MoveSite]:
    return enumerate_moves(curve, MEDIAL_KINDS)


# ----------------------------------------------------------------------
# application


def _face_at(curve: CurveMap, site: MoveSite, degree: int) -> tuple[int, ...]:
    if not site.darts or not 0 <= site.darts[0] < len(curve.alpha):
        raise InvalidSite()
    face = curve.faces[curve.face_of[site.darts[0]]]
    if len(face) != degree:
        raise InvalidSite()
    if degree > 1 and not _distinct_vertices(face):
        raise InvalidSite()
    # start the orbit at the named dart
    i = face.index(site.darts[0])
    return face[i:] + face[:i]


def _at(v: int, s: int) -> int:
    return 4 * v + (s & 3)


def _new(i: int) -> int:
    return -1 - i


def _link(links: dict[int, int], a: int, b: int) -> None:
    links[a] = b
    links[b] = a


def apply_move(curve: CurveMap, site: MoveSite) -> CurveMap:
    """Apply ``site`` and return a fresh map; raises ``InvalidSite`` if stale."""
    kind = site.kind
    alpha = curve.alpha
    links: dict[int, int] = {}
    if kind == "1->0":
        (d,) = _face_at(curve, site, 1)
        v, s = d >> 2, d & 3
        _link(links, _at(v, s + 1), _at(v, s + 2))
        return rewire(curve, [v], 0, links)

    if kind in ("2->0", "2->1"):
        d1, d2 = _face_at(curve, site, 2)
        u, i = d1 >> 2, d1 & 3
        v, j = alpha[d1] >> 2, alpha[d1] & 3
        if kind == "2->0":
            _link(links, _at(u, i + 2), _at(v, j + 2))
            _link(links, _at(u, i + 1), _at(v, j + 3))
            return rewire(curve, [u, v], 0, links)
        ports = [_at(u, i + 1), _at(u, i + 2), _at(v, j + 2), _at(v, j + 3)]
        for k, p in enumerate(ports):
            _link(links, _new(k), p)
        hint = _new(0) if curve.face_of[curve.outer] == curve.face_of[d1] else None
        return rewire(curve, [u, v], 1, links, outer_hint=hint)

    if kind == "3->3":
        da, db, dc = _face_at(curve, site, 3)
        a, sa = da >> 2, da & 3
        b, sb = db >> 2, db & 3
        c, sc = dc >> 2, dc & 3
        ports = [_at(a, sa + 1), _at(a, sa + 2), _at(c, sc + 1), _at(c, sc + 2), _at(b, sb + 1), _at(b, sb + 2)]
        X, Y, Z = 0, 4, 8
        # each new vertex takes two consecutive ports on slots 0 and 1
        for base, (p, q) in zip((X, Y, Z), ((1, 2), (3, 4), (5, 0))):
            _link(links, _new(base), ports[p])
            _link(links, _new(base + 1), ports[q])
        inner = [(_new(X + 2), _new(Y + 3)), (_new(X + 3), _new(Z + 2)), (_new(Y + 2), _new(Z + 3))]
        hint = _new(X + 3) if curve.face_of[curve.outer] == curve.face_of[da] else None
        return rewire(curve, [a, b, c], 3, links, extra_pairs=inner, outer_hint=hint)

    if kind == "0->1":
        if site.choice not in (0, 1):
            raise InvalidSite()
        if curve.n == 0:
            if curve.loops != 1 or site.darts:
                raise InvalidSite()
            return CurveMap([1, 0, 3, 2], basepoint=2 + site.choice, outer=0)
        if len(site.darts) != 1 or not 0 <= site.darts[0] < len(alpha):
            raise InvalidSite()
        d = site.darts[0]
        e = alpha[d]
        a, b = (_new(2), _new(3)) if site.choice == 0 else (_new(3), _new(2))
        pairs = [(_new(0), _new(1)), (d, a), (e, b)]
        return rewire(curve, [], 1, {}, extra_pairs=pairs)

    if kind == "0->2":
        if curve.n == 0:
            if curve.loops != 1 or site.darts:
                raise InvalidSite()
            # the circle folded over itself: a bigon with a loop at one end
            return CurveMap([3, 5, 4, 0, 2, 1, 7, 6], basepoint=0, outer=0)
        if len(site.darts) != 2:
            raise InvalidSite()
        d1, d2 = site.darts
        size = len(alpha)
        if not (0 <= d1 < size and 0 <= d2 < size) or d2 == alpha[d1]:
            raise InvalidSite()
        if curve.face_of[d1] != curve.face_of[d2]:
            raise InvalidSite()
        X, Y = 0, 4
        if d1 == d2:
            # one edge pushed across itself: a bigon plus a loop at its far end
            # (the loop at the near end gives an isomorphic map)
            end = alpha[d1]
            pairs = [(end, _new(X)), (_new(X + 1), _new(Y + 1)), (_new(X + 2), _new(Y)), (d1, _new(X + 3)), (_new(Y + 2), _new(Y + 3))]
            return rewire(curve, [], 2, {}, extra_pairs=pairs)
        pairs = [
            (alpha[d2], _new(X + 0)),
            (_new(X + 1), _new(Y + 1)),
            (_new(X + 2), _new(Y + 0)),
            (d1, _new(X + 3)),
            (d2, _new(Y + 2)),
            (alpha[d1], _new(Y + 3)),
        ]
        return rewire(curve, [], 2, {}, extra_pairs=pairs)

    if kind == "1->2":
        if len(site.darts) != 1 or not 0 <= site.darts[0] < len(alpha) or site.choice not in (0, 1):
            raise InvalidSite()
        w = site.darts[0] >> 2
        c = site.choice
        U, V = 0, 4
        for k in range(4):
            _link(links, _new((U if k < 2 else V) + 2 + k % 2), _at(w, c + k))
        pairs = [(_new(U), _new(V + 1)), (_new(U + 1), _new(V))]
        return rewire(curve, [w], 2, links, extra_pairs=pairs)

    raise InvalidSite(f"unsupported kind {kind}")  # pragma: no cover


def apply_medial_move(curve: CurveMap, site: MoveSite) -> CurveMap:
    if site.kind not in MEDIAL_KINDS | {"0->1", "1->2"}:
        raise InvalidSite(f"{site.kind} is not a medial electrical move")
    return apply_move(curve, site)


def smooth(curve: CurveMap, x: int, choice: int) -> tuple[CurveMap, int]:
    """Smooth crossing x; choice 0 joins slots 0-1 and 2-3, choice 1 joins 1-2 and 3-0.

    Returns the new map and its number of curve components.
    """
    if not 0 <= x < curve.n:
        raise ValueError(f"no crossing {x}")
    links: dict[int, int] = {}
    if choice == 0:
        _link(links, _at(x, 0), _at(x, 1))
        _link(links, _at(x, 2), _at(x, 3))
    elif choice == 1:
        _link(links, _at(x, 1), _at(x, 2))
        _link(links, _at(x, 3), _at(x, 0))
    else:
        raise ValueError("choice must be 0 or 1")
    out = rewire(curve, [x], 0, links)
    return out, out.component_count()


def smoothing(curve: CurveMap, choices: dict[int, int]) -> CurveMap:
    """Smooth several crossings at once; ``choices`` maps crossing to choice."""
    out = curve
    # highest index first: rewire keeps the relative order of survivors
    for x in sorted(choices, reverse=True):
        out, _ = smooth(out, x, choices[x])
    return out


def connected_smoothing_choice(curve: CurveMap, x: int) -> int:
    """The choice at x that keeps a unicursal curve in one piece."""
    for choice in (0, 1):
        if smooth(curve, x, choice)[1] == 1:
            return choice
    raise ValidationError("no component-preserving smoothing")  # pragma: no cover


def inverse(curve_before: CurveMap, site: MoveSite, curve_after: CurveMap) -> MoveSite:
    """A site on ``curve_after`` that undoes ``site`` up to isomorphism.

    Found by searching the inverse kind for a site whose result has the
    canonical form of ``curve_before``.
    """
    target = curve_before.key()
    kind = INVERSE_KIND[site.kind]
    for cand in enumerate_moves(curve_after, {kind}):
        if apply_move(curve_after, cand).key() == target:
            return cand
    raise InvalidSite("no inverse site found")


# ----------------------------------------------------------------------
# defect change prediction


def predict_delta(curve: CurveMap, site: MoveSite) -> int:
    if site.kind not in DECREASING_HOMOTOPY:
        raise ValueError("unsupported kind")
    if site.kind == "1->0":
        _face_at(curve, site, 1)
        return 0
    code = gauss_code(curve)
    pos = code.positions()

    def inter(x: int, y: int) -> bool:
        a, b = pos[x]
        c, d = pos[y]
        return (a < c < b) != (a < d < b)

    if site.kind == "2->0":
        d1, d2 = _face_at(curve, site, 2)
        return -2 if inter(d1 >> 2, d2 >> 2) else 0
    face = _face_at(curve, site, 3)
    xs = [d >> 2 for d in face]
    count = inter(xs[0], xs[1]) + inter(xs[1], xs[2]) + inter(xs[0], xs[2])
    return 2 if count % 2 == 0 else -2


# ----------------------------------------------------------------------
# traces


@dataclass(frozen=True)
class MoveStep:
    site: MoveSite
    defect_before: int | None
    defect_after: int | None
    n_after: int

    @property
    def delta(self) -> int | None:
        if self.defect_before is None or self.defect_after is None:
            return None
        return self.defect_after - self.defect_before

    def to_json(self) -> dict:
        out = self.site.to_json()
        out["delta"] = self.delta
        out["n_after"] = self.n_after
        return out


@dataclass
class MoveTrace:
    initial: CurveMap
    steps: list[MoveStep] = field(default_factory=list)
    final: CurveMap | None = None
    failed: bool = False
    reason: str = ""

    def __len__(self) -> int:
        return len(self.steps)

    @property
    def moves(self) -> int:
        return len(self.steps)

    def to_json(self) -> list[dict]:
        return [s.to_json() for s in self.steps]

    def replay(self) -> CurveMap:
        """Re-apply all steps to ``initial``, checking recorded defects."""
        from .defect import maybe_defect

        curve = self.initial
        for i, step in enumerate(self.steps):
            if maybe_defect(curve) != step.defect_before:
                raise ValidationError(f"step {i}: defect before does not match")
            curve = apply_move(curve, step.site)
            if maybe_defect(curve) != step.defect_after:
                raise ValidationError(f"step {i}: defect after does not match")
            if curve.n != step.n_after:
                raise ValidationError(f"step {i}: crossing count does not match")
        return curve

    def check_replay(self) -> bool:
        final = self.replay()
        return self.final is not None and final.key() == self.final.key()


def record(trace: MoveTrace, curve: CurveMap, site: MoveSite, after: CurveMap) -> None:
    from .defect import maybe_defect

    trace.steps.append(MoveStep(site, maybe_defect(curve), maybe_defect(after), after.n))


__all__ = [
    "KINDS",
    "HOMOTOPY_KINDS",
    "DECREASING_HOMOTOPY",
    "MEDIAL_KINDS",
    "InvalidSite",
    "MoveSite",
    "MoveStep",
    "MoveTrace",
    "enumerate_moves",
    "enumerate_medial_moves",
    "apply_move",
    "apply_medial_move",
    "smooth",
    "smoothing",
    "connected_smoothing_choice",
    "inverse",
    "predict_delta",
    "record",
]
