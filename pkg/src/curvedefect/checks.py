"""Invariant checks over a built-in corpus, and the verification tables."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd
from typing import Callable, Iterator

from .casson import KnotDiagram, casson_c2, expected_c2_exhaustive
from .curvemap import (
    CurveMap,
    alexander_numbering,
    dump_cmap,
    edge_value,
    gauss_code,
    load_cmap,
    traversal,
)
from .defect import defect_polyak, defect_report, defect_winding
from .generators import connected_sum, cycle_graph, cylindrical_grid, random_curve, rectangular_grid, torus_knot
from .moves import DECREASING_HOMOTOPY, apply_move, enumerate_moves, predict_delta
from .planegraph import (
    apply_electrical,
    dual,
    dual_site,
    dump_plane_graph,
    enumerate_electrical,
    load_plane_graph,
    medial,
    medial_site,
)
from .reduction import bounds_report, min_moves_search, reduce_curve, reduce_graph


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    ok: bool
    detail: str = ""


def curve_corpus(random_count: int = 30, max_n: int = 14) -> list[tuple[str, CurveMap]]:
    out = [("circle", CurveMap.circle())]
    for p, q in [(2, 3), (2, 5), (3, 4), (4, 3), (3, 5), (5, 4), (4, 5), (3, 7)]:
        out.append((f"T({p},{q})", torus_knot(p, q)))
    out.append(("T(3,4)#T(4,3)", connected_sum(torus_knot(3, 4), torus_knot(4, 3))))
    rng = random.Random(2024)
    for seed in range(random_count):
        out.append((f"random(seed={seed})", random_curve(rng.randint(1, max_n), seed)))
    return out


def graph_corpus() -> list[tuple[str, object]]:
    return [
        ("C1", cycle_graph(1)),
        ("C2", cycle_graph(2)),
        ("C3", cycle_graph(3)),
        ("grid(2,2)", rectangular_grid(2, 2)),
        ("grid(2,3)", rectangular_grid(2, 3)),
        ("grid(3,3)", rectangular_grid(3, 3)),
        ("grid(1,4)", rectangular_grid(1, 4)),
        ("cylgrid(1,5)", cylindrical_grid(1, 5)),
        ("cylgrid(2,3)", cylindrical_grid(2, 3)),
        ("cylgrid(2,4)", cylindrical_grid(2, 4)),
    ]


def _check(suite: str, name: str, fn: Callable[[], object]) -> CheckResult:
    try:
        res = fn()
    except Exception as exc:  # report any failure as a violated check
        return CheckResult(suite, name, False, f"{type(exc).__name__}: {exc}")
    if res is True or res is None:
        return CheckResult(suite, name, True)
    return CheckResult(suite, name, False, str(res))


# ----------------------------------------------------------------------
# suites


def suite_curvemap() -> Iterator[CheckResult]:
    for label, c in curve_corpus():
        def faces(c=c):
            if c.n and len(c.faces) != c.n + 2:
                return f"{len(c.faces)} faces"
            return True

        def trav(c=c):
            if c.n and len(traversal(c)) != 2 * c.n:
                return "traversal length"
            seq = gauss_code(c).sequence
            return all(seq.count(x) == 2 for x in set(seq)) or "crossing not seen twice"

        def sign_pin(c=c):
            if c.n == 0:
                return True
            c, _ = c.outer_basepoint()
            num = alexander_numbering(c)
            code = gauss_code(c)
            exits = traversal(c)
            seen = set()
            for k, e in enumerate(exits):
                v = c.alpha[e] >> 2
                if v in seen:
                    continue
                seen.add(v)
                before = edge_value(c, num, c.alpha[e])
                after = edge_value(c, num, exits[(k + 1) % len(exits)])
                if after - before != code.signs[v]:
                    return f"crossing {v}: change {after - before}, sign {code.signs[v]}"
            return True

        def alexander(c=c):
            num = alexander_numbering(c)
            if any(Fraction(v).denominator != 1 for v in num.vertex_values.values()):
                return "non-integer vertex value"
            return True

        def canon(c=c):
            if c.n == 0:
                return True
            perm = list(range(c.n))
            random.Random(c.n).shuffle(perm)
            shift = [random.Random(v).randint(0, 3) for v in range(c.n)]
            same = c.relabel(perm, shift).key() == c.key()
            refl = c.mirror().key(True) == c.key(True)
            return (same and refl) or "canonical form not invariant"

        def roundtrip(c=c):
            return load_cmap(dump_cmap(c)) == c or "CMAP round trip changed the map"

        for name, fn in [
            ("face count", faces),
            ("traversal", trav),
            ("sign pin", sign_pin),
            ("alexander", alexander),
            ("canonical", canon),
            ("cmap roundtrip", roundtrip),
        ]:
            yield _check("curvemap", f"{name} {label}", fn)


def suite_defect() -> Iterator[CheckResult]:
    for label, c in curve_corpus():
        def agree(c=c):
            p, w = defect_polyak(c), defect_winding(c)
            return (p == w and p % 2 == 0) or f"polyak {p} winding {w}"

        def invariance(c=c):
            p = defect_polyak(c)
            vals = {defect_polyak(c.reversed()), defect_polyak(c.mirror())}
            for e in traversal(c)[:6]:
                vals.add(defect_polyak(c.with_basepoint(e)))
            return vals == {p} or f"values {sorted(vals)}"

        yield _check("defect", f"formulas agree {label}", agree)
        yield _check("defect", f"invariance {label}", invariance)


def suite_lemma51() -> Iterator[CheckResult]:
    for label, c in curve_corpus():
        def residuals(c=c):
            r = defect_report(c).residuals
            bad = {x: v for x, v in r.items() if v}
            return not bad or f"nonzero residuals {bad}"

        yield _check("lemma51", f"residuals {label}", residuals)


def suite_lemma52() -> Iterator[CheckResult]:
    for label, c in curve_corpus():
        def bound(c=c):
            r = defect_report(c)
            return abs(r.polyak) <= r.lemma52_bound or f"|{r.polyak}| > {r.lemma52_bound}"

        yield _check("lemma52", f"bound {label}", bound)


def suite_moves() -> Iterator[CheckResult]:
    for label, c in curve_corpus(random_count=15, max_n=10):
        def conform(c=c):
            if c.n == 0:
                return True
            before = defect_polyak(c)
            for site in enumerate_moves(c, DECREASING_HOMOTOPY):
                after = apply_move(c, site)
                after.validate()
                if after.n and len(traversal(after)) != 2 * after.n:
                    return f"{site}: not unicursal"
                actual = defect_polyak(after) - before
                if predict_delta(c, site) != actual or actual not in (-2, 0, 2):
                    return f"{site}: predicted {predict_delta(c, site)}, actual {actual}"
            return True

        def inverse(c=c):
            rng = random.Random(c.n)
            for kind in ("0->1", "0->2"):
                sites = enumerate_moves(c, {kind})
                for site in rng.sample(sites, min(4, len(sites))):
                    grown = apply_move(c, site)
                    back = {apply_move(grown, s).key() for s in enumerate_moves(grown, {"1->0" if kind == "0->1" else "2->0"})}
                    if c.key() not in back:
                        return f"{site} has no inverse"
            return True

        yield _check("moves", f"delta conformance {label}", conform)
        yield _check("moves", f"inverse {label}", inverse)


def suite_electrical() -> Iterator[CheckResult]:
    for label, g in graph_corpus():
        def medial_dual(g=g):
            return medial(g).key() == medial(dual(g)).key() or "medial(g) != medial(dual g)"

        def double_dual(g=g):
            return dual(dual(g)).key() == g.key() or "dual(dual g) != g"

        def commute(g=g):
            m = medial(g)
            for site in enumerate_electrical(g):
                h = apply_electrical(g, site)
                mm = apply_move(m, medial_site(g, site))
                if (medial(h).key() if h.edge_count else b"") != (mm.key() if mm.n else b""):
                    return f"{site} does not commute with medial"
                if h.edge_count and apply_electrical(dual(g), dual_site(g, site)).key() != dual(h).key():
                    return f"{site} does not commute with dual"
            return True

        def roundtrip(g=g):
            return load_plane_graph(dump_plane_graph(g)) == g or "CMAP round trip changed the graph"

        yield _check("electrical", f"medial = medial of dual {label}", medial_dual)
        yield _check("electrical", f"double dual {label}", double_dual)
        yield _check("electrical", f"commutation {label}", commute)
        yield _check("electrical", f"cmap roundtrip {label}", roundtrip)


def suite_generators() -> Iterator[CheckResult]:
    for p in range(2, 6):
        for a in range(1, 3):
            q = a * p + 1
            yield _check(
                "generators",
                f"T({p},{q})",
                lambda p=p, q=q, a=a: defect_polyak(torus_knot(p, q)) == 2 * a * comb(p + 1, 3) or "defect mismatch",
            )
            yield _check(
                "generators",
                f"T({q},{p})",
                lambda p=p, q=q, a=a: defect_polyak(torus_knot(q, p)) == -2 * a * comb(p, 3) or "defect mismatch",
            )
    for p in range(2, 6):
        for q in range(2, 6):
            def shape(p=p, q=q):
                c = torus_knot(p, q)
                return (c.n == (p - 1) * q and c.is_unicursal() == (gcd(p, q) == 1)) or "shape"

            yield _check("generators", f"T({p},{q}) shape", shape)
    for k in (1, 2):
        for q in (3, 5):
            yield _check(
                "generators",
                f"medial cylgrid({k},{q})",
                lambda k=k, q=q: medial(cylindrical_grid(k, q)).key() == torus_knot(2 * k, q).key() or "not isomorphic",
            )
    a, b = torus_knot(3, 4), torus_knot(4, 3)
    yield _check("generators", "sum additivity", lambda: defect_polyak(connected_sum(a, b)) == 6 or "not additive")
    yield _check("generators", "random determinism", lambda: random_curve(9, 5) == random_curve(9, 5) or "differs")


def suite_reduction() -> Iterator[CheckResult]:
    for label, c in curve_corpus(random_count=10, max_n=9):
        def replay(c=c):
            tr = reduce_curve(c)
            return (not tr.failed and tr.check_replay()) or f"failed={tr.failed} {tr.reason}"

        yield _check("reduction", f"trace replays {label}", replay)
    for label, c in curve_corpus(random_count=6, max_n=4):
        if c.n > 4:
            continue

        def chain(c=c):
            x = min_moves_search(c, "medial").moves
            h = min_moves_search(c, "homotopy", crossing_cap=c.n + 2).moves
            lb = -(-abs(defect_polyak(c)) // 2)
            return (x >= h >= lb) or f"X={x} H={h} bound={lb}"

        yield _check("reduction", f"X >= H >= |d|/2 {label}", chain)
    for label, g in graph_corpus():
        def ereplay(g=g):
            tr = reduce_graph(g)
            return (not tr.failed and tr.check_replay() and tr.final.edge_count == 0) or tr.reason

        def lower(g=g):
            r = bounds_report(g)
            return (r.achieved_moves is not None and r.achieved_moves >= r.lower_bound) or str(r)

        yield _check("reduction", f"electrical replay {label}", ereplay)
        yield _check("reduction", f"bound {label}", lower)


def suite_casson() -> Iterator[CheckResult]:
    for label, c in curve_corpus(random_count=10, max_n=10):
        def identity(c=c):
            num, den = expected_c2_exhaustive(c)
            return num * 8 == defect_polyak(c) * den or f"{num}/{den} vs defect {defect_polyak(c)}"

        def basepoint(c=c):
            if c.n == 0:
                return True
            rng = random.Random(c.n)
            for _ in range(5):
                d = KnotDiagram(c, tuple(rng.randint(0, 1) for _ in range(c.n)))
                v = casson_c2(d)
                moved = d.with_basepoint(rng.choice(traversal(c)))
                if casson_c2(moved) != v or casson_c2(d.reversed()) != v:
                    return "c2 depends on the basepoint"
            return True

        if c.n <= 16:
            yield _check("casson", f"E[c2] = defect/8 {label}", identity)
        yield _check("casson", f"basepoint independence {label}", basepoint)


def suite_cli() -> Iterator[CheckResult]:
    from .cli import run_capture

    def roundtrip():
        for argv in (["gen", "torus", "3", "4"], ["gen", "random", "7", "--seed", "3"]):
            code, out = run_capture(argv)
            if code or load_cmap(out).key() != load_cmap(run_capture(argv)[1]).key():
                return f"{argv} not reproducible"
        for argv in (["gen", "cylgrid", "2", "5"], ["gen", "grid", "2", "3"]):
            code, out = run_capture(argv)
            if code or load_plane_graph(out) != load_plane_graph(run_capture(argv)[1]):
                return f"{argv} not reproducible"
        return True

    def determinism():
        a = run_capture(["casson", "-", "--samples", "500", "--seed", "1"], stdin=dump_cmap(torus_knot(2, 3)))
        b = run_capture(["casson", "-", "--samples", "500", "--seed", "1"], stdin=dump_cmap(torus_knot(2, 3)))
        return a == b or "casson output differs between runs"

    yield _check("cli", "generator round trip", roundtrip)
    yield _check("cli", "determinism", determinism)


SUITES: dict[str, Callable[[], Iterator[CheckResult]]] = {
    "curvemap": suite_curvemap,
    "defect": suite_defect,
    "lemma51": suite_lemma51,
    "lemma52": suite_lemma52,
    "moves": suite_moves,
    "electrical": suite_electrical,
    "generators": suite_generators,
    "reduction": suite_reduction,
    "casson": suite_casson,
    "cli": suite_cli,
}


def run_suite(name: str) -> list[CheckResult]:
    if name == "all":
        return [r for fn in SUITES.values() for r in fn()]
    if name not in SUITES:
        raise KeyError(name)
    return list(SUITES[name]())


# ----------------------------------------------------------------------
# tables


def torus_table(pmax: int = 10, amax: int = 3) -> list[dict]:
    rows = []
    for p in range(2, pmax + 1):
        for a in range(1, amax + 1):
            q = a * p + 1
            d = defect_polyak(torus_knot(p, q))
            want = 2 * a * comb(p + 1, 3)
            rows.append({"family": "T(p,ap+1)", "p": p, "q": q, "a": a, "n": (p - 1) * q, "defect": d, "expected": want, "ok": d == want})
    for q in range(2, pmax + 1):
        for a in range(1, amax + 1):
            p = a * q + 1
            d = defect_polyak(torus_knot(p, q))
            want = -2 * a * comb(q, 3)
            rows.append({"family": "T(aq+1,q)", "p": p, "q": q, "a": a, "n": (p - 1) * q, "defect": d, "expected": want, "ok": d == want})
    return rows


def grid_table(ks=(2, 3, 4)) -> list[dict]:
    rows = []
    for k in ks:
        q = 2 * k + 1
        g = cylindrical_grid(k, q)
        r = bounds_report(g)
        budget = 5 * g.edge_count**2
        rows.append(
            {
                "k": k,
                "q": q,
                "V": g.vertex_count,
                "E": g.edge_count,
                "defect": r.defect,
                "lowerBound": r.lower_bound,
                "expected": comb(q, 3),
                "achieved": r.achieved_moves,
                "budget": budget,
                "ok": r.lower_bound == comb(q, 3) and r.achieved_moves is not None and r.achieved_moves <= budget,
            }
        )
    return rows


__all__ = ["CheckResult", "SUITES", "run_suite", "torus_table", "grid_table", "curve_corpus", "graph_corpus"]
