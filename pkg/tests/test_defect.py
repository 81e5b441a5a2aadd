from math import comb

import pytest

from curvedefect import (
    CurveMap,
    defect_polyak,
    defect_report,
    defect_winding,
    dual_diameter,
    gauss_code,
    random_curve,
    torus_knot,
)
from curvedefect.defect import lemma51_residuals, maybe_defect

from conftest import TORUS_PAIRS, corpus
from oracles import formula_torus_defect, geometric_torus_defect


def brute_defect(curve):
    """Defect straight from the signed Gauss word, quadratic scan."""
    code = gauss_code(curve)
    pos = code.positions()
    xs = list(pos)
    total = 0
    for i, x in enumerate(xs):
        a, b = pos[x]
        for y in xs[i + 1 :]:
            c, d = pos[y]
            if (a < c < b) != (a < d < b):
                total += code.signs[x] * code.signs[y]
    return -2 * total


@pytest.mark.parametrize("p,q", TORUS_PAIRS)
def test_torus_matches_geometry(p, q):
    n, d = geometric_torus_defect(p, q)
    c = torus_knot(p, q)
    assert c.n == n == (p - 1) * q
    assert defect_polyak(c) == d == defect_winding(c)


def test_known_values():
    assert defect_polyak(CurveMap.circle()) == 0
    assert defect_polyak(torus_knot(2, 3)) == 2
    assert defect_polyak(torus_knot(3, 4)) == 8
    assert defect_polyak(torus_knot(4, 3)) == -2
    assert defect_polyak(torus_knot(5, 4)) == -8


def test_formula_helper_agrees():
    for p in range(2, 6):
        assert formula_torus_defect(p, p + 1) == 2 * comb(p + 1, 3)
        assert formula_torus_defect(p + 1, p) == -2 * comb(p, 3)


@pytest.mark.parametrize("seed", range(40))
def test_polyak_winding_brute_agree(seed):
    c = random_curve(1 + seed % 23, seed)
    d = brute_defect(c)
    assert defect_polyak(c) == d
    assert defect_winding(c) == d


def test_invariance(curves):
    for c in curves:
        d = defect_polyak(c)
        assert defect_polyak(c.reversed()) == d
        assert defect_polyak(c.mirror()) == d
        for e in list(c.darts())[:6]:
            if c.n:
                assert defect_polyak(c.with_basepoint(e) if c.succ(e) != e else c) == d
                assert defect_polyak(c.with_outer(e)) == d


def test_report(curves):
    for c in curves:
        r = defect_report(c)
        assert r.consistent
        assert r.polyak == r.winding
        assert all(v == 0 for v in r.residuals.values())
        assert abs(r.polyak) <= r.lemma52_bound
        assert r.lemma52_bound == 2 * c.n * dual_diameter(c) + c.n
        js = r.to_json()
        assert set(js) == {"n", "polyak", "winding", "pairs", "lemma52_bound", "residuals"}


def test_residuals_direct():
    res = lemma51_residuals(torus_knot(3, 5))
    assert len(res) == 10 and set(res.values()) == {0}


def test_maybe_defect():
    from curvedefect import load_cmap

    two = load_cmap("cmap 1\nvertices 2\nv 0 1.0 1.3 1.2 1.1\nv 1 0.0 0.3 0.2 0.1\n")
    assert maybe_defect(two) is None
    assert maybe_defect(CurveMap.circle()) == 0


def test_defect_is_even():
    for c in corpus(random_count=30, seed=99):
        assert defect_polyak(c) % 2 == 0
