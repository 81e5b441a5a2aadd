import json

import pytest

from curvedefect import (
    CurveMap,
    InvalidSite,
    MoveSite,
    apply_move,
    defect_polyak,
    enumerate_moves,
    gauss_code,
    interleaved,
    predict_delta,
    random_curve,
    torus_knot,
)
from curvedefect.moves import (
    HOMOTOPY_KINDS,
    INVERSE_KIND,
    KINDS,
    MoveTrace,
    connected_smoothing_choice,
    inverse,
    record,
    smooth,
    smoothing,
)


def site_vertices(curve, site):
    face = curve.faces[curve.face_of[site.face]]
    return sorted({d >> 2 for d in face})


def rule_delta(curve, site):
    """Delta from the interleaving rules, computed without predict_delta."""
    if site.kind == "1->0":
        return 0
    code = gauss_code(curve)
    vs = site_vertices(curve, site)
    if site.kind == "2->0":
        return -2 if interleaved(code, *vs) else 0
    pairs = sum(interleaved(code, vs[i], vs[j]) for i in range(3) for j in range(i + 1, 3))
    return 2 if pairs % 2 == 0 else -2


@pytest.mark.parametrize("seed", range(30))
def test_delta_rules(seed):
    c = random_curve(3 + seed % 15, seed)
    d0 = defect_polyak(c)
    for site in enumerate_moves(c):
        after = apply_move(c, site)
        after.validate()
        assert after.is_unicursal()
        actual = defect_polyak(after) - d0
        assert predict_delta(c, site) == actual == rule_delta(c, site)


def test_crossing_counts():
    c = random_curve(9, 4)
    delta_n = {"1->0": -1, "0->1": 1, "2->0": -2, "0->2": 2, "3->3": 0, "2->1": -1, "1->2": 1}
    for site in enumerate_moves(c, KINDS):
        assert apply_move(c, site).n == c.n + delta_n[site.kind]


def test_circle_sites():
    sites = enumerate_moves(CurveMap.circle(), KINDS)
    assert [s.kind for s in sites] == ["0->1", "0->1", "0->2"]
    for s in sites:
        out = apply_move(CurveMap.circle(), s)
        assert out.is_unicursal() and out.n == (1 if s.kind == "0->1" else 2)
    folded = apply_move(CurveMap.circle(), sites[2])
    assert gauss_code(folded).to_text() == "a+ b- b- a+"


def test_self_push_is_inverse_of_nested_bigon():
    nested = apply_move(CurveMap.circle(), MoveSite("0->2"))
    bigons = enumerate_moves(nested, {"2->0"})
    assert bigons and all(apply_move(nested, s).n == 0 for s in bigons)
    c = torus_knot(2, 3)
    for d in c.darts():
        out = apply_move(c, MoveSite("0->2", (d, d)))
        assert out.n == 5 and out.is_unicursal()
        assert defect_polyak(out) == defect_polyak(c)


def test_trefoil_sites(trefoil):
    kinds = sorted(s.kind for s in enumerate_moves(trefoil))
    # on the sphere the outer face is a triangle too
    assert kinds == ["2->0", "2->0", "2->0", "3->3", "3->3"]


def test_flip_twice_is_identity():
    for seed in range(15):
        c = random_curve(8, seed)
        for site in enumerate_moves(c, {"3->3"}):
            after = apply_move(c, site)
            back = [apply_move(after, s).key() for s in enumerate_moves(after, {"3->3"})]
            assert c.key() in back


@pytest.mark.parametrize("seed", range(10))
def test_inverses(seed):
    c = random_curve(6, seed)
    for site in enumerate_moves(c, KINDS):
        after = apply_move(c, site)
        inv = inverse(c, site, after)
        assert inv.kind == INVERSE_KIND[site.kind]
        assert apply_move(after, inv).key() == c.key()


def test_invalid_site(trefoil):
    with pytest.raises(InvalidSite):
        apply_move(trefoil, MoveSite("1->0", (0,)))
    with pytest.raises(ValueError):
        MoveSite("4->4")


def test_site_json_round_trip():
    c = random_curve(7, 2)
    for site in enumerate_moves(c, KINDS):
        obj = json.loads(json.dumps(site.to_json()))
        assert MoveSite.from_json(obj) == site


def test_smoothing():
    c = torus_knot(2, 3)
    for x in range(3):
        choice = connected_smoothing_choice(c, x)
        out, comps = smooth(c, x, choice)
        assert comps == 1 and out.n == 2
        other, k = smooth(c, x, 1 - choice)
        assert k == 2
    both = smoothing(c, {0: 0, 2: 1})
    assert both.n == 1


def test_trace_replay():
    c = torus_knot(3, 4)
    trace = MoveTrace(initial=c)
    cur = c
    for _ in range(3):
        site = enumerate_moves(cur)[0]
        nxt = apply_move(cur, site)
        record(trace, cur, site, nxt)
        cur = nxt
    trace.final = cur
    assert trace.moves == 3
    assert trace.check_replay()
    assert all(s.delta in (-2, 0, 2) for s in trace.steps)
    js = trace.to_json()
    assert len(js) == 3 and {"kind", "delta", "n_after"} <= set(js[0])


def test_homotopy_moves_preserve_unicursality():
    c = random_curve(10, 11)
    for site in enumerate_moves(c, HOMOTOPY_KINDS):
        assert apply_move(c, site).is_unicursal()
