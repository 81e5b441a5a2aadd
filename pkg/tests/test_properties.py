"""Randomised invariants driven by hypothesis."""

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from curvedefect import (
    KnotDiagram,
    apply_move,
    casson_c2,
    defect_polyak,
    defect_winding,
    dump_cmap,
    enumerate_moves,
    load_cmap,
    predict_delta,
    random_curve,
)
from curvedefect.defect import defect_report
from curvedefect.moves import HOMOTOPY_KINDS, inverse
from curvedefect.reduction import reduce_curve

curves = st.builds(random_curve, st.integers(0, 18), st.integers(0, 10**6))
common = settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@common
@given(curves)
def test_two_formulas_agree(c):
    assert defect_polyak(c) == defect_winding(c)
    assert defect_report(c).consistent


@common
@given(curves)
def test_cmap_round_trip(c):
    assert load_cmap(dump_cmap(c)) == c


@common
@given(curves, st.data())
def test_any_basepoint_and_outer_face(c, data):
    if c.n == 0:
        return
    d = data.draw(st.integers(0, 4 * c.n - 1))
    e = data.draw(st.integers(0, 4 * c.n - 1))
    moved = c.with_basepoint(d).with_outer(e)
    assert defect_polyak(moved) == defect_polyak(c)
    assert moved.key() == c.key()


@common
@given(curves, st.data())
def test_move_deltas(c, data):
    sites = enumerate_moves(c, HOMOTOPY_KINDS)
    if not sites:
        return
    site = data.draw(st.sampled_from(sites))
    after = apply_move(c, site)
    after.validate()
    delta = defect_polyak(after) - defect_polyak(c)
    assert delta in (-2, 0, 2)
    if site.kind in ("1->0", "0->1"):
        assert delta == 0
    if site.kind in ("1->0", "2->0", "3->3"):
        assert predict_delta(c, site) == delta
    back = inverse(c, site, after)
    assert apply_move(after, back).key() == c.key()


@common
@given(curves)
def test_greedy_trace_is_sound(c):
    tr = reduce_curve(c)
    assert not tr.failed and tr.check_replay()
    assert 2 * tr.moves >= abs(defect_polyak(c))


@common
@given(st.integers(1, 10), st.integers(0, 10**6), st.data())
def test_c2_invariant_under_basepoint(n, seed, data):
    c = random_curve(n, seed)
    bits = tuple(data.draw(st.lists(st.integers(0, 1), min_size=n, max_size=n)))
    d = KnotDiagram(c, bits)
    e = data.draw(st.integers(0, 4 * n - 1))
    assert casson_c2(d.with_basepoint(e)) == casson_c2(d)
